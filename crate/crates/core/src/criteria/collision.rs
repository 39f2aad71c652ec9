//! Numerical search for injectivity failures `f(z1) = f(z2)`, `z1 != z2`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::harmonic::HarmonicMap;
use crate::series::Complex;

/// Tuning knobs for [`collision_search`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollisionSearch {
    /// Spacing of the Cartesian domain grid.
    pub step: f64,
    /// Side of the image-space buckets.
    pub cell: f64,
    /// Candidate pairs closer than `min_separation_steps * step` in the
    /// domain are ignored.
    pub min_separation_steps: f64,
    pub max_candidates: usize,
    pub max_iter: usize,
    pub residual_tol: f64,
    pub separation_tol: f64,
}

impl Default for CollisionSearch {
    fn default() -> Self {
        Self {
            step: 0.004,
            cell: 1e-3,
            min_separation_steps: 8.0,
            max_candidates: 64,
            max_iter: 50,
            residual_tol: 1e-10,
            separation_tol: 1e-6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Collision {
    pub z1: Complex,
    pub z2: Complex,
    pub residual: f64,
}

/// `|f(z1) - f(z2)|`.
pub fn collision_residual(f: &HarmonicMap, z1: Complex, z2: Complex) -> f64 {
    (f.eval(z1) - f.eval(z2)).norm()
}

/// Buckets the images of a grid on `|z| <= r_max`, collects far-apart
/// domain points with nearby images and refines the closest pairs with a
/// minimum-norm Gauss–Newton iteration on `f(z1) - f(z2) = 0`.
///
/// A returned pair satisfies `|zi| <= r_max`, `|z1 - z2| >= separation_tol`
/// and a residual below `residual_tol`. `None` is grid-relative evidence of
/// injectivity only.
pub fn collision_search(f: &HarmonicMap, r_max: f64, opts: &CollisionSearch) -> Option<Collision> {
    let n = (r_max / opts.step).floor() as i64;
    let mut points = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let z = Complex::new(i as f64 * opts.step, j as f64 * opts.step);
            if z.norm() <= r_max {
                points.push((z, f.eval(z)));
            }
        }
    }
    let key = |w: Complex| {
        (
            (w.re / opts.cell).floor() as i64,
            (w.im / opts.cell).floor() as i64,
        )
    };
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (idx, &(_, w)) in points.iter().enumerate() {
        if w.re.is_finite() && w.im.is_finite() {
            buckets.entry(key(w)).or_default().push(idx);
        }
    }

    let min_sep = opts.min_separation_steps * opts.step;
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (a, &(za, wa)) in points.iter().enumerate() {
        if !(wa.re.is_finite() && wa.im.is_finite()) {
            continue;
        }
        let (kx, ky) = key(wa);
        for dx in -1..=1 {
            for dy in -1..=1 {
                let Some(bucket) = buckets.get(&(kx + dx, ky + dy)) else {
                    continue;
                };
                for &b in bucket {
                    if b <= a {
                        continue;
                    }
                    let (zb, wb) = points[b];
                    if (za - zb).norm() >= min_sep {
                        candidates.push(((wa - wb).norm(), a, b));
                    }
                }
            }
        }
    }
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    candidates
        .iter()
        .take(opts.max_candidates)
        .find_map(|&(_, a, b)| {
            let (z1, z2) = refine(f, points[a].0, points[b].0, opts)?;
            let residual = collision_residual(f, z1, z2);
            let ok = residual <= opts.residual_tol
                && (z1 - z2).norm() >= opts.separation_tol
                && z1.norm() <= r_max
                && z2.norm() <= r_max;
            ok.then_some(Collision { z1, z2, residual })
        })
}

// Real 2x2 Jacobian columns of f at z: d/dx = f_z + f_zbar, d/dy = i(f_z - f_zbar),
// with f_z = h' and f_zbar = conj(g').
fn real_jacobian(f: &HarmonicMap, z: Complex) -> (Complex, Complex) {
    let (dh, dg) = f.derivatives(z);
    let fzb = dg.conj();
    (dh + fzb, Complex::new(0.0, 1.0) * (dh - fzb))
}

fn refine(
    f: &HarmonicMap,
    mut z1: Complex,
    mut z2: Complex,
    opts: &CollisionSearch,
) -> Option<(Complex, Complex)> {
    for _ in 0..opts.max_iter {
        let r = f.eval(z1) - f.eval(z2);
        if r.norm() <= opts.residual_tol * 0.01 {
            break;
        }
        let (a1, b1) = real_jacobian(f, z1);
        let (a2, b2) = real_jacobian(f, z2);
        // J = [a1 b1 -a2 -b2] as a 2x4 real matrix (columns are complex numbers).
        let cols = [a1, b1, -a2, -b2];
        let (mut m11, mut m12, mut m22) = (0.0, 0.0, 0.0);
        for c in &cols {
            m11 += c.re * c.re;
            m12 += c.re * c.im;
            m22 += c.im * c.im;
        }
        let det = m11 * m22 - m12 * m12;
        if det.is_nan() || det.abs() <= 1e-300 {
            return None;
        }
        // y = (J J^T)^{-1} r, step = -J^T y
        let y = Complex::new(
            (m22 * r.re - m12 * r.im) / det,
            (m11 * r.im - m12 * r.re) / det,
        );
        let step: Vec<f64> = cols.iter().map(|c| -(c.re * y.re + c.im * y.im)).collect();
        z1 += Complex::new(step[0], step[1]);
        z2 += Complex::new(step[2], step[3]);
        if !(z1.norm().is_finite() && z2.norm().is_finite()) {
            return None;
        }
    }
    Some((z1, z2))
}
