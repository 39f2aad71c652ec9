//! Circle scans and radius bisection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::criteria::{
    convexity_point, dcp_probe_pass, default_candidates, CriterionReport, DiskGrid, SamplingConfig,
};
use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::series::{Complex, PowerSeries};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    pub criterion: String,
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    #[serde(rename = "evals")]
    pub evaluations: usize,
    /// The criterion still held at the search ceiling; `lo` is a lower
    /// bound and `hi` is 1.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub saturated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusSearch {
    pub lo0: f64,
    pub hi0: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RadiusSearch {
    fn default() -> Self {
        Self {
            lo0: 1e-3,
            hi0: 0.999,
            tol: 1e-4,
            max_iter: 60,
        }
    }
}

impl RadiusSearch {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

#[derive(Clone, Copy)]
struct Sample {
    value: f64,
    index: usize,
    singular: usize,
}

fn better(a: Sample, b: Sample) -> Sample {
    let singular = a.singular + b.singular;
    let pick_a = match (a.value.is_nan(), b.value.is_nan()) {
        (true, _) => false,
        (false, true) => true,
        _ => a.value < b.value || (a.value == b.value && a.index <= b.index),
    };
    let best = if pick_a { a } else { b };
    Sample { singular, ..best }
}

fn reduce_min<F>(id: &str, criterion: F, points: &[Complex], r: f64) -> CriterionReport
where
    F: Fn(Complex) -> Result<f64> + Sync,
{
    let empty = Sample {
        value: f64::NAN,
        index: usize::MAX,
        singular: 0,
    };
    let best = points
        .par_iter()
        .enumerate()
        .map(|(index, &z)| match criterion(z) {
            Ok(v) if v.is_finite() => Sample {
                value: v,
                index,
                singular: 0,
            },
            _ => Sample {
                singular: 1,
                index,
                ..empty
            },
        })
        .reduce(|| empty, better);
    let argmin = points
        .get(best.index)
        .copied()
        .unwrap_or(Complex::new(f64::NAN, f64::NAN));
    CriterionReport {
        criterion: id.to_string(),
        r,
        min_value: best.value,
        argmin,
        pass: best.singular == 0 && best.value > 0.0,
        singular_count: best.singular,
    }
}

/// Minimum of `criterion` over the `cfg.n_theta` equispaced points of
/// `|z| = r`. Errors and non-finite values are counted as singular and make
/// the report fail; ties go to the smallest angle index.
pub fn circle_min<F>(id: &str, criterion: F, r: f64, cfg: &SamplingConfig) -> CriterionReport
where
    F: Fn(Complex) -> Result<f64> + Sync,
{
    let points: Vec<Complex> = (0..cfg.n_theta).map(|k| cfg.point(r, k)).collect();
    reduce_min(id, criterion, &points, r)
}

/// Like [`circle_min`] over the origin and `n_r` circles `r_max·i/n_r`.
pub fn disk_min<F>(id: &str, criterion: F, grid: &DiskGrid) -> CriterionReport
where
    F: Fn(Complex) -> Result<f64> + Sync,
{
    let mut points = vec![Complex::new(0.0, 0.0)];
    for i in 1..=grid.n_r {
        let r = grid.r_max * i as f64 / grid.n_r as f64;
        points.extend((0..grid.n_theta).map(|k| {
            Complex::from_polar(r, std::f64::consts::TAU * k as f64 / grid.n_theta as f64)
        }));
    }
    reduce_min(id, criterion, &points, grid.r_max)
}

/// Bisection on a predicate that holds at `lo0` and fails at `hi0`. The
/// returned bracket is re-checked before returning.
pub fn radius_bisect<P>(
    id: &str,
    mut pass_at: P,
    lo0: f64,
    hi0: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RadiusEstimate>
where
    P: FnMut(f64) -> bool,
{
    if !(tol > 0.0 && lo0 < hi0) {
        return Err(Error::InvalidConfig(format!(
            "need tol > 0 and lo0 < hi0, got tol={tol}, [{lo0}, {hi0}]"
        )));
    }
    let pass_lo = pass_at(lo0);
    let pass_hi = pass_at(hi0);
    if !pass_lo || pass_hi {
        return Err(Error::BadBracket {
            lo: lo0,
            hi: hi0,
            pass_lo,
            pass_hi,
        });
    }
    let (mut lo, mut hi) = (lo0, hi0);
    let mut evaluations = 2;
    for _ in 0..max_iter {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        evaluations += 1;
        if pass_at(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    evaluations += 2;
    if !pass_at(lo) || pass_at(hi) {
        return Err(Error::InconsistentBracket { lo, hi });
    }
    Ok(RadiusEstimate {
        criterion: id.to_string(),
        lo,
        hi,
        tol,
        evaluations,
        saturated: false,
    })
}

/// [`radius_bisect`] that reports a saturated estimate `[hi0, 1]` instead of
/// an error when the predicate still holds at `hi0`.
pub fn radius_search<P>(id: &str, mut pass_at: P, search: &RadiusSearch) -> Result<RadiusEstimate>
where
    P: FnMut(f64) -> bool,
{
    if pass_at(search.lo0) && pass_at(search.hi0) {
        return Ok(RadiusEstimate {
            criterion: id.to_string(),
            lo: search.hi0,
            hi: 1.0,
            tol: search.tol,
            evaluations: 2,
            saturated: true,
        });
    }
    radius_bisect(
        id,
        pass_at,
        search.lo0,
        search.hi0,
        search.tol,
        search.max_iter,
    )
}

/// Number of concentric circles checked per disk predicate call.
pub const DISK_SUBGRID: usize = 16;

fn on_subgrid(r: f64, mut pass: impl FnMut(f64) -> bool) -> bool {
    (1..=DISK_SUBGRID)
        .rev()
        .all(|k| pass(r * k as f64 / DISK_SUBGRID as f64))
}

/// Largest `r` with `|ω| < 1` on the circles `r·k/16`, `k = 1..=16`;
/// critical points fail. The subgrid catches poles of `ω` inside the disk
/// that the outer circle alone would miss.
pub fn local_univalence_radius(
    f: &HarmonicMap,
    cfg: &SamplingConfig,
    search: &RadiusSearch,
) -> Result<RadiusEstimate> {
    radius_search(
        "localuniv",
        |r| on_subgrid(r, |rho| local_univalence_report(f, rho, cfg).pass),
        search,
    )
}

/// `1 - |ω|` on the circle `|z| = r`.
pub fn local_univalence_report(f: &HarmonicMap, r: f64, cfg: &SamplingConfig) -> CriterionReport {
    circle_min("localuniv", |z| Ok(1.0 - f.dilatation(z)?.norm()), r, cfg)
}

/// Whether the sense-preserving convexity functional is positive on every
/// circle `r·k/16`, `k = 1..=16`. Scans from the outside in.
pub fn convex_on_disk(f: &HarmonicMap, r: f64, cfg: &SamplingConfig) -> bool {
    on_subgrid(r, |rho| {
        circle_min("convex", |z| convexity_point(f, z), rho, cfg).pass
    })
}

/// Largest `r` such that `f` is fully convex on `|z| < r` on the sampled
/// grid, counting non-sense-preserving points as failures.
pub fn convexity_radius(
    f: &HarmonicMap,
    cfg: &SamplingConfig,
    search: &RadiusSearch,
) -> Result<RadiusEstimate> {
    radius_search("convex", |r| convex_on_disk(f, r, cfg), search)
}

/// `t` values probed by [`dcp_radius`] for a kernel of degree `n`.
pub fn default_t_grid(n: usize) -> Vec<f64> {
    let mut t = vec![
        -1.0,
        -0.5,
        -2.0 / 19.0,
        -0.05,
        0.0,
        0.05,
        2.0 / 19.0,
        0.5,
        1.0,
    ];
    if n == 3 {
        t.extend([-0.105712, 0.105712]);
    }
    t.sort_by(f64::total_cmp);
    t
}

fn check_t_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(Error::InvalidConfig("t grid is empty".into()));
    }
    let symmetric = t_grid
        .iter()
        .all(|t| t_grid.iter().any(|s| (s + t).abs() <= 1e-12));
    if !symmetric {
        return Err(Error::InvalidConfig(
            "t grid must be symmetric about 0".into(),
        ));
    }
    Ok(())
}

/// Whether every `t` in the grid has a Royster–Ziegler witness on `|z| = r`.
pub fn dcp_on_circle(gser: &PowerSeries, t_grid: &[f64], r: f64, cfg: &SamplingConfig) -> bool {
    let candidates = default_candidates();
    t_grid
        .iter()
        .all(|&t| dcp_probe_pass(gser, t, r, cfg, &candidates).is_some())
}

/// Largest `r` for which [`dcp_on_circle`] holds.
pub fn dcp_radius(
    gser: &PowerSeries,
    t_grid: &[f64],
    cfg: &SamplingConfig,
    search: &RadiusSearch,
) -> Result<RadiusEstimate> {
    check_t_grid(t_grid)?;
    radius_search("dcp", |r| dcp_on_circle(gser, t_grid, r, cfg), search)
}
