//! Royster–Ziegler functional and probing of the direction-convexity
//! preserving (DCP) property of an analytic kernel.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radii::circle_min;
use crate::series::{Complex, PowerSeries, ONE};

use super::{unit, CriterionReport, SamplingConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcpProbe {
    pub t: f64,
    pub mu: f64,
    pub nu: f64,
}

impl DcpProbe {
    /// Requires `0 <= mu < 2π` and `0 <= nu <= π`.
    pub fn new(t: f64, mu: f64, nu: f64) -> Result<Self> {
        if !t.is_finite() || !(0.0..TAU).contains(&mu) || !(0.0..=PI).contains(&nu) {
            return Err(Error::InvalidConfig(format!(
                "bad probe t={t}, mu={mu}, nu={nu}"
            )));
        }
        Ok(Self { t, mu, nu })
    }

    pub fn factor(&self, z: Complex) -> Complex {
        royster_ziegler_factor(self.mu, self.nu, z)
    }
}

/// `F_{μ,ν}(z) = -i e^{iμ} (1 - 2z e^{-iμ} cos ν + z² e^{-2iμ})`.
pub fn royster_ziegler_factor(mu: f64, nu: f64, z: Complex) -> Complex {
    let rot = unit(-mu);
    let inner = ONE - z * rot * (2.0 * nu.cos()) + z * z * rot * rot;
    Complex::new(0.0, -1.0) * unit(mu) * inner
}

/// Sampled minimum of `Re{F_{μ,ν}(z) φ'(z)}` on `|z| = r`; the report passes
/// when the minimum is non-negative. `probe.t` is ignored.
pub fn royster_ziegler_min(
    phi: &PowerSeries,
    probe: &DcpProbe,
    r: f64,
    cfg: &SamplingConfig,
) -> CriterionReport {
    let dphi = phi.derivative();
    let mut report = circle_min(
        "royster_ziegler",
        |z| Ok((probe.factor(z) * dphi.eval(z)).re),
        r,
        cfg,
    );
    report.pass = report.singular_count == 0 && report.min_value >= 0.0;
    report
}

/// `g + i t z g'`: coefficient `n` becomes `g_n (1 + i t n)`.
pub fn dcp_phi(gser: &PowerSeries, t: f64) -> PowerSeries {
    let coeffs = gser
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex::new(1.0, t * n as f64))
        .collect();
    PowerSeries::new(coeffs).expect("scaling keeps coefficients finite")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DcpWitness {
    pub mu: f64,
    pub nu: f64,
    /// Sampled minimum of the functional for this `(μ, ν)`.
    pub min: f64,
}

/// The three classical choices `(0,0)`, `(π,π)`, `(π/2,π/2)`, followed by a
/// uniform 32×17 grid in `μ ∈ [0, 2π)`, `ν ∈ [0, π]`.
pub fn default_candidates() -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0), (PI, PI), (PI / 2.0, PI / 2.0)];
    for i in 0..32 {
        for j in 0..=16 {
            out.push((TAU * i as f64 / 32.0, PI * j as f64 / 16.0));
        }
    }
    out
}

/// Looks for `(μ, ν)` among `candidates` with `Re{F_{μ,ν} φ'} >= 0` on the
/// sampled circle `|z| = r`, where `φ = dcp_phi(gser, t)`. Returns the first
/// witness in candidate order.
pub fn dcp_probe_pass(
    gser: &PowerSeries,
    t: f64,
    r: f64,
    cfg: &SamplingConfig,
    candidates: &[(f64, f64)],
) -> Option<DcpWitness> {
    let dphi = dcp_phi(gser, t).derivative();
    let samples: Vec<(Complex, Complex)> = (0..cfg.n_theta)
        .map(|k| {
            let z = cfg.point(r, k);
            (z, dphi.eval(z))
        })
        .collect();
    if samples
        .iter()
        .any(|(_, d)| !d.re.is_finite() || !d.im.is_finite())
    {
        return None;
    }
    candidates.iter().find_map(|&(mu, nu)| {
        let mut min = f64::INFINITY;
        for &(z, d) in &samples {
            let v = (royster_ziegler_factor(mu, nu, z) * d).re;
            if v < 0.0 {
                return None;
            }
            min = min.min(v);
        }
        Some(DcpWitness { mu, nu, min })
    })
}

/// Lower bound for the `(0,0)` case on `|z| = 1/4`:
/// `t/3 - (5tn² + (8t+5)n + 4t/3 + 4) / 4^{n+1}`.
pub fn dcp_bound_a(n: usize, t: f64) -> f64 {
    let n = n as f64;
    t / 3.0 - (5.0 * t * n * n + (8.0 * t + 5.0) * n + 4.0 * t / 3.0 + 4.0) / 4f64.powf(n + 1.0)
}

/// Lower bound for the `(π/2,π/2)` case on `|z| = 1/4`:
/// `3/5 - 2|t| - (5/3)(5|t|n² + (8|t|+5)n + 4 + 4|t|/3) / 4^{n+1}`.
pub fn dcp_bound_b(n: usize, t: f64) -> f64 {
    let n = n as f64;
    let a = t.abs();
    0.6 - 2.0 * a
        - (5.0 / 3.0) * (5.0 * a * n * n + (8.0 * a + 5.0) * n + 4.0 + 4.0 * a / 3.0)
            / 4f64.powf(n + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn s(n: usize) -> PowerSeries {
        let mut c = vec![1.0; n + 1];
        c[0] = 0.0;
        PowerSeries::from_real(&c).unwrap()
    }

    fn cfg() -> SamplingConfig {
        SamplingConfig::default()
    }

    #[test]
    fn probe_ranges() {
        assert!(DcpProbe::new(0.0, 0.0, PI).is_ok());
        assert!(DcpProbe::new(0.0, TAU, 0.0).is_err());
        assert!(DcpProbe::new(0.0, 0.0, 3.2).is_err());
    }

    #[test]
    fn factor_special_cases() {
        let z = Complex::new(0.13, -0.07);
        let one_minus = ONE - z;
        let i = Complex::new(0.0, 1.0);
        let eps = 1e-15;
        assert!((royster_ziegler_factor(0.0, 0.0, z) + i * one_minus * one_minus).norm() < eps);
        assert!((royster_ziegler_factor(PI, PI, z) - i * one_minus * one_minus).norm() < eps);
        let half = royster_ziegler_factor(PI / 2.0, PI / 2.0, z);
        assert!((half - (ONE - z * z)).norm() < eps);
    }

    #[test]
    fn identity_minimum() {
        let probe = DcpProbe::new(0.0, PI / 2.0, PI / 2.0).unwrap();
        let rep = royster_ziegler_min(&PowerSeries::identity(3), &probe, 0.5, &cfg());
        assert_abs_diff_eq!(rep.min_value, 0.75, epsilon = 1e-12);
        assert!(rep.pass);
        assert_eq!(rep.argmin, Complex::new(0.5, 0.0));
    }

    #[test]
    fn phi_coefficients() {
        assert_eq!(dcp_phi(&s(2), 0.0), s(2));
        let p = dcp_phi(&s(2), 1.0);
        assert_eq!(
            p.coeffs(),
            &[
                Complex::new(0.0, 0.0),
                Complex::new(1.0, 1.0),
                Complex::new(1.0, 2.0)
            ]
        );
    }

    #[test]
    fn phi_derivative_matches_rational_form() {
        let t = 2.0 / 19.0;
        let z = Complex::new(0.1, 0.0);
        let dphi = dcp_phi(&s(3), t).derivative().eval(z);
        let den = (ONE - z) * (ONE - z);
        let (z3, z4) = (z * z * z, z * z * z * z);
        let re = (ONE - z3 * 4.0 + z4 * 3.0) / den;
        let im = (ONE - z3 * 16.0 + z4 * 9.0 + (z + z * z + z3) * 2.0) / den;
        let oracle = re + Complex::new(0.0, t) * im;
        assert!((dphi - oracle).norm() < 1e-12);
    }

    #[test]
    fn bound_values() {
        let t = 2.0 / 19.0;
        assert_abs_diff_eq!(dcp_bound_a(4, t), 0.0, epsilon = 1e-15);
        for t in [-0.3, 0.0, 0.2, 1.0] {
            assert_abs_diff_eq!(dcp_bound_a(4, t), (57.0 * t - 6.0) / 256.0, epsilon = 1e-15);
            let b = (35.9 - 5033.0 * f64::abs(t) / 36.0) / 64.0;
            assert_abs_diff_eq!(dcp_bound_b(4, t), b, epsilon = 1e-12);
        }
        assert!(dcp_bound_b(4, t) > 0.0);
        assert!(dcp_bound_a(5, 0.2) >= dcp_bound_a(4, 0.2));
    }

    #[test]
    fn case_minima_respect_bounds() {
        let t = 2.0 / 19.0;
        let p = DcpProbe::new(t, 0.0, 0.0).unwrap();
        let rep = royster_ziegler_min(&dcp_phi(&s(4), t), &p, 0.25, &cfg());
        assert!(rep.min_value >= dcp_bound_a(4, t) - 1e-9);

        let p = DcpProbe::new(0.0, PI / 2.0, PI / 2.0).unwrap();
        for t in [0.0, 0.105712, -0.105712] {
            let rep = royster_ziegler_min(&dcp_phi(&s(3), t), &p, 0.201254, &cfg());
            assert!(rep.min_value >= 0.608489 - 1.60093 * f64::abs(t) - 1e-6);
        }
        let rep = royster_ziegler_min(&s(3), &p, 0.201254, &cfg());
        assert!(rep.min_value >= 0.608489);
    }

    #[test]
    fn probe_finds_classical_witnesses() {
        let cands = default_candidates();
        assert_eq!(cands.len(), 3 + 32 * 17);
        let w = dcp_probe_pass(&s(5), 0.5, 0.25, &cfg(), &cands).unwrap();
        assert_eq!((w.mu, w.nu), (0.0, 0.0));
        for t in [-1.0, -2.0 / 19.0, 0.0, 2.0 / 19.0, 1.0] {
            assert!(
                dcp_probe_pass(&s(2), t, 0.24, &cfg(), &cands).is_some(),
                "t={t}"
            );
        }
    }

    fn missing_witnesses(n: usize, r: f64) -> usize {
        let cands = default_candidates();
        (-40..=40)
            .map(|k| k as f64 * 0.025)
            .filter(|&t| dcp_probe_pass(&s(n), t, r, &cfg(), &cands).is_none())
            .count()
    }

    #[test]
    fn s3_witnesses_at_024_but_not_at_037() {
        // with F and φ' evaluated at the same point the s3 threshold is near 0.3604
        assert_eq!(missing_witnesses(3, 0.24), 0);
        assert!(missing_witnesses(3, 0.37) > 0);
    }
}
