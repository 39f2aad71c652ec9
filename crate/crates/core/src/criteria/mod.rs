//! Pointwise and on-circle evaluators for the inequalities used to test
//! class membership, full convexity and direction convexity.
//!
//! Everything here is grid evidence: a positive sampled minimum is not a
//! proof that an open condition holds on the whole disk.

mod collision;
mod dcp;

pub use collision::{collision_residual, collision_search, Collision, CollisionSearch};
pub use dcp::{
    dcp_bound_a, dcp_bound_b, dcp_phi, dcp_probe_pass, default_candidates, royster_ziegler_factor,
    royster_ziegler_min, DcpProbe, DcpWitness,
};

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::HarmonicMap;
use crate::radii::disk_min;
use crate::series::{Complex, PowerSeries};

/// `|Df|` below this makes the convexity functional undefined.
pub const DEGENERATE_DENOMINATOR_TOL: f64 = 1e-13;

/// Environment variable overriding [`SamplingConfig::n_theta`].
pub const NTHETA_ENV: &str = "HARMAP_NTHETA";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Equispaced angles per circle.
    pub n_theta: usize,
    pub radii: Vec<f64>,
    /// Number of unimodular parameters in λ / ε sweeps.
    pub lambda_sweep: usize,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            n_theta: 4096,
            radii: Vec::new(),
            lambda_sweep: 64,
            seed: 0,
        }
    }
}

impl SamplingConfig {
    pub fn with_n_theta(mut self, n_theta: usize) -> Self {
        self.n_theta = n_theta;
        self
    }

    /// Applies the `HARMAP_NTHETA` override, if set.
    pub fn with_env_overrides(mut self) -> Result<Self> {
        if let Ok(raw) = std::env::var(NTHETA_ENV) {
            self.n_theta = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("{NTHETA_ENV}={raw} is not a count")))?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 8 {
            return Err(Error::InvalidConfig("n_theta must be at least 8".into()));
        }
        if self.lambda_sweep < 1 {
            return Err(Error::InvalidConfig(
                "lambda_sweep must be at least 1".into(),
            ));
        }
        if let Some(r) = self.radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
            return Err(Error::InvalidConfig(format!(
                "radius {r} is outside (0, 1)"
            )));
        }
        Ok(())
    }

    /// The `k`-th sample on the circle of radius `r`.
    pub fn point(&self, r: f64, k: usize) -> Complex {
        Complex::from_polar(r, TAU * k as f64 / self.n_theta as f64)
    }

    /// The unimodular sweep `e^{2πik/m}`, `k = 0..m`.
    pub fn unimodular_sweep(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.lambda_sweep)
            .map(move |k| Complex::from_polar(1.0, TAU * k as f64 / self.lambda_sweep as f64))
    }
}

/// Outcome of one criterion scan on one circle (or disk grid).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub r: f64,
    #[serde(rename = "min")]
    pub min_value: f64,
    pub argmin: Complex,
    pub pass: bool,
    /// Samples where the criterion was undefined.
    #[serde(rename = "singular")]
    pub singular_count: usize,
}

/// `Re h'(z) - α - |g'(z)|`; positive on the disk for members of `P_H^0(α)`.
pub fn ph0_margin(f: &HarmonicMap, alpha: f64, z: Complex) -> f64 {
    let (dh, dg) = f.derivatives(z);
    dh.re - alpha - dg.norm()
}

/// `Re(h(z)/z) - β - |g(z)/z|`, with the removable value `1 - β` at 0.
pub fn gh0_margin(f: &HarmonicMap, beta: f64, z: Complex) -> f64 {
    if z.norm() == 0.0 {
        return 1.0 - beta;
    }
    (f.h().eval(z) / z).re - beta - (f.g().eval(z) / z).norm()
}

/// The full-convexity functional `Re(D²f / Df)` with `Df = z f_z - conj(z) f_zbar`:
///
/// `Re[(z(h' + z h'') + conj(z(g' + z g''))) / (z h' - conj(z g'))]`.
pub fn convex_criterion(f: &HarmonicMap, z: Complex) -> Result<f64> {
    let (_, dh, ddh) = f.h().eval_with_derivatives(z);
    let (_, dg, ddg) = f.g().eval_with_derivatives(z);
    let num = z * (dh + z * ddh) + (z * (dg + z * ddg)).conj();
    let den = z * dh - (z * dg).conj();
    if den.norm() < DEGENERATE_DENOMINATOR_TOL {
        return Err(Error::DegenerateDenominator(z));
    }
    Ok((num / den).re)
}

/// [`convex_criterion`] restricted to sense-preserving points: a
/// non-positive Jacobian is reported as [`Error::NotSensePreserving`].
pub fn convexity_point(f: &HarmonicMap, z: Complex) -> Result<f64> {
    if f.jacobian(z) <= 0.0 {
        return Err(Error::NotSensePreserving(z));
    }
    convex_criterion(f, z)
}

/// `-4r²[1 + 16r² + 4r cosθ (3 - cos²θ)]`.
pub fn g_closed_form(r: f64, theta: f64) -> f64 {
    let c = theta.cos();
    -4.0 * r * r * (1.0 + 16.0 * r * r + 4.0 * r * c * (3.0 - c * c))
}

/// `|3z² - 3 conj(z)²|² - |2z + 9z² - conj(z)²|²`, the unsimplified form
/// of [`g_closed_form`].
pub fn g_direct(z: Complex) -> f64 {
    let z2 = z * z;
    let zb2 = z2.conj();
    (z2 * 3.0 - zb2 * 3.0).norm_sqr() - (z * 2.0 + z2 * 9.0 - zb2).norm_sqr()
}

/// `γ = 1 - 2(1-α)(1-β)`.
pub fn theorem1_gamma(alpha: f64, beta: f64) -> f64 {
    1.0 - 2.0 * (1.0 - alpha) * (1.0 - beta)
}

/// Derivatives of the convolved parts `(h1*h2)'` and `(g1*g2)'`, cached so
/// that sweeps over `ε` and `z` reuse them.
#[derive(Clone, Debug)]
pub struct ConvolutionKernel {
    dh: PowerSeries,
    dg: PowerSeries,
}

impl ConvolutionKernel {
    pub fn new(f1: &HarmonicMap, f2: &HarmonicMap) -> Self {
        let conv = f1.convolve(f2);
        Self {
            dh: conv.h().derivative(),
            dg: conv.g().derivative(),
        }
    }

    /// `Re H_ε'(z) - γ` where `H_ε = h1*h2 + ε g1*g2`; `|ε| = 1` expected.
    pub fn margin(&self, eps: Complex, z: Complex, gamma: f64) -> f64 {
        (self.dh.eval(z) + eps * self.dg.eval(z)).re - gamma
    }
}

pub fn theorem1_margin(
    f1: &HarmonicMap,
    f2: &HarmonicMap,
    eps: Complex,
    z: Complex,
    gamma: f64,
) -> f64 {
    ConvolutionKernel::new(f1, f2).margin(eps, z, gamma)
}

/// Polar sampling of the closed disk `|z| <= r_max`: `n_r` circles at
/// `r_max·i/n_r` with `n_theta` angles each.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

/// Sampled minimum of the convolution margin over `cfg.lambda_sweep` values
/// of `ε` and the disk grid. Returns the worst report and its `ε`.
pub fn theorem1_sweep(
    f1: &HarmonicMap,
    f2: &HarmonicMap,
    gamma: f64,
    cfg: &SamplingConfig,
    grid: &DiskGrid,
) -> (CriterionReport, Complex) {
    let kernel = ConvolutionKernel::new(f1, f2);
    let mut worst: Option<(CriterionReport, Complex)> = None;
    for eps in cfg.unimodular_sweep() {
        let report = disk_min("theorem1", |z| Ok(kernel.margin(eps, z, 0.0) - gamma), grid);
        if worst
            .as_ref()
            .is_none_or(|(w, _)| report.min_value < w.min_value)
        {
            worst = Some((report, eps));
        }
    }
    worst.expect("lambda_sweep >= 1")
}

/// Sampled `P_H^0(α)` margin over a disk grid.
pub fn ph0_disk_min(f: &HarmonicMap, alpha: f64, grid: &DiskGrid) -> CriterionReport {
    disk_min("ph0", |z| Ok(ph0_margin(f, alpha, z)), grid)
}

/// Sampled `G_H^0(β)` margin over a disk grid.
pub fn gh0_disk_min(f: &HarmonicMap, beta: f64, grid: &DiskGrid) -> CriterionReport {
    disk_min("gh0", |z| Ok(gh0_margin(f, beta, z)), grid)
}

pub(crate) fn unit(theta: f64) -> Complex {
    Complex::from_polar(1.0, theta)
}
