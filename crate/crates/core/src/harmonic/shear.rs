//! Shear construction: recover `(h, g)` from an analytic target `h ± g`
//! and a dilatation `w` via `g' = w h'`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{PowerSeries, ONE};

use super::HarmonicMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShearMode {
    /// `h + g = target`
    Sum,
    /// `h - g = target`
    Difference,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShearSpec {
    target: PowerSeries,
    dilatation: PowerSeries,
    mode: ShearMode,
}

impl ShearSpec {
    pub fn new(target: PowerSeries, dilatation: PowerSeries, mode: ShearMode) -> Result<Self> {
        if target.coeff(0).norm() > 1e-12 || (target.coeff(1) - ONE).norm() > 1e-12 {
            return Err(Error::InvalidShearSpec(
                "target must satisfy l(0) = 0 and l'(0) = 1".into(),
            ));
        }
        if dilatation.coeff(0).norm() >= 1.0 {
            return Err(Error::InvalidShearSpec("|w(0)| must be below 1".into()));
        }
        Ok(Self {
            target,
            dilatation,
            mode,
        })
    }

    pub fn target(&self) -> &PowerSeries {
        &self.target
    }

    pub fn dilatation(&self) -> &PowerSeries {
        &self.dilatation
    }

    pub fn mode(&self) -> ShearMode {
        self.mode
    }
}

/// Solves `h ± g = l`, `g' = w h'`, `h(0) = g(0) = 0` at the degree of the
/// target. Dilatation coefficients beyond its stored degree are taken as
/// zero.
///
/// Only `w(0) = 0` yields `h'(0) = 1`; other dilatations fail the map
/// normalization check.
pub fn shear(spec: &ShearSpec) -> Result<HarmonicMap> {
    let degree = spec.target.degree();
    if degree < 1 {
        return Err(Error::InvalidShearSpec(
            "target degree must be at least 1".into(),
        ));
    }
    let (sign, sign_char) = match spec.mode {
        ShearMode::Sum => (1.0, '+'),
        ShearMode::Difference => (-1.0, '-'),
    };
    let w = spec.dilatation.padded(degree - 1);
    let denom = &PowerSeries::monomial(ONE, 0, degree - 1) + &w.scale(sign.into());
    if denom.coeff(0).norm() < 1e-14 {
        return Err(Error::DegenerateDilatation { sign: sign_char });
    }
    let dh = spec.target.derivative().try_div(&denom)?;
    let h = dh.antiderivative();
    let g = match spec.mode {
        ShearMode::Sum => &spec.target - &h,
        ShearMode::Difference => &h - &spec.target,
    };
    HarmonicMap::new(h, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::catalog;
    use crate::series::rational_expand;

    fn residuals(f: &HarmonicMap, spec: &ShearSpec) -> (f64, f64) {
        let n = f.degree();
        let w = spec.dilatation().padded(n);
        let dh = f.h().derivative();
        let wdh = &w.padded(n - 1) * &dh;
        let dilatation_res = (&f.g().derivative() - &wdh)
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let combined = match spec.mode() {
            ShearMode::Sum => f.h() + f.g(),
            ShearMode::Difference => f.h() - f.g(),
        };
        let mode_res = (&combined - spec.target())
            .coeffs()
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        (dilatation_res, mode_res)
    }

    #[test]
    fn vertical_shear_of_half_plane_gives_f0() {
        let n = 64;
        let l = rational_expand(&[0.0, 1.0], &[1.0, -1.0], n).unwrap();
        let w = PowerSeries::from_real(&[0.0, -1.0]).unwrap();
        let spec = ShearSpec::new(l, w, ShearMode::Sum).unwrap();
        let f = shear(&spec).unwrap();
        let oracle_h = rational_expand(&[0.0, 2.0, -1.0], &[2.0, -4.0, 2.0], n).unwrap();
        let oracle_g = rational_expand(&[0.0, 0.0, -1.0], &[2.0, -4.0, 2.0], n).unwrap();
        for k in 0..=n {
            assert!((f.h().coeff(k).re - (k as f64 + 1.0) / 2.0).abs() < 1e-12 || k == 0);
            assert!((f.h().coeff(k) - oracle_h.coeff(k)).norm() < 1e-12);
            assert!((f.g().coeff(k) - oracle_g.coeff(k)).norm() < 1e-12);
        }
        let (a, b) = residuals(&f, &spec);
        assert!(a < 1e-12 && b < 1e-12);
    }

    #[test]
    fn zero_dilatation_returns_target() {
        let l = rational_expand(&[0.0, 1.0, 0.3], &[1.0, 0.5], 20).unwrap();
        let spec = ShearSpec::new(l.clone(), PowerSeries::zero(0), ShearMode::Sum).unwrap();
        let f = shear(&spec).unwrap();
        for k in 0..=20 {
            assert!((f.h().coeff(k) - l.coeff(k)).norm() < 1e-14);
        }
        assert!(f.g().coeffs().iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn difference_shear_gives_harmonic_koebe() {
        let n = 40;
        let l = rational_expand(&[0.0, 1.0], &[1.0, -2.0, 1.0], n).unwrap();
        let w = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        let spec = ShearSpec::new(l, w, ShearMode::Difference).unwrap();
        let f = shear(&spec).unwrap();
        let k = catalog("koebe_harmonic", n).unwrap();
        for j in 0..=n {
            let scale = 1.0 + k.h().coeff(j).norm();
            assert!((f.h().coeff(j) - k.h().coeff(j)).norm() < 1e-12 * scale);
            assert!((f.g().coeff(j) - k.g().coeff(j)).norm() < 1e-12 * scale);
        }
        let (a, b) = residuals(&f, &spec);
        assert!(a < 1e-12 * (n * n) as f64 && b < 1e-12 * (n * n) as f64);
    }

    #[test]
    fn rejects_bad_specs() {
        let l = PowerSeries::from_real(&[0.0, 2.0]).unwrap();
        assert!(ShearSpec::new(l, PowerSeries::zero(0), ShearMode::Sum).is_err());
        let l = PowerSeries::from_real(&[0.0, 1.0, 0.0]).unwrap();
        let w = PowerSeries::from_real(&[1.0]).unwrap();
        assert!(ShearSpec::new(l.clone(), w, ShearMode::Difference).is_err());
        let w = PowerSeries::from_real(&[0.5]).unwrap();
        let spec = ShearSpec::new(l, w, ShearMode::Sum).unwrap();
        assert!(matches!(shear(&spec), Err(Error::Normalization(_))));
    }
}
