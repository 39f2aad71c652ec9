//! Harmonic maps `f = h + conj(g)` on the unit disk.
//!
//! The co-analytic part is stored as the analytic series `g`; conjugation
//! happens only at evaluation time, so convolution multiplies stored
//! coefficients directly.

mod catalog;
mod shear;

pub use catalog::{catalog, catalog_entry, CatalogEntry, CatalogInfo, CATALOG};
pub use shear::{shear, ShearMode, ShearSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{Complex, PowerSeries, ONE};

const NORMALIZATION_TOL: f64 = 1e-12;
const UNIMODULAR_TOL: f64 = 1e-12;
/// `|h'(z)|` below this is treated as a critical point.
pub const CRITICAL_POINT_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapClass {
    /// `h(0) = 0`, `h'(0) = 1`, `g(0) = 0`.
    H,
    /// Additionally `g'(0) = 0`.
    H0,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapSpec", into = "MapSpec")]
pub struct HarmonicMap {
    h: PowerSeries,
    g: PowerSeries,
    class: MapClass,
}

/// On-disk map description: `{"h": [...], "g": [...], "class": "H0"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSpec {
    pub h: PowerSeries,
    pub g: PowerSeries,
    pub class: MapClass,
}

impl TryFrom<MapSpec> for HarmonicMap {
    type Error = Error;
    fn try_from(spec: MapSpec) -> Result<Self> {
        HarmonicMap::with_class(spec.h, spec.g, spec.class)
    }
}

impl From<HarmonicMap> for MapSpec {
    fn from(f: HarmonicMap) -> Self {
        MapSpec {
            h: f.h,
            g: f.g,
            class: f.class,
        }
    }
}

impl HarmonicMap {
    /// Builds `h + conj(g)`, padding both parts to a common degree. The
    /// class is `H0` when `g'(0) = 0`, otherwise `H`.
    pub fn new(h: PowerSeries, g: PowerSeries) -> Result<Self> {
        let class = if g.coeff(1).norm() <= NORMALIZATION_TOL {
            MapClass::H0
        } else {
            MapClass::H
        };
        Self::with_class(h, g, class)
    }

    pub fn with_class(h: PowerSeries, g: PowerSeries, class: MapClass) -> Result<Self> {
        let degree = h.degree().max(g.degree());
        let (h, g) = (h.padded(degree), g.padded(degree));
        if h.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::Normalization("h(0) must be 0".into()));
        }
        if (h.coeff(1) - ONE).norm() > NORMALIZATION_TOL {
            return Err(Error::Normalization("h'(0) must be 1".into()));
        }
        if g.coeff(0).norm() > NORMALIZATION_TOL {
            return Err(Error::Normalization("g(0) must be 0".into()));
        }
        if class == MapClass::H0 && g.coeff(1).norm() > NORMALIZATION_TOL {
            return Err(Error::Normalization("class H0 requires g'(0) = 0".into()));
        }
        Ok(Self { h, g, class })
    }

    /// An analytic map (`g = 0`).
    pub fn analytic(h: PowerSeries) -> Result<Self> {
        let g = PowerSeries::zero(h.degree());
        Self::new(h, g)
    }

    pub fn identity(degree: usize) -> Self {
        Self::analytic(PowerSeries::identity(degree)).expect("z is normalized")
    }

    pub fn h(&self) -> &PowerSeries {
        &self.h
    }

    pub fn g(&self) -> &PowerSeries {
        &self.g
    }

    pub fn class(&self) -> MapClass {
        self.class
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.h.eval(z) + self.g.eval(z).conj()
    }

    /// `(h'(z), g'(z))`.
    pub fn derivatives(&self, z: Complex) -> (Complex, Complex) {
        (
            self.h.eval_with_derivative(z).1,
            self.g.eval_with_derivative(z).1,
        )
    }

    /// The harmonic section `s_p(h) + conj(s_q(g))`.
    pub fn section(&self, p: usize, q: usize) -> Result<Self> {
        if p < 1 || q < 2 {
            return Err(Error::InvalidSectionOrder { p, q });
        }
        if p > self.h.degree() || q > self.g.degree() {
            return Err(Error::SectionBeyondTruncation {
                p,
                q,
                degree: self.degree(),
            });
        }
        let degree = p.max(q);
        let h = self.h.truncated(p).padded(degree);
        let g = self.g.truncated(q).padded(degree);
        Self::with_class(h, g, self.class)
    }

    /// The analytic function `h + λ g` for `|λ| = 1`.
    pub fn slice(&self, lambda: Complex) -> Result<PowerSeries> {
        if (lambda.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::NonUnimodularParameter(lambda));
        }
        Ok(&self.h + &self.g.scale(lambda))
    }

    /// Second complex dilatation `g'(z) / h'(z)`.
    pub fn dilatation(&self, z: Complex) -> Result<Complex> {
        let (dh, dg) = self.derivatives(z);
        if dh.norm() < CRITICAL_POINT_TOL {
            return Err(Error::CriticalPoint(z));
        }
        Ok(dg / dh)
    }

    /// `|h'(z)|^2 - |g'(z)|^2`.
    pub fn jacobian(&self, z: Complex) -> f64 {
        let (dh, dg) = self.derivatives(z);
        dh.norm_sqr() - dg.norm_sqr()
    }

    /// Harmonic (Hadamard) convolution: coefficientwise products of the
    /// analytic parts and of the co-analytic parts, truncated to the
    /// shorter map.
    pub fn convolve(&self, other: &Self) -> Self {
        let h = self.h.hadamard(&other.h);
        let g = self.g.hadamard(&other.g);
        Self::new(h, g).expect("products of normalized maps are normalized")
    }
}
