//! Truncated complex power series.
//!
//! A [`PowerSeries`] of degree `N` stores the dense coefficients
//! `c_0, ..., c_N` of `sum c_k z^k`. Binary operations between series of
//! different degree truncate to the shorter one; callers that need a longer
//! result pad explicitly with [`PowerSeries::padded`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

#[derive(Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex>,
}

impl PowerSeries {
    /// Builds a series from its coefficients; index `k` multiplies `z^k`.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![ZERO; degree + 1],
        }
    }

    /// `c z^k` stored at degree `degree` (which must be at least `k`).
    pub fn monomial(c: Complex, k: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree.max(k));
        s.coeffs[k] = c;
        s
    }

    /// The series `z` at the given degree (at least 1).
    pub fn identity(degree: usize) -> Self {
        Self::monomial(ONE, 1, degree.max(1))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    /// Horner evaluation of the truncated sum.
    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex) -> (Complex, Complex) {
        let (mut p, mut d1) = (ZERO, ZERO);
        for &c in self.coeffs.iter().rev() {
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1)
    }

    /// Value, first and second derivative at `z` in one Horner pass.
    pub fn eval_with_derivatives(&self, z: Complex) -> (Complex, Complex, Complex) {
        let (mut p, mut d1, mut d2) = (ZERO, ZERO, ZERO);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1, d2 * 2.0)
    }

    /// Formal derivative. Degree drops by one; a constant yields `[0]`.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Self { coeffs }
    }

    /// Antiderivative vanishing at the origin. Degree grows by one.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Self { coeffs }
    }

    /// Zero-extends (or truncates) to exactly `degree`.
    pub fn padded(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, ZERO);
        Self { coeffs }
    }

    /// Drops every coefficient above `degree`, keeping the stored length
    /// when it is shorter.
    pub fn truncated(&self, degree: usize) -> Self {
        let keep = (degree + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    /// Coefficientwise product `a_n b_n`, truncated to the shorter series.
    pub fn hadamard(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a * b)
                .collect(),
        }
    }

    /// Power-series long division `self / rhs`, truncated to the shorter
    /// operand.
    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let b0 = rhs.coeffs[0];
        if b0.norm() == 0.0 {
            return Err(Error::DivisorVanishesAtOrigin);
        }
        let n = self.degree().min(rhs.degree());
        let mut q: Vec<Complex> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= rhs.coeffs[j] * q[k - j];
            }
            q.push(acc / b0);
        }
        Self::new(q)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex, Complex) -> Complex) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// Taylor expansion of `num / den` to degree `degree`.
pub fn rational_expand(num: &[f64], den: &[f64], degree: usize) -> Result<PowerSeries> {
    let num = if num.is_empty() { &[0.0][..] } else { num };
    let den = if den.is_empty() { &[0.0][..] } else { den };
    let p = PowerSeries::from_real(num)?.padded(degree);
    let q = PowerSeries::from_real(den)?.padded(degree);
    p.try_div(&q)
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        self.scale(-ONE)
    }
}

/// Cauchy product truncated to `min(N_a, N_b)`.
impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.degree().min(rhs.degree());
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        // Pairing a_j b_{k-j} with a_{k-j} b_j makes the product exactly commutative.
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k / 2).fold(ZERO, |acc, j| {
                    if 2 * j == k {
                        acc + a[j] * b[j]
                    } else {
                        acc + (a[j] * b[k - j] + a[k - j] * b[j])
                    }
                })
            })
            .collect();
        PowerSeries { coeffs }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.coeffs.iter().map(|c| (c.re, c.im)))
            .finish()
    }
}

/// Series literal: a JSON array of `[re, im]` pairs indexed by power.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(deserializer)?;
        PowerSeries::new(pairs.iter().map(|p| Complex::new(p[0], p[1])).collect())
            .map_err(D::Error::custom)
    }
}
