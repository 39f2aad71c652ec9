use thiserror::Error;

use crate::series::Complex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coefficient {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("a power series needs at least one coefficient")]
    EmptySeries,

    #[error("divisor vanishes at the origin")]
    DivisorVanishesAtOrigin,

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error("invalid section orders p = {p}, q = {q} (need p >= 1, q >= 2)")]
    InvalidSectionOrder { p: usize, q: usize },

    #[error("section ({p}, {q}) exceeds stored truncation degree {degree}")]
    SectionBeyondTruncation { p: usize, q: usize, degree: usize },

    #[error("parameter {0} is not unimodular")]
    NonUnimodularParameter(Complex),

    #[error("h' vanishes at {0}")]
    CriticalPoint(Complex),

    #[error("1 {sign} w(0) vanishes; shear is undefined")]
    DegenerateDilatation { sign: char },

    #[error("invalid shear specification: {0}")]
    InvalidShearSpec(String),

    #[error("map is not sense-preserving at {0}")]
    NotSensePreserving(Complex),

    #[error("Df vanishes at {0}")]
    DegenerateDenominator(Complex),

    #[error("unknown catalog name `{0}`")]
    UnknownCatalogName(String),

    #[error("bad bracket [{lo}, {hi}]: predicate is {pass_lo} at lo and {pass_hi} at hi")]
    BadBracket {
        lo: f64,
        hi: f64,
        pass_lo: bool,
        pass_hi: bool,
    },

    #[error(
        "bracket [{lo}, {hi}] did not re-verify; predicate is not monotone or not deterministic"
    )]
    InconsistentBracket { lo: f64, hi: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
