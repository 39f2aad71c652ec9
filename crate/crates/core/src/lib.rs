//! Numerical toolkit for planar harmonic mappings `f = h + conj(g)` with
//! `h`, `g` given as truncated complex power series.
//!
//! The crate is layered bottom-up:
//!
//! * [`series`] holds the coefficient-level kernels (Horner evaluation,
//!   Cauchy and Hadamard products, long division, rational expansion).
//! * [`harmonic`] builds the map model on top: sections, slices `h + λg`,
//!   dilatation, Jacobian, harmonic convolution, the shear construction and
//!   a catalog of named maps.
//! * [`criteria`] evaluates the pointwise inequalities (class margins, the
//!   full-convexity functional, the Royster–Ziegler functional used for
//!   direction-convexity-preserving kernels) and searches for injectivity
//!   failures.
//! * [`radii`] scans circles and bisects on the radius.
//! * [`figures`] renders disk and annulus images as SVG.
//! * [`verify`] bundles the reference checks into a reproducible report.

pub mod criteria;
pub mod error;
pub mod expr;
pub mod figures;
pub mod harmonic;
pub mod radii;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use harmonic::{HarmonicMap, MapClass};
pub use series::{Complex, PowerSeries};
