//! Numerical laboratory for the zeros of ζ(s) and ζ′(s).
//!
//! The crate is split the same way the computations depend on each other:
//!
//! * [`engine`] evaluates ζ, ζ′, ζ″, ζ′/ζ, log ζ, Hardy's Z, the
//!   Riemann–Siegel theta function, the digamma function and the
//!   functional-equation factor χ. Two backends share the Euler–Maclaurin
//!   formula: a working-precision one built on MPFR (`rug`) and a double
//!   precision one with extended-precision phase reduction used for bulk
//!   scanning and quadrature.
//! * [`zeros`] locates and certifies critical-line zeros of ζ and isolates
//!   zeros of ζ′ with the argument principle.
//! * [`stats`] computes gap statistics, M_n sums, the pair-correlation form
//!   factor and related censuses over a zero table.
//! * [`meanvalue`] integrates |ζ′/ζ|² near the critical line and measures
//!   how well ζ′/ζ is described by nearby poles.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and runs sequentially otherwise.

pub mod engine;
pub mod error;
pub mod meanvalue;
pub mod par;
pub mod quad;
pub mod stats;
pub mod zeros;

pub use engine::{ComplexPoint, PrecisionConfig};
pub use error::{Error, Result};
pub use zeros::{Rectangle, ZeroTable, ZetaPrimeZero, ZetaZero};

/// Complex numbers in double precision.
pub type C64 = num_complex::Complex64;
