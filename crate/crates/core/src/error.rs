use thiserror::Error;

use crate::zeros::{Rectangle, ZeroTable};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("s = 1 is a pole of zeta")]
    PoleAtOne,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("|zeta(s)| = {modulus:e} is below the zero threshold")]
    NearZero { modulus: f64 },

    #[error("argument {0} is a pole of the digamma function")]
    PoleAtNonpositiveInteger(f64),

    #[error("s = {re} + {im}i is a pole of the functional-equation factor")]
    PoleInFactor { re: f64, im: f64 },

    #[error("continuation path passes within {distance:e} of a zero at t = {gamma}")]
    PathTooCloseToZero { distance: f64, gamma: f64 },

    #[error("zero table covers t <= {have}, need t <= {need}")]
    TableIncomplete { need: f64, have: f64 },

    #[error(
        "zero count certificate failed on [{lo}, {hi}]: located {located}, expected {expected}"
    )]
    CertificationFailed {
        lo: f64,
        hi: f64,
        located: usize,
        expected: i64,
        /// Everything that was located, with `certified = false`.
        table: Box<ZeroTable>,
    },

    #[error("argument tracking did not converge on {rect:?} near {at}")]
    WindingUnstable { rect: Rectangle, at: String },

    #[error("boundary of {rect:?} could not be moved off a zero")]
    BoundaryZero { rect: Rectangle },

    #[error("box {rect:?} of minimal size still has winding number {winding}")]
    MultipleZero { rect: Rectangle, winding: i64 },

    #[error("t = {t} lies outside the table range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },

    #[error("empty input")]
    EmptyInput,

    #[error("window around gamma_{n} is not covered by the table")]
    WindowNotCovered { n: usize },

    #[error("t = {t} is outside the admissible interval ({lo}, {hi})")]
    TOutsideAdmissibleInterval { t: f64, lo: f64, hi: f64 },

    #[error("{count} zeros exceed the direct double-sum budget of {budget}")]
    TooManyZeros { count: usize, budget: usize },

    #[error("alpha2 = {alpha2} must exceed {threshold} for alpha1 = {alpha1}")]
    InadmissibleAlphas {
        alpha1: f64,
        alpha2: f64,
        threshold: f64,
    },

    #[error("no zero of zeta' within 2 of gamma_{n} = {gamma}")]
    PrimesCoverageInsufficient { n: usize, gamma: f64 },

    #[error("quadrature stalled on [{lo}, {hi}]")]
    QuadratureStalled { lo: f64, hi: f64 },

    #[error("grid point t = {t} is within the clearance of a zero")]
    GridTouchesZero { t: f64 },

    #[error("zero-sum tail uncertainty {estimate:e} exceeds the budget")]
    TailDominates { estimate: f64 },
}
