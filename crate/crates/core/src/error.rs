use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} coefficients, found {found}")]
    BadLength { expected: usize, found: usize },

    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },

    #[error("singular map: |det| = {det:e} is not above {tol:e}")]
    SingularMap { det: f64, tol: f64 },

    #[error("degenerate Ricci tensor: signature ({p},{q}) in dimension {m}")]
    DegenerateRicci { p: usize, q: usize, m: usize },

    #[error("bad parameters for {family}: {constraint}")]
    BadParams { family: &'static str, constraint: String },

    #[error("{family} has no closed-form Ricci tensor")]
    NoClosedForm { family: &'static str },

    #[error("conjugate symbols disagree at ({i},{j},{k})")]
    ConjugationMismatch { i: usize, j: usize, k: usize },

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("empty list")]
    EmptyList,

    #[error("inconsistent exponent estimates: {low} vs {high}")]
    Inconsistent { low: f64, high: f64 },

    #[error("integer overflow in Smith normal form")]
    Overflow,
}

pub type Result<T> = core::result::Result<T, Error>;
