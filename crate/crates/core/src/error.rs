use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("inner series of a composition must vanish at the origin (constant term {0})")]
    NonZeroConstant(f64),
    #[error("series has zero constant term; reciprocal undefined")]
    ZeroConstant,
    #[error("pole hit at w = {0}")]
    Pole(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("point {0} lies outside the closed unit disc")]
    OutsideDisc(String),
    #[error("point {0} lies outside the closed lens")]
    OutsideLens(String),
    #[error("gamma must satisfy 1 < gamma < inf, got {0}")]
    InvalidGamma(f64),
    #[error("{0} is unstable: pole at {1} inside the closed unit disc")]
    Unstable(&'static str, String),
    #[error("b vanishes on the unit circle (min |b| = {0:e})")]
    VanishesOnBoundary(f64),
    #[error("unsupported structure: {0}")]
    Unsupported(String),
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sample grids do not match")]
    GridMismatch,
    #[error("empty sample table")]
    EmptyTable,
    #[error("interpolation mismatch of {0:e} at a zero of b")]
    InterpolationMismatch(f64),
    #[error("polynomial division left remainder {0:e}")]
    DivisionRemainder(f64),
    #[error("feasibility margin {0:e} is not at the boundary; gamma not converged")]
    NotAtBoundary(f64),
    #[error("evaluation failed at {0}")]
    Evaluation(String),
}

impl Error {
    /// True for failures of a mathematical precondition (as opposed to
    /// malformed input). The CLI maps these to exit code 2.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::InvalidArgument(_) | Error::InvalidGamma(_))
    }
}
