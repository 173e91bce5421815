use thiserror::Error;

/// Errors raised across the crate.
///
/// Each variant maps onto one failure mode named by an operation contract;
/// the CLI turns them into exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate quadratic form: eigenvalue {eigenvalue:e} below tolerance")]
    DegenerateForm { eigenvalue: f64 },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("element is not symplectic")]
    NotSymplectic,
    #[error("element is not in the theta group")]
    NotGamma12,
    #[error("signature mismatch: expected {expected:?}, found {found:?}")]
    SignatureMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("no split basis found with entries bounded by {bound}")]
    NotFound { bound: i64 },
    #[error("quadratic form is not positive definite on the cone span")]
    NonPositiveRestriction,
    #[error("transformed positive cone fails positivity")]
    NotSplitAfterTransform,
    #[error("radius {radius} exceeds the configured maximum {max} before tolerance was met")]
    RadiusOverflow { radius: f64, max: f64 },
    #[error("characteristic is not in the lattice Delta^-1 Z^n: {0}")]
    BadCharacteristic(String),
    #[error("denominator -tC Omega + tA is singular")]
    SingularDenominator,
    #[error("eighth root of unity is ambiguous: residuals {best:e} and {second:e}")]
    AmbiguousZeta { best: f64, second: f64 },
    #[error("contour integral does not converge: Im tau = {im_tau} must be negative")]
    NonconvergentContour { im_tau: f64 },
    #[error("perturbation changes the signature of Im Omega")]
    SignatureBroken,
    #[error("array support exceeds its window in direction {direction}")]
    WindowOverflow { direction: usize },
    #[error("window radius {w} too small for k = {k}; need at least k + 2")]
    WindowTooSmall { k: usize, w: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RadiusOverflow { .. } => 3,
            Error::NotFound { .. } => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
