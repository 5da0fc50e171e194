use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A problem description violates an invariant of its type.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Some consecutive discriminant vanishes, so no symmetric
    /// characteristic matrix exists.
    #[error(
        "tridiagonal route unavailable: discriminant D(t{index_hi}, t{index_lo}) is negligible \
         (scaled margin {margin:e}); use the characteristic-polynomial route"
    )]
    TridiagonalUnavailable {
        index_lo: usize,
        index_hi: usize,
        margin: f64,
    },

    /// The hypothesis tests and the polynomial structure disagree, which
    /// indicates a tolerance problem rather than a property of the problem.
    #[error("classifier inconsistency: {0}")]
    Inconsistency(String),

    #[error("lambda = {lambda} is not an eigenvalue (residual {residual:e})")]
    NotAnEigenvalue { lambda: f64, residual: f64 },

    /// Single-node problem whose basis falls in the degenerate case: the
    /// spectrum is {0} or all of C, never a unique positive eigenvalue.
    #[error("zero-eigenvalue regime: the potential admits a nontrivial Dirichlet solution")]
    ZeroEigenvalueRegime,

    /// Single-node problem whose node is a zero of phi or psi.
    #[error("empty spectrum at t = {t}: phi(t) psi(t) = {product:e} is negligible")]
    EmptySpectrum { t: f64, product: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(field: &str, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericalFailure(_)
            | Error::Inconsistency(_)
            | Error::TridiagonalUnavailable { .. }
            | Error::NotAnEigenvalue { .. }
            | Error::ZeroEigenvalueRegime
            | Error::EmptySpectrum { .. } => 2,
            Error::Domain(_) | Error::Validation { .. } | Error::Parse(_) | Error::Io(_) => 1,
        }
    }
}
