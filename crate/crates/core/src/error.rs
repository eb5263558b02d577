use thiserror::Error;

/// Errors raised by the lattice, enumeration and engine layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: classes live on X_{left} and X_{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported point count r = {r}: {reason}")]
    UnsupportedR { r: usize, reason: &'static str },

    #[error("invalid point spec for r = {r}: {reason}")]
    InvalidPointSpec { r: usize, reason: String },

    #[error("invalid linear system: {0}")]
    InvalidLinearSystem(String),

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("non-reduced pencil: the discriminant vanishes identically")]
    NonReducedPencil,

    #[error("the Seshadri constant is not attained by a rational curve for r = {r}; use the limiting family")]
    NotAttained { r: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable tag, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnsupportedR { .. } => "unsupported_r",
            Error::InvalidPointSpec { .. } => "invalid_point_spec",
            Error::InvalidLinearSystem(_) => "invalid_linear_system",
            Error::DegenerateConfiguration(_) => "degenerate_configuration",
            Error::NonReducedPencil => "non_reduced_pencil",
            Error::NotAttained { .. } => "not_attained",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
