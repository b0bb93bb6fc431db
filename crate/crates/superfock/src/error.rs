use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("{what} = {got} exceeds the supported maximum {max}")]
    TooLarge {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("matrix is not skew-symmetric (residual {residual:.3e})")]
    NotSkew { residual: f64 },

    #[error("element is not of pure Grassmann degree 2")]
    NotDegreeTwo,

    #[error("tensor has no definite parity")]
    MixedParity,

    #[error("pair (U, V) violates the orthogonality relations (residual {residual:.3e})")]
    NotOrthogonal { residual: f64 },

    #[error(
        "ambiguous rank: singular value {sigma:.3e} lies in the gray zone relative to {scale:.3e}"
    )]
    AmbiguousRank { sigma: f64, scale: f64 },

    #[error("U has a nontrivial kernel of dimension {0}")]
    Singular(usize),

    #[error("matrix is ill-conditioned (condition number {0:.3e})")]
    IllConditioned(f64),

    #[error("{0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
