use thiserror::Error;

/// Errors raised by the library.
///
/// Singular divergences are not errors: they are reported as
/// [`ExtendedValue::Infinite`](crate::ExtendedValue::Infinite).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error("not Hermitian (asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("not positive semi-definite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("not normalized (total {0})")]
    NotNormalized(f64),

    #[error("dimension {0} exceeds the cap of {max}", max = crate::operator::MAX_DIM)]
    DimensionCap(usize),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn same_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ShapeMismatch { left, right })
    }
}
