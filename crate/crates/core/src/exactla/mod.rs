//! Exact dense linear algebra over the rationals or a prime field.

mod mat;
mod scalar;

pub use mat::{complement_units, extend_basis, Echelon, Mat, Projector};
pub use scalar::{axpy, Field, ParseScalarError, RatValue, Residue, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
