//! Graded algebras: presentations, multiplication tables and the
//! constructions built on them.

mod finite;
mod hilbert;
mod presented;
mod tabulated;

pub use finite::{FiniteDimAlgebra, SemisimpleReport};
pub use hilbert::{ClosedForm, HilbertSeries};
pub use presented::{AutomorphismCheck, PresentedAlgebra};
pub use tabulated::{CofA, Element, GradedAutomorphism, TabulatedAlgebra};

pub(crate) use tabulated::{dense_to_sparse, RawTable};

use crate::exactla::Scalar;
use crate::freealg::FreeAlgError;
use crate::gbasis::GbError;

/// Sparse coordinate vector: `(basis index, coefficient)` pairs.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("degree {requested} requested but the algebra is truncated at {available}")]
    TruncationExceeded { requested: u32, available: u32 },
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("element is not central")]
    NotCentral,
    #[error("algebra is not quadratic with degree-one generators")]
    NotQuadratic,
    #[error("map is not a graded automorphism")]
    NotAutomorphism,
    #[error("generator images do not preserve degrees")]
    NotDegreePreserving,
    #[error("algebra carries no generator presentation")]
    NoPresentation,
    #[error("multiplication by z does not stabilise within degree {truncation}")]
    NoStabilization { truncation: u32 },
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Syntax(#[from] FreeAlgError),
}
