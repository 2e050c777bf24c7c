//! Graded right modules over tabulated algebras.
//!
//! A module is stored inside a degree window `[lo, hi]` as a subquotient
//! `U / W` of a projective module `F = ⊕ e_p A(-s)`; every piece is exact as
//! long as `hi - min(s)` does not exceed the algebra's truncation.

mod free;
mod hom;
mod iso;
mod mf;
mod module;
mod resolve;

pub use free::{FreeLayout, Summand};
pub(crate) use hom::map_matrix;
pub use hom::{ext_graded, hom_basis, hom_graded, mcm_check, DegreeTable, HomBasis, McmVerdict};
pub use iso::{is_isomorphic, IsoVerdict};
pub use mf::{mf_to_modules, verify_mf, MatrixFactorization, MfCheck};
pub use module::{GradedModule, ModuleMap, Presentation};
pub use resolve::{Generator, Resolution, ResolutionStep};

use crate::algebra::AlgebraError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("window top {top} is more than the truncation {truncation} above the lowest shift {lowest_shift}")]
    WindowTooLarge { top: i32, lowest_shift: i32, truncation: u32 },
    #[error("degree {0} lies outside the module window")]
    DegreeOutsideWindow(i32),
    #[error("presentation entry ({row}, {col}) has the wrong degree or idempotent")]
    BadEntry { row: usize, col: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("not an automorphism of the underlying algebra")]
    NotAutomorphism,
    #[error("matrix factorization check failed: {0}")]
    InvalidFactorization(String),
    #[error("window too short to determine generators")]
    WindowTooShort,
    #[error("map is not {0}")]
    BadMap(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
