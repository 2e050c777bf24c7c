//! Graded noncommutative algebras, graded right modules over them, and
//! window-certified checks for exceptional sequences and helices.

pub mod algebra;
pub mod exactla;
pub mod freealg;
pub mod gbasis;
pub mod helix;
pub mod modules;
