//! Exact arithmetic for Brauer, walled Brauer and cyclotomic Brauer algebras,
//! and their realization as centralizer algebras of `Sp(2n, ℝ)` and `SO(p, q)`
//! acting on tensor powers of the defining representation.

pub mod acceptance;
pub mod algebra;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod linalg;
pub mod schur_weyl;

pub use error::{Error, Result};
