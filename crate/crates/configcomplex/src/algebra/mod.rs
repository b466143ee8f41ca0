//! Exact integer linear algebra, finite abelian groups, and finite fields.

mod field;
mod group;
mod matrix;

pub use field::{prime_power, FieldElement, FiniteField};
pub use group::{quotient_group, FiniteAbelianGroup, GroupElement, LatticeProjection};
pub use matrix::{IntegerMatrix, SmithNormalForm};
