//! Exact integer and rational linear algebra.
//!
//! Everything here is arbitrary precision and floating-point free: integer
//! matrices, rational vectors, Hermite and Smith normal forms, lattices
//! commensurable with `Z^n`, and congruence solving modulo `Z^m`.

mod lattice;
mod matrix;
mod normal_form;
mod solve;
mod vector;

use thiserror::Error;

pub use lattice::{lattice_quotient_invariants, Lattice};
pub use matrix::{IntMatrix, RatMatrix};
pub use normal_form::{hnf, snf, SnfResult};
pub use solve::{
    integer_kernel, solve_congruence, solve_integer, CongruenceSolution, CongruenceSolver,
    IntegerSolution, SolutionSpace,
};
pub use vector::RatVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("matrix is singular")]
    Singular,
    #[error("lattice is not contained in the given superlattice")]
    NotSublattice,
    #[error("dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}
