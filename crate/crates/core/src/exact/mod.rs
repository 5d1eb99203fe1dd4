//! Exact arithmetic in ℚ(√m) and integer lattices in ℤ².
//!
//! Every decision made anywhere in this crate (adjacency, slab overlap,
//! gap lengths) goes through [`QuadExt::cmp`], which works on integers only.
//! Floating point shows up in [`QuadExt::approx`] and is used for display.

mod hnf;
mod quad;

pub use hnf::{hnf_big, lattice_hnf, HermiteBasis, LatticeVector};
pub use quad::{quad_arith, quad_ceil_div, quad_compare, QuadExt, QuadOp, Radicand};

use thiserror::Error;

/// Arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected strictly positive operands")]
    NonPositive,
    #[error("radicand {0} is not a square-free integer >= 2")]
    InvalidRadicand(u64),
    #[error("lattice input is empty")]
    EmptyLattice,
    #[error("all lattice input vectors are zero")]
    ZeroLattice,
    #[error("integer value does not fit in 64 bits")]
    Overflow,
}
