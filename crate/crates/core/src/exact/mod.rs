//! Exact rationals, sparse polynomials, unreduced rational functions and
//! midpoint-radius enclosures.

mod enclosure;
pub(crate) mod polynomial;
mod rational;
mod ratfn;

pub use enclosure::{Enclosure, PointAssignment, DEFAULT_PRECISION};
pub use polynomial::{poly_arithmetic, var_list, ArithOp, Monomial, Polynomial, VarList};
pub use rational::{rat, Rational};
pub use ratfn::{ratfn_arithmetic, RatOp, RationalFunction};
