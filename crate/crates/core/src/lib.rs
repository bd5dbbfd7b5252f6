//! Exact algebraic-independence checks via Jacobian determinants, plus
//! rigorously enclosed evaluation of the series these checks are applied to.
#![no_std]

extern crate alloc;

pub mod casebook;
pub mod error;
pub mod criterion;
pub mod exact;
pub mod jacobian;
pub mod job;
pub mod parse;
pub mod series;
pub mod zerotest;

pub use error::{Error, Result};
pub use exact::{Enclosure, PointAssignment, Polynomial, Rational, RationalFunction};
pub use job::{AssumptionRecord, JobSpec, Mode};
