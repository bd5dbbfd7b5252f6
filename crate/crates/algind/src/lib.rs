//! Job files, reports and the command-line front end for [`algind_core`].

pub mod cli;
pub mod eval;
pub mod job;
pub mod report;

pub use algind_core;
pub use job::parse_job;
