pub mod capset;
pub mod error;
pub mod iet;
pub mod invariance;
pub mod qfield;
pub mod quadunit;
pub mod report;
pub mod sturmian;
pub mod substitution;

pub use error::{Error, Result};
