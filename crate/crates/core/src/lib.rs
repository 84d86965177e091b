pub mod clifford;
pub mod error;
pub mod exactnum;
pub mod monopole;
pub mod operators;
pub mod repcalc;
pub mod report;
pub mod spectrum;
pub mod spinrep;

pub use error::{Error, Result};
