pub mod arith;
#[cfg(feature = "cli")]
pub mod cli;
pub mod count;
pub mod error;
pub mod interlace;
pub mod parse;
pub mod poly;
pub mod precision;
pub mod ray;
pub mod report;
pub mod sector;

pub use error::{Error, Result};
