//! Multiprecision interval arithmetic with directed rounding.

pub mod complex;
pub mod float;
pub mod interval;
pub mod trig;

pub use complex::{CFloat, CInterval};
pub use float::{BigFloat, Round};
pub use interval::Interval;
