pub mod algebra;
pub mod error;
pub mod expr;
pub mod k2surface;
pub mod localfield;
pub mod rayclass;
pub mod rsw;
pub mod sample;
pub mod selftest;
pub mod witt;

pub use error::{Error, Result};
