//! Witt vectors of length ≤ 3 over E((t)), their filtrations and conductors.

mod oracle;
pub mod universal;
mod vector;

pub use oracle::{conductor_oracle, ConductorOracle};
pub use universal::{universal, UniversalPolys, WittOp};
pub use vector::{box_conductor, ord_p, WittVector, MAX_LENGTH};

#[cfg(test)]
mod tests;
