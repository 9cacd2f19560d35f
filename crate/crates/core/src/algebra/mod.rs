//! Exact arithmetic over finite fields, polynomial rings and their fraction fields.

pub mod factor;
pub mod field;
pub mod gf;
pub mod poly;
pub mod poly2;
pub mod ratfunc2;
pub mod ratfunc;
pub mod residue;
pub mod smith;

pub use factor::{factor, irreducibles, is_irreducible};
pub use field::{Field, FiniteField};
pub use gf::{FieldElem, Fq};
pub use poly::Poly;
pub use poly2::{Factor2, Poly2, POLY2_DEGREE_CAP};
pub use ratfunc2::RatFunc2;
pub use ratfunc::RatFunc;
pub use residue::{Residue, ResidueField};
