//! Places, divisors and ray class groups of P^1 over F_q; Artin-Schreier-Witt
//! characters, their conductors and Frobenius values; reciprocity checks.

mod character;
mod divisor;
mod group;
pub mod local;
mod oracle;
mod schmid;

pub use character::{
    factorization_check, find_violation, random_congruent, s1_characters, ASWCharacter, FactorizationReport,
    MAX_CHARACTER_LENGTH,
};
pub use divisor::{divisor_of, in_congruence, moduli_up_to, places_up_to, poly_divisor, Divisor, Modulus, Place};
pub use group::{closed_form_order, ray_class_group, FinAbGroup, RayClassGroup};
pub use schmid::{schmid_local, schmid_places, schmid_reciprocity_check, schmid_terms};
pub use oracle::{ray_class_oracle, OracleTables, DEFAULT_ORACLE_BOUND, MAX_ORACLE_BOUND};
