//! Finite fields, polynomials over them, and irreducible enumeration.

mod field;
mod irreducible;
mod oracle;
mod parse;
mod poly;

pub use field::{FieldElement, GaloisField, PrimePower, MAX_FIELD_SIZE};
pub use irreducible::{
    count_monic_irreducibles, count_monic_irreducibles_u64, enumerate_monic_irreducibles,
    enumerate_monic_irreducibles_capped, monic_irreducibles_iter, DEFAULT_ENUMERATION_CAP,
};
pub use oracle::{brute_force_admissibility, brute_force_is_admissible, ORACLE_CAP};
pub use poly::Poly;

pub(crate) use irreducible::require_monic_nonconstant;
