//! Division algebras over F_q(T) given by local invariants, and the data
//! describing `(D, inf, o)`-types.

mod invariant;
mod spec;
mod type_data;

pub use invariant::Invariant;
pub(crate) use spec::validated;
pub use spec::{dbar_spec, validate_algebra, AlgebraIssue, AlgebraRole, DivisionAlgebraSpec};
pub use type_data::{validate_type, DeltaInvariant, DeltaRole, Fibre, FibrePoint, TypeData, TypeReport, TypeViolation};
