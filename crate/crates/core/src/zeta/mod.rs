//! Places of P^1, exact zeta values, and the residue computation behind the
//! volume formula.

mod division;
mod exact;
mod place;
mod ratfunc;
mod series;
mod values;

pub use division::{volume_residue_oracle, zeta_division_rational_function};
pub use exact::ExactQ;
pub use place::{Place, PlaceKind};
pub use ratfunc::{QPoly, RationalFunctionQ};
pub use series::PowerSeriesInt;
pub use values::{
    euler_product_check, euler_product_check_with, euler_product_sides, local_factor_inverse, zeta_global_neg,
    zeta_local_neg, zeta_partial_neg,
};
