//! Exact arithmetic for modular varieties of D-elliptic sheaves over F_q(T).

pub mod admissible;
pub mod algebra;
pub mod counts;
pub mod error;
pub mod ff_poly;
pub mod report;
pub mod zeta;

pub use error::{Error, Result};
