//! Zeta values of P^1 over F_q at negative integers, and the Euler-product check.
//!
//! Arguments are passed as the positive integer `i` standing for `s = -i`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;

use super::exact::ExactQ;
use super::place::Place;
use super::series::PowerSeriesInt;
use crate::error::{Error, Result};
use crate::ff_poly::{count_monic_irreducibles, PrimePower};

fn check_argument(i: i64) -> Result<u32> {
    if i < 1 {
        return Err(Error::ZetaPole(i));
    }
    u32::try_from(i).map_err(|_| Error::ZetaPole(i))
}

/// `1 - q_x^i`, the reciprocal of the local factor at `s = -i`.
pub fn local_factor_inverse(x: &Place, i: u32) -> ExactQ {
    ExactQ::from_int(BigInt::one() - x.residue_size().pow(i))
}

/// `zeta_x(-i) = 1 / (1 - q_x^i)`.
pub fn zeta_local_neg(x: &Place, i: i64) -> Result<ExactQ> {
    let i = check_argument(i)?;
    Ok(local_factor_inverse(x, i).recip())
}

/// `zeta_F(-i) = 1 / ((1 - q^i)(1 - q^{i+1}))`.
pub fn zeta_global_neg(q: PrimePower, i: i64) -> Result<ExactQ> {
    let i = check_argument(i)?;
    let qb = BigInt::from(q.q());
    let a = BigInt::one() - qb.pow(i);
    let b = BigInt::one() - qb.pow(i + 1);
    Ok(ExactQ::new(1, a * b))
}

/// Partial zeta `zeta_F^S(-i)`: the global value with the local factors of
/// the places in `S` divided out.
pub fn zeta_partial_neg(q: PrimePower, places: &[Place], i: i64) -> Result<ExactQ> {
    let global = zeta_global_neg(q, i)?;
    let i = i as u32;
    let mut seen = HashSet::new();
    let mut value = global;
    for x in places {
        if x.order() != q {
            return Err(Error::FieldMismatch(x.order().q(), q.q()));
        }
        if !seen.insert(x) {
            return Err(Error::DuplicatePlace(x.to_string()));
        }
        value = value * local_factor_inverse(x, i);
    }
    Ok(value)
}

/// Check `prod_x (1 - u^{deg x})^{-1} = 1 / ((1 - u)(1 - q u))` modulo `u^{N+1}`.
pub fn euler_product_check(q: PrimePower, order: usize) -> bool {
    euler_product_check_with(q, order, true)
}

/// As [`euler_product_check`]; `include_infinity = false` drops the degree-1
/// factor of `inf` (a negative control that must fail for `N >= 1`).
pub fn euler_product_check_with(q: PrimePower, order: usize, include_infinity: bool) -> bool {
    euler_product_sides(q, order, include_infinity).is_some_and(|(l, r)| l == r)
}

/// Both sides of the Euler-product identity as truncated series.
pub fn euler_product_sides(
    q: PrimePower,
    order: usize,
    include_infinity: bool,
) -> Option<(PowerSeriesInt, PowerSeriesInt)> {
    if order == 0 {
        return None;
    }
    let mut euler = PowerSeriesInt::one(order);
    for n in 1..=order {
        let mut count = BigInt::from(count_monic_irreducibles(q, n));
        if n == 1 && include_infinity {
            count += 1;
        }
        euler = euler.mul(&PowerSeriesInt::inverse_power_of_binomial(n, &count, order));
    }
    let closed =
        PowerSeriesInt::geometric(&BigInt::one(), order).mul(&PowerSeriesInt::geometric(&BigInt::from(q.q()), order));
    Some((euler, closed))
}
