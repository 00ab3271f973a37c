//! Irreducibility testing, enumeration and counting of monic irreducibles.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::{smallest_prime_factor, GaloisField, PrimePower};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Default cap on the number of candidates `q^n` scanned by an enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

pub(crate) fn require_monic_nonconstant(f: &Poly) -> Result<usize> {
    match f.degree() {
        Some(n) if n >= 1 && f.is_monic() => Ok(n),
        _ => Err(Error::NotMonicNonConstant(f.to_string())),
    }
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

impl Poly {
    /// Rabin's test: `f` of degree `n` is irreducible iff `T^{q^n} = T mod f`
    /// and `gcd(T^{q^{n/l}} - T, f) = 1` for every prime `l | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = require_monic_nonconstant(self)?;
        if n == 1 {
            return Ok(true);
        }
        let q = self.field().q() as u128;
        let t = Poly::t(Arc::clone(self.field())).rem(self)?;
        let ells = distinct_prime_factors(n as u64);
        // frob[k] = T^{q^k} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(t.clone());
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(q, self)?;
            frob.push(next);
        }
        if frob[n] != t {
            return Ok(false);
        }
        for l in ells {
            let k = n / l as usize;
            let g = frob[k].sub(&t)?.gcd(self)?;
            if g.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn candidate_count(q: PrimePower, n: usize) -> Option<u128> {
    (q.q() as u128).checked_pow(n as u32)
}

/// All monic irreducibles of degree `n` over F_q, in lexicographic order
/// (top coefficient first), scanning at most `cap` candidates.
pub fn enumerate_monic_irreducibles_capped(q: PrimePower, n: usize, cap: u128) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::InvalidConfig("degree must be >= 1".into()));
    }
    let total = candidate_count(q, n).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::BudgetExceeded { requested: total, cap });
    }
    Ok(monic_irreducibles_iter(q, n).collect())
}

/// Lazily scan the monic polynomials of degree `n >= 1` in lexicographic
/// order and yield the irreducible ones. No budget is applied.
pub fn monic_irreducibles_iter(q: PrimePower, n: usize) -> impl Iterator<Item = Poly> {
    assert!(n >= 1, "degree must be >= 1");
    let field = GaloisField::get(q);
    let total = candidate_count(q, n).unwrap_or(u128::MAX);
    (0..total).filter_map(move |tail| {
        let f = Poly::monic_from_index(Arc::clone(&field), n, tail);
        if quick_reject(&f) || !f.is_irreducible().expect("monic nonconstant") {
            None
        } else {
            Some(f)
        }
    })
}

pub fn enumerate_monic_irreducibles(q: PrimePower, n: usize) -> Result<Vec<Poly>> {
    enumerate_monic_irreducibles_capped(q, n, DEFAULT_ENUMERATION_CAP)
}

/// Cheap filters that never reject an irreducible: a zero constant term
/// (divisible by `T`) for degree >= 2.
fn quick_reject(f: &Poly) -> bool {
    f.degree().unwrap_or(0) >= 2 && f.coeff(0).is_zero()
}

pub(crate) fn mobius(n: u64) -> i32 {
    let mut n = n;
    let mut sign = 1;
    while n > 1 {
        let p = smallest_prime_factor(n);
        n /= p;
        if n.is_multiple_of(p) {
            return 0;
        }
        sign = -sign;
    }
    sign
}

/// Number of monic irreducibles of degree `n`: `(1/n) sum_{m | n} mu(m) q^{n/m}`.
pub fn count_monic_irreducibles(q: PrimePower, n: usize) -> BigUint {
    assert!(n >= 1, "degree must be >= 1");
    let qb = BigInt::from(q.q());
    let mut sum = BigInt::zero();
    for m in 1..=n as u64 {
        if !(n as u64).is_multiple_of(m) {
            continue;
        }
        let mu = mobius(m);
        if mu == 0 {
            continue;
        }
        let term = qb.pow((n as u64 / m) as u32);
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quot, rem) = (&sum / BigInt::from(n), &sum % BigInt::from(n));
    debug_assert!(rem.is_zero() && !quot.is_negative());
    quot.to_biguint().expect("necklace count is nonnegative")
}

/// `count_monic_irreducibles` as a machine integer when it fits.
pub fn count_monic_irreducibles_u64(q: PrimePower, n: usize) -> Option<u64> {
    count_monic_irreducibles(q, n).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn strs(v: &[Poly]) -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    fn parse(s: &str, q: u64) -> Poly {
        Poly::parse(s, &GaloisField::for_q(q).unwrap()).unwrap()
    }

    /// Exhaustive factor search: f is reducible iff some monic g with
    /// 1 <= deg g <= deg f / 2 divides it.
    fn irreducible_by_trial_division(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        let field = f.field().clone();
        let q = field.q() as u128;
        for k in 1..=n / 2 {
            for tail in 0..q.pow(k as u32) {
                let g = Poly::monic_from_index(field.clone(), k, tail);
                if f.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_examples() {
        assert!(parse("T^2+T+1", 2).is_irreducible().unwrap());
        assert!(!parse("T^2+1", 2).is_irreducible().unwrap());
        assert!(parse("T^2+1", 3).is_irreducible().unwrap());
        assert!(irreducible_by_trial_division(&parse("T^2+T+1", 2)));
        assert!(irreducible_by_trial_division(&parse("T^2+1", 3)));
    }

    #[test]
    fn irreducibility_rejects_bad_input() {
        assert!(matches!(
            parse("2*T+1", 3).is_irreducible(),
            Err(Error::NotMonicNonConstant(_))
        ));
        assert!(parse("1", 3).is_irreducible().is_err());
        assert!(parse("0", 3).is_irreducible().is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(strs(&enumerate_monic_irreducibles(pp(2), 1).unwrap()), ["T", "T+1"]);
        assert_eq!(strs(&enumerate_monic_irreducibles(pp(2), 2).unwrap()), ["T^2+T+1"]);
        assert_eq!(
            strs(&enumerate_monic_irreducibles(pp(2), 3).unwrap()),
            ["T^3+T+1", "T^3+T^2+1"]
        );
    }

    #[test]
    fn enumeration_budget() {
        let err = enumerate_monic_irreducibles_capped(pp(2), 10, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                requested: 1024,
                cap: 1000
            }
        );
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_monic_irreducibles(pp(2), 4), BigUint::from(3u32));
        assert_eq!(count_monic_irreducibles(pp(3), 1), BigUint::from(3u32));
        assert_eq!(count_monic_irreducibles(pp(2), 6), BigUint::from(9u32));
        assert_eq!(enumerate_monic_irreducibles(pp(2), 4).unwrap().len(), 3);
        assert_eq!(enumerate_monic_irreducibles(pp(2), 6).unwrap().len(), 9);
    }

    #[test]
    fn rabin_matches_trial_division_exhaustively() {
        for q in [2u64, 3] {
            let field = GaloisField::for_q(q).unwrap();
            for n in 1..=5usize {
                for tail in 0..(q as u128).pow(n as u32) {
                    let f = Poly::monic_from_index(field.clone(), n, tail);
                    assert_eq!(f.is_irreducible().unwrap(), irreducible_by_trial_division(&f), "{f}");
                }
            }
        }
    }

    #[test]
    fn extension_field_counts() {
        for n in 1..=3 {
            let listed = enumerate_monic_irreducibles(pp(4), n).unwrap().len();
            assert_eq!(BigUint::from(listed), count_monic_irreducibles(pp(4), n));
        }
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
