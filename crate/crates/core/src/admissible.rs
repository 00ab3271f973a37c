//! Admissible primes: monic irreducibles `p` for which `x -> x^d` is an
//! automorphism of `(A/p)^x / F_q^x`.
//!
//! `(A/p)^x` is cyclic of order `q^n - 1` (`n = deg p`), so the quotient by
//! `F_q^x` is cyclic of order `(q^n - 1)/(q - 1)`. On a finite cyclic group
//! the `d`-th power map is bijective exactly when `d` is coprime to the
//! order. Admissibility therefore depends only on `(q, n, d)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::ff_poly::{
    count_monic_irreducibles, enumerate_monic_irreducibles, monic_irreducibles_iter, require_monic_nonconstant, Poly,
    PrimePower, DEFAULT_ENUMERATION_CAP,
};
use crate::zeta::Place;

/// `(q^n - 1)/(q - 1) = 1 + q + ... + q^{n-1}`.
pub fn quotient_order(q: PrimePower, n: usize) -> BigUint {
    let qb = BigUint::from(q.q());
    let mut acc = BigUint::from(0u32);
    let mut power = BigUint::one();
    for _ in 0..n {
        acc += &power;
        power *= &qb;
    }
    acc
}

/// `gcd(d, (q^n - 1)/(q - 1)) = 1`.
pub fn is_admissible_degree(q: PrimePower, n: usize, d: u32) -> bool {
    quotient_order(q, n).gcd(&BigUint::from(d)).is_one()
}

fn check_d(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidConfig("d must be >= 1".into()));
    }
    Ok(())
}

pub fn is_admissible_prime(p: &Poly, d: u32) -> Result<bool> {
    check_d(d)?;
    let n = require_monic_nonconstant(p)?;
    if !p.is_irreducible()? {
        return Err(Error::Reducible(p.to_string()));
    }
    Ok(is_admissible_degree(p.order(), n, d))
}

fn is_excluded(p: &Poly, excluded: &BTreeSet<Place>) -> bool {
    excluded.iter().any(|x| x.polynomial() == Some(p))
}

/// Admissible primes of degree `<= max_deg` outside `excluded`, sorted by
/// degree and then lexicographically. Degrees failing the gcd test are
/// skipped without enumeration; the others count against the budget.
pub fn enumerate_admissible(q: PrimePower, d: u32, max_deg: usize, excluded: &BTreeSet<Place>) -> Result<Vec<Poly>> {
    check_d(d)?;
    let degrees: Vec<usize> = (1..=max_deg).filter(|&n| is_admissible_degree(q, n, d)).collect();
    let requested = degrees
        .iter()
        .map(|&n| (q.q() as u128).checked_pow(n as u32).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if requested > DEFAULT_ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            requested,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let mut out = Vec::new();
    for n in degrees {
        out.extend(
            enumerate_monic_irreducibles(q, n)?
                .into_iter()
                .filter(|p| !is_excluded(p, excluded)),
        );
    }
    Ok(out)
}

/// The lexicographically first `limit` admissible primes of degree exactly
/// `n` outside `excluded`. The scan stops as soon as `limit` are found.
pub fn first_admissible_of_degree(
    q: PrimePower,
    d: u32,
    n: usize,
    excluded: &BTreeSet<Place>,
    limit: usize,
) -> Result<Vec<Poly>> {
    check_d(d)?;
    if n == 0 {
        return Err(Error::InvalidConfig("degree must be >= 1".into()));
    }
    if !is_admissible_degree(q, n, d) {
        return Ok(Vec::new());
    }
    Ok(monic_irreducibles_iter(q, n)
        .filter(|p| !is_excluded(p, excluded))
        .take(limit)
        .collect())
}

/// `(admissible, total)` among the monic irreducibles of degree `n`.
///
/// Only the enumerated degree is covered; nothing is claimed about the
/// distribution of admissible degrees beyond it.
pub fn admissible_density(q: PrimePower, d: u32, n: usize) -> Result<(u64, u64)> {
    check_d(d)?;
    let primes = enumerate_monic_irreducibles(q, n)?;
    let mut admissible = 0u64;
    for p in &primes {
        if is_admissible_prime(p, d)? {
            admissible += 1;
        }
    }
    let total = count_monic_irreducibles(q, n)
        .to_u64()
        .ok_or_else(|| Error::Invariant("irreducible count overflows u64".into()))?;
    if total != primes.len() as u64 {
        return Err(Error::Invariant(format!(
            "enumerated {} irreducibles of degree {n}, necklace count {total}",
            primes.len()
        )));
    }
    Ok((admissible, total))
}

/// A level `I = Spec(A/p)` with `p` admissible and disjoint from `excluded`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleLevel {
    prime: Poly,
    d: u32,
    excluded: BTreeSet<Place>,
}

impl AdmissibleLevel {
    pub fn new(prime: Poly, d: u32, excluded: BTreeSet<Place>) -> Result<AdmissibleLevel> {
        if !is_admissible_prime(&prime, d)? {
            return Err(Error::InvalidConfig(format!(
                "{prime} is not admissible for d = {d}: gcd(d, {}) != 1",
                quotient_order(prime.order(), prime.degree().unwrap_or(0))
            )));
        }
        if is_excluded(&prime, &excluded) {
            return Err(Error::InvalidConfig(format!("level {prime} meets an excluded place")));
        }
        Ok(AdmissibleLevel { prime, d, excluded })
    }

    pub fn prime(&self) -> &Poly {
        &self.prime
    }

    pub fn degree(&self) -> usize {
        self.prime.degree().expect("nonconstant")
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn excluded(&self) -> &BTreeSet<Place> {
        &self.excluded
    }

    pub fn place(&self) -> Place {
        Place::finite(self.prime.clone()).expect("irreducible by construction")
    }
}

impl fmt::Display for AdmissibleLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.prime)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_poly::{brute_force_is_admissible, GaloisField};

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn poly(s: &str, q: u64) -> Poly {
        Poly::parse(s, &GaloisField::for_q(q).unwrap()).unwrap()
    }

    fn places(q: u64, labels: &[&str]) -> BTreeSet<Place> {
        labels.iter().map(|s| Place::parse(s, pp(q)).unwrap()).collect()
    }

    #[test]
    fn prime_examples() {
        for q in [2, 3, 4, 5, 7] {
            for p in enumerate_monic_irreducibles(pp(q), 1).unwrap() {
                for d in 1..6 {
                    assert!(is_admissible_prime(&p, d).unwrap());
                }
            }
        }
        let p = poly("T^2+1", 3);
        assert!(!is_admissible_prime(&p, 2).unwrap());
        assert!(!brute_force_is_admissible(&p, 2).unwrap());
        for n in 1..=4 {
            for p in enumerate_monic_irreducibles(pp(2), n).unwrap() {
                assert!(is_admissible_prime(&p, 2).unwrap());
                assert!(brute_force_is_admissible(&p, 2).unwrap());
            }
        }
    }

    #[test]
    fn prime_errors() {
        assert!(matches!(
            is_admissible_prime(&poly("T^2+T", 3), 2),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            is_admissible_prime(&poly("2*T+1", 3), 2),
            Err(Error::NotMonicNonConstant(_))
        ));
        assert!(is_admissible_prime(&poly("T", 3), 0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let ex = places(3, &["T", "T+1", "T+2", "inf"]);
        let cubics = enumerate_admissible(pp(3), 2, 3, &ex).unwrap();
        assert_eq!(cubics.len(), 8);
        assert!(cubics.iter().all(|p| p.degree() == Some(3)));
        assert!(cubics.windows(2).all(|w| w[0] < w[1]));
        assert!(enumerate_admissible(pp(3), 2, 2, &ex).unwrap().is_empty());

        let got: Vec<String> = enumerate_admissible(pp(2), 3, 2, &places(2, &["inf"]))
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, ["T", "T+1"]);
    }

    #[test]
    fn first_of_degree() {
        let ex = places(3, &["T", "T+1", "T+2", "inf"]);
        let all = enumerate_admissible(pp(3), 2, 3, &ex).unwrap();
        assert_eq!(first_admissible_of_degree(pp(3), 2, 3, &ex, 3).unwrap(), all[..3]);
        assert!(first_admissible_of_degree(pp(3), 2, 4, &ex, 3).unwrap().is_empty());
        assert_eq!(first_admissible_of_degree(pp(3), 2, 13, &ex, 2).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(
            enumerate_admissible(pp(2), 1, 30, &BTreeSet::new()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn density_examples() {
        assert_eq!(admissible_density(pp(3), 2, 2).unwrap(), (0, 3));
        assert_eq!(admissible_density(pp(3), 2, 3).unwrap(), (8, 8));
        assert_eq!(admissible_density(pp(2), 2, 4).unwrap(), (3, 3));
    }

    #[test]
    fn level_construction() {
        let ex = places(3, &["T", "T+1", "T+2", "inf"]);
        let level = AdmissibleLevel::new(poly("T^3+2*T+1", 3), 2, ex.clone()).unwrap();
        assert_eq!(level.degree(), 3);
        assert!(AdmissibleLevel::new(poly("T+1", 3), 2, ex.clone()).is_err());
        assert!(AdmissibleLevel::new(poly("T^2+1", 3), 2, ex).is_err());
    }

    #[test]
    fn quotient_orders() {
        assert_eq!(quotient_order(pp(3), 3), BigUint::from(13u32));
        assert_eq!(quotient_order(pp(2), 4), BigUint::from(15u32));
        assert_eq!(quotient_order(pp(5), 1), BigUint::one());
    }
}
