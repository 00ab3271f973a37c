use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::quad::QuadExact;
use crate::error::{Error, Result};
use crate::zeta::ExactQ;

/// Betti numbers `h^0, ..., h^{2(d-1)}` of a quotient of Drinfeld's
/// symmetric space, determined by `d` and the Steinberg multiplicity `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub dims: Vec<BigInt>,
    pub mu: BigInt,
}

impl BettiVector {
    pub fn d(&self) -> u32 {
        (self.dims.len() as u32).div_ceil(2)
    }

    pub fn total(&self) -> BigInt {
        self.dims.iter().sum()
    }

    /// Checks every structural identity; returns the first that fails.
    pub fn check(&self) -> Result<()> {
        let len = self.dims.len();
        if len.is_multiple_of(2) {
            return Err(Error::Invariant("Betti vector must have odd length 2d-1".into()));
        }
        let d = self.d() as usize;
        if self.dims[0] != BigInt::one() {
            return Err(Error::Invariant("h^0 != 1".into()));
        }
        for i in 0..len {
            if self.dims[i] != self.dims[len - 1 - i] {
                return Err(Error::Invariant(format!("h^{i} != h^{}", len - 1 - i)));
            }
        }
        let expected = BigInt::from(d) * (&self.mu + 1u32);
        if self.total() != expected {
            return Err(Error::Invariant(format!(
                "sum {} != d(mu+1) = {expected}",
                self.total()
            )));
        }
        Ok(())
    }
}

/// `mu = h/d - 1`; `h^{d-1} = d mu + [d odd]`, other even degrees 1, other
/// odd degrees 0.
pub fn betti_vector(d: u32, h_total: &BigInt) -> Result<BettiVector> {
    if d < 2 {
        return Err(Error::InvalidConfig("d must be >= 2".into()));
    }
    let db = BigInt::from(d);
    let (quot, rem) = h_total.div_rem(&db);
    if !rem.is_zero() || h_total < &db {
        return Err(Error::Invariant(format!(
            "h_total = {h_total} must be a positive multiple of d = {d}"
        )));
    }
    let mu = quot - 1u32;
    let mid = (d - 1) as usize;
    let dims = (0..=2 * mid)
        .map(|i| {
            if i == mid {
                &db * &mu + BigInt::from(d % 2)
            } else if i % 2 == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect();
    Ok(BettiVector { dims, mu })
}

/// `WD_n = sum_i q_o^{i n / 2} h^i` in `Z[sqrt(q_o)]`.
pub fn wd_bound(bv: &BettiVector, q_o: &BigInt, n: u32) -> QuadExact {
    assert!(q_o.is_positive(), "q_o must be positive");
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    for (i, h) in bv.dims.iter().enumerate() {
        if h.is_zero() {
            continue;
        }
        let e = i as u32 * n;
        let term = q_o.pow(e / 2) * h;
        if e.is_multiple_of(2) {
            a += term;
        } else {
            b += term;
        }
    }
    QuadExact::new(ExactQ::from_int(a), ExactQ::from_int(b), q_o.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn vector_examples() {
        let bv = betti_vector(2, &BigInt::from(4)).unwrap();
        assert_eq!(bv.dims, ints(&[1, 2, 1]));
        assert_eq!(bv.mu, BigInt::one());
        assert_eq!(betti_vector(3, &BigInt::from(6)).unwrap().dims, ints(&[1, 0, 4, 0, 1]));
        assert_eq!(
            betti_vector(2, &BigInt::from(19656)).unwrap().dims,
            ints(&[1, 19654, 1])
        );
        assert!(betti_vector(2, &BigInt::from(5)).is_err());
        assert!(betti_vector(3, &BigInt::from(0)).is_err());
        assert!(betti_vector(1, &BigInt::from(4)).is_err());
        for d in 2..8 {
            betti_vector(d, &BigInt::from(12 * d)).unwrap().check().unwrap();
        }
    }

    #[test]
    fn wd_examples() {
        let three = BigInt::from(3);
        let bv = betti_vector(2, &BigInt::from(4)).unwrap();
        assert_eq!(wd_bound(&bv, &three, 2).to_rational(), Some(ExactQ::from_int(16)));
        let point = BettiVector {
            dims: ints(&[1]),
            mu: BigInt::zero(),
        };
        assert_eq!(wd_bound(&point, &three, 7).to_rational(), Some(ExactQ::one()));
        let bv = betti_vector(2, &BigInt::from(19656)).unwrap();
        assert_eq!(wd_bound(&bv, &three, 2).to_rational(), Some(ExactQ::from_int(58972)));
        let odd = wd_bound(&betti_vector(2, &BigInt::from(4)).unwrap(), &three, 1);
        assert_eq!(odd.to_string(), "4+2*sqrt(3)");
    }
}
