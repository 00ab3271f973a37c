use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::zeta::ExactQ;

/// `a + b sqrt(r)` with rational `a`, `b` and a positive integer radicand `r`.
///
/// When `r` is a perfect square the root is folded into `a`, so `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExact {
    a: ExactQ,
    b: ExactQ,
    r: BigInt,
}

fn exact_sqrt(r: &BigInt) -> Option<BigInt> {
    let s = r.sqrt();
    (&s * &s == *r).then_some(s)
}

impl QuadExact {
    pub fn new(a: ExactQ, b: ExactQ, r: impl Into<BigInt>) -> QuadExact {
        let r = r.into();
        assert!(r.is_positive(), "radicand must be positive");
        match exact_sqrt(&r) {
            Some(s) => QuadExact {
                a: a + b * ExactQ::from_int(s),
                b: ExactQ::zero(),
                r,
            },
            None => QuadExact { a, b, r },
        }
    }

    pub fn rational(a: ExactQ, r: impl Into<BigInt>) -> QuadExact {
        QuadExact::new(a, ExactQ::zero(), r)
    }

    pub fn a(&self) -> &ExactQ {
        &self.a
    }

    pub fn b(&self) -> &ExactQ {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<ExactQ> {
        self.is_rational().then(|| self.a.clone())
    }

    fn same_ring(&self, other: &QuadExact) {
        assert_eq!(self.r, other.r, "radicands differ");
    }

    pub fn add(&self, other: &QuadExact) -> QuadExact {
        self.same_ring(other);
        QuadExact {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            r: self.r.clone(),
        }
    }

    pub fn sub(&self, other: &QuadExact) -> QuadExact {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadExact {
        QuadExact {
            a: -&self.a,
            b: -&self.b,
            r: self.r.clone(),
        }
    }

    pub fn mul(&self, other: &QuadExact) -> QuadExact {
        self.same_ring(other);
        let r = ExactQ::from_int(self.r.clone());
        QuadExact {
            a: &self.a * &other.a + &(&self.b * &other.b) * &r,
            b: &self.a * &other.b + &self.b * &other.a,
            r: self.r.clone(),
        }
    }

    pub fn scale(&self, c: &ExactQ) -> QuadExact {
        QuadExact {
            a: &self.a * c,
            b: &self.b * c,
            r: self.r.clone(),
        }
    }

    /// Exact sign: compares `a^2` with `b^2 r` when the terms disagree.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2r = &(&self.b * &self.b) * &ExactQ::from_int(self.r.clone());
        match a2.cmp(&b2r) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> QuadExact {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn cmp_exact(&self, other: &QuadExact) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.r.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
        self.a.to_f64() + self.b.to_f64() * r.sqrt()
    }
}

impl fmt::Display for QuadExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.r)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.r)
        }
    }
}

impl fmt::Debug for QuadExact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactQ {
        ExactQ::new(n, d)
    }

    #[test]
    fn folds_perfect_squares() {
        let x = QuadExact::new(q(-1, 2), q(1, 2), 9);
        assert!(x.is_rational());
        assert_eq!(x.to_rational(), Some(ExactQ::one()));
        assert_eq!(QuadExact::new(q(1, 1), q(2, 1), 3).to_string(), "1+2*sqrt(3)");
    }

    #[test]
    fn ring_operations() {
        let s = QuadExact::new(ExactQ::zero(), ExactQ::one(), 3);
        assert_eq!(s.mul(&s), QuadExact::rational(ExactQ::from_int(3), 3));
        let x = QuadExact::new(q(1, 1), q(1, 1), 2);
        let y = QuadExact::new(q(1, 1), q(-1, 1), 2);
        assert_eq!(x.mul(&y).to_rational(), Some(ExactQ::from_int(-1)));
    }

    #[test]
    fn exact_signs() {
        assert_eq!(QuadExact::new(q(-17, 10), q(1, 1), 3).signum(), 1);
        assert_eq!(QuadExact::new(q(-18, 10), q(1, 1), 3).signum(), -1);
        assert_eq!(QuadExact::new(q(2, 1), q(-1, 1), 3).signum(), 1);
        assert_eq!(QuadExact::new(ExactQ::zero(), ExactQ::zero(), 3).signum(), 0);
        let a = QuadExact::new(ExactQ::zero(), ExactQ::one(), 2);
        let b = QuadExact::rational(q(141, 100), 2);
        assert_eq!(a.cmp_exact(&b), Ordering::Greater);
        assert!((a.to_f64() - 2f64.sqrt()).abs() < 1e-12);
    }
}
