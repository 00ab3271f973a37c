//! Exact rationals used for every zeta value and count.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactQ(BigRational);

impl ExactQ {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactQ {
        ExactQ(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> ExactQ {
        ExactQ(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> ExactQ {
        ExactQ(BigRational::zero())
    }

    pub fn one() -> ExactQ {
        ExactQ(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// `-1`, `0` or `1`.
    pub fn signum(&self) -> i32 {
        if self.0.is_positive() {
            1
        } else if self.0.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn abs(&self) -> ExactQ {
        ExactQ(self.0.abs())
    }

    pub fn recip(&self) -> ExactQ {
        ExactQ(self.0.recip())
    }

    /// The integer value, if the rational is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn pow(&self, exp: i32) -> ExactQ {
        ExactQ(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactQ {
    fn from(r: BigRational) -> Self {
        ExactQ(r)
    }
}

impl From<i64> for ExactQ {
    fn from(n: i64) -> Self {
        ExactQ::from_int(n)
    }
}

impl From<BigInt> for ExactQ {
    fn from(n: BigInt) -> Self {
        ExactQ::from_int(n)
    }
}

/// `num/den`, or just `num` for integers.
impl fmt::Display for ExactQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ExactQ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::Parse {
            input: s.to_string(),
            reason: "expected an integer or num/den".into(),
        };
        let t = s.trim();
        match t.split_once('/') {
            None => Ok(ExactQ::from_int(t.parse::<BigInt>().map_err(|_| err())?)),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                if d.is_zero() {
                    return Err(err());
                }
                Ok(ExactQ::new(n, d))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&ExactQ> for &ExactQ {
            type Output = ExactQ;
            fn $method(self, rhs: &ExactQ) -> ExactQ {
                ExactQ((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<ExactQ> for ExactQ {
            type Output = ExactQ;
            fn $method(self, rhs: ExactQ) -> ExactQ {
                ExactQ(self.0.$method(rhs.0))
            }
        }
        impl $tr<&ExactQ> for ExactQ {
            type Output = ExactQ;
            fn $method(self, rhs: &ExactQ) -> ExactQ {
                ExactQ(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactQ {
    type Output = ExactQ;
    fn neg(self) -> ExactQ {
        ExactQ(-self.0)
    }
}

impl Neg for &ExactQ {
    type Output = ExactQ;
    fn neg(self) -> ExactQ {
        ExactQ(-&self.0)
    }
}

impl std::iter::Product for ExactQ {
    fn product<I: Iterator<Item = ExactQ>>(iter: I) -> ExactQ {
        iter.fold(ExactQ::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_display() {
        let r = ExactQ::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(ExactQ::new(8, 4).to_string(), "2");
        assert_eq!("-3/2".parse::<ExactQ>().unwrap(), r);
        assert_eq!("19656".parse::<ExactQ>().unwrap(), ExactQ::from_int(19656));
        assert!("1/0".parse::<ExactQ>().is_err());
        assert!("a/b".parse::<ExactQ>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = ExactQ::new(1, 3);
        let b = ExactQ::new(-1, 6);
        assert_eq!(&a + &b, ExactQ::new(1, 6));
        assert_eq!(&a * &b, ExactQ::new(-1, 18));
        assert_eq!(&a / &b, ExactQ::from_int(-2));
        assert_eq!(a.pow(-2), ExactQ::from_int(9));
        assert_eq!(b.signum(), -1);
    }
}
