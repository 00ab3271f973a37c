use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::Error;
use crate::zeta::ExactQ;

/// A local Brauer invariant `a/b` taken mod 1, stored in `[0, 1)` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariant {
    num: u64,
    den: u64,
}

impl Invariant {
    pub const SPLIT: Invariant = Invariant { num: 0, den: 1 };

    /// `num/den` reduced mod 1; `den` must be nonzero.
    pub fn new(num: i64, den: u64) -> Invariant {
        assert!(den > 0, "invariant denominator must be positive");
        let a = num.rem_euclid(den as i64) as u64;
        let g = a.gcd(&den);
        if a == 0 {
            Invariant::SPLIT
        } else {
            Invariant {
                num: a / g,
                den: den / g,
            }
        }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn is_split(&self) -> bool {
        self.num == 0
    }

    pub fn to_exact(&self) -> ExactQ {
        ExactQ::new(self.num, self.den)
    }

    /// Reduce an arbitrary rational mod 1.
    pub fn from_exact(r: &ExactQ) -> Invariant {
        let den = r.denom().clone();
        let num = r.numer().mod_floor(&den);
        let den: u64 = den.try_into().expect("invariant denominator fits in u64");
        let num: u64 = num.try_into().expect("reduced numerator fits in u64");
        Invariant::new(num as i64, den)
    }

    pub fn add(&self, other: &Invariant) -> Invariant {
        Invariant::from_exact(&(self.to_exact() + other.to_exact()))
    }

    pub fn neg(&self) -> Invariant {
        Invariant::new(-(self.num as i64), self.den)
    }

    /// `k * self` mod 1.
    pub fn scale(&self, k: u64) -> Invariant {
        Invariant::new(((self.num as u128 * k as u128) % self.den as u128) as i64, self.den)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Invariant {
    type Err = Error;

    /// Accepts any rational (`"1/2"`, `"-1/3"`, `"0"`) and reduces it mod 1.
    fn from_str(s: &str) -> Result<Self, Error> {
        let r: ExactQ = s.parse()?;
        Ok(Invariant::from_exact(&r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_range() {
        assert_eq!(Invariant::new(-1, 3), Invariant::new(2, 3));
        assert_eq!(Invariant::new(4, 6).to_string(), "2/3");
        assert_eq!(Invariant::new(3, 3), Invariant::SPLIT);
        assert_eq!("-1/2".parse::<Invariant>().unwrap(), Invariant::new(1, 2));
        assert_eq!("5/4".parse::<Invariant>().unwrap().to_string(), "1/4");
        assert_eq!("0".parse::<Invariant>().unwrap().denom(), 1);
    }

    #[test]
    fn group_operations() {
        let a = Invariant::new(1, 3);
        assert_eq!(a.add(&Invariant::new(2, 3)), Invariant::SPLIT);
        assert_eq!(a.neg(), Invariant::new(2, 3));
        assert_eq!(a.scale(3), Invariant::SPLIT);
        assert_eq!(Invariant::new(1, 4).scale(2), Invariant::new(1, 2));
    }
}
