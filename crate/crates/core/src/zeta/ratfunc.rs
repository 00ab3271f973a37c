//! Rational functions in one variable `u` with rational coefficients.

use std::fmt;

use super::exact::ExactQ;
use crate::error::{Error, Result};

/// Dense polynomial over Q in `u`, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: Vec<ExactQ>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<ExactQ>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn one() -> QPoly {
        QPoly::new(vec![ExactQ::one()])
    }

    /// `1 - c u^k`.
    pub fn one_minus(c: ExactQ, k: usize) -> QPoly {
        let mut coeffs = vec![ExactQ::zero(); k + 1];
        coeffs[0] = ExactQ::one();
        coeffs[k] = &coeffs[k] - &c;
        QPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactQ] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::default();
        }
        let mut out = vec![ExactQ::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, c: &ExactQ) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &ExactQ) -> ExactQ {
        self.coeffs.iter().rev().fold(ExactQ::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::default(), self.clone()));
        }
        let mut quot = vec![ExactQ::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let factor = &rem[k] / &lead;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = &rem[k - dd + i] - &(&factor * b);
            }
            quot[k - dd] = factor;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(lead) => a.scale(&lead.recip()),
            None => a,
        }
    }

    /// Multiplicity of `u = 1` as a root.
    pub fn root_multiplicity_at_one(&self) -> usize {
        let one_minus_u = QPoly::one_minus(ExactQ::one(), 1);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(&ExactQ::one()).is_zero() {
            p = p.div_rem(&one_minus_u).expect("nonzero").0;
            m += 1;
        }
        m
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `numerator / denominator` in lowest terms, denominator normalized to
/// constant term 1 when that term is nonzero (monic otherwise).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunctionQ {
    numerator: QPoly,
    denominator: QPoly,
}

impl RationalFunctionQ {
    pub fn new(numerator: QPoly, denominator: QPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = numerator.gcd(&denominator);
        let g = if g.is_zero() { QPoly::one() } else { g };
        let num = numerator.div_rem(&g)?.0;
        let den = denominator.div_rem(&g)?.0;
        let norm = if den.coeffs[0].is_zero() {
            den.coeffs.last().unwrap().recip()
        } else {
            den.coeffs[0].recip()
        };
        Ok(RationalFunctionQ {
            numerator: num.scale(&norm),
            denominator: den.scale(&norm),
        })
    }

    pub fn one() -> Self {
        RationalFunctionQ {
            numerator: QPoly::one(),
            denominator: QPoly::one(),
        }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &QPoly {
        &self.denominator
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunctionQ::new(
            self.numerator.mul(&other.numerator),
            self.denominator.mul(&other.denominator),
        )
        .expect("product of nonzero denominators")
    }

    /// Order of the pole at `u = 1` (negative for a zero).
    pub fn pole_order_at_one(&self) -> i64 {
        self.denominator.root_multiplicity_at_one() as i64 - self.numerator.root_multiplicity_at_one() as i64
    }

    /// `lim_{u -> 1} (1 - u) R(u)`; requires a simple pole at `u = 1`.
    pub fn residue_at_one(&self) -> Result<ExactQ> {
        let order = self.pole_order_at_one();
        if order != 1 {
            return Err(Error::PoleOrder(format!(
                "expected a simple pole at u = 1, found order {order}"
            )));
        }
        let one_minus_u = QPoly::one_minus(ExactQ::one(), 1);
        let (reduced, rem) = self.denominator.div_rem(&one_minus_u)?;
        debug_assert!(rem.is_zero());
        let one = ExactQ::one();
        Ok(&self.numerator.eval(&one) / &reduced.eval(&one))
    }

    pub fn eval(&self, u: &ExactQ) -> Result<ExactQ> {
        let den = self.denominator.eval(u);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.numerator.eval(u) / &den)
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactQ {
        ExactQ::from_int(n)
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let num = QPoly::one_minus(q(3), 1).mul(&QPoly::one_minus(q(3), 1));
        let den = QPoly::one_minus(q(1), 1)
            .mul(&QPoly::one_minus(q(3), 1))
            .mul(&QPoly::one_minus(q(3), 1))
            .mul(&QPoly::one_minus(q(9), 1));
        let r = RationalFunctionQ::new(num, den).unwrap();
        assert_eq!(r.numerator(), &QPoly::one());
        assert_eq!(
            r.denominator(),
            &QPoly::one_minus(q(1), 1).mul(&QPoly::one_minus(q(9), 1))
        );
        assert_eq!(r.pole_order_at_one(), 1);
        assert_eq!(r.residue_at_one().unwrap(), ExactQ::new(-1, 8));
    }

    #[test]
    fn double_pole_is_reported() {
        let den = QPoly::one_minus(q(1), 1).mul(&QPoly::one_minus(q(1), 1));
        let r = RationalFunctionQ::new(QPoly::one(), den).unwrap();
        assert_eq!(r.pole_order_at_one(), 2);
        assert!(matches!(r.residue_at_one(), Err(Error::PoleOrder(_))));
    }

    #[test]
    fn root_multiplicity() {
        let p = QPoly::one_minus(q(1), 2).mul(&QPoly::one_minus(q(1), 1));
        assert_eq!(p.root_multiplicity_at_one(), 2);
        assert_eq!(QPoly::one_minus(q(2), 1).root_multiplicity_at_one(), 0);
    }
}
