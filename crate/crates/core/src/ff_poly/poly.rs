//! Dense univariate polynomials over F_q in the variable `T`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::{FieldElement, GaloisField, PrimePower};
use crate::error::{Error, Result};

/// A polynomial over F_q, coefficients lowest degree first.
///
/// The zero polynomial has no coefficients; otherwise the last coefficient
/// is nonzero.
#[derive(Clone)]
pub struct Poly {
    field: Arc<GaloisField>,
    coeffs: Vec<u32>,
}

impl Poly {
    pub(crate) fn from_raw(field: Arc<GaloisField>, mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn new(field: Arc<GaloisField>, coeffs: Vec<FieldElement>) -> Poly {
        Self::from_raw(field, coeffs.into_iter().map(|c| c.0).collect())
    }

    pub fn zero(field: Arc<GaloisField>) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Arc<GaloisField>) -> Poly {
        Poly { field, coeffs: vec![1] }
    }

    /// The polynomial `T`.
    pub fn t(field: Arc<GaloisField>) -> Poly {
        Poly {
            field,
            coeffs: vec![0, 1],
        }
    }

    pub fn constant(field: Arc<GaloisField>, c: FieldElement) -> Poly {
        Self::from_raw(field, vec![c.0])
    }

    /// `c * T^k`.
    pub fn monomial(field: Arc<GaloisField>, c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c.0;
        Self::from_raw(field, coeffs)
    }

    /// Monic polynomial of degree `n` whose lower coefficients are the base-q
    /// digits of `tail` (T^{n-1} coefficient most significant).
    pub fn monic_from_index(field: Arc<GaloisField>, n: usize, tail: u128) -> Poly {
        let q = field.q() as u128;
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut rest = tail;
        for _ in 0..n {
            coeffs.push((rest % q) as u32);
            rest /= q;
        }
        coeffs.push(1);
        Poly { field, coeffs }
    }

    /// Base-q index of the coefficients below the leading term; inverse of
    /// [`Poly::monic_from_index`] for monic input.
    pub fn tail_index(&self) -> u128 {
        let q = self.field.q() as u128;
        let n = self.coeffs.len().saturating_sub(1);
        self.coeffs[..n].iter().rev().fold(0u128, |acc, &c| acc * q + c as u128)
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn order(&self) -> PrimePower {
        self.field.order()
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&c| FieldElement(c)).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        FieldElement(self.coeffs.get(k).copied().unwrap_or(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        FieldElement(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field.q() != other.field.q() {
            return Err(Error::FieldMismatch(self.field.q(), other.field.q()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly {
            field: Arc::clone(f),
            coeffs: self.coeffs.iter().map(|&c| f.neg_raw(c)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        let f = &self.field;
        Self::from_raw(Arc::clone(f), self.coeffs.iter().map(|&a| f.mul_raw(a, c.0)).collect())
    }

    /// Scale to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    fn add_unchecked(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                f.add_raw(
                    self.coeffs.get(k).copied().unwrap_or(0),
                    other.coeffs.get(k).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::from_raw(Arc::clone(f), coeffs)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(Arc::clone(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add_raw(out[i + j], f.mul_raw(a, b));
            }
        }
        Self::from_raw(Arc::clone(f), out)
    }

    /// Quotient and remainder with `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(Arc::clone(f)), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let factor = f.mul_raw(c, lead_inv.0);
            quot[k - dd] = factor;
            let neg = f.neg_raw(factor);
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.add_raw(rem[k - dd + i], f.mul_raw(neg, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(Arc::clone(f), quot), Self::from_raw(Arc::clone(f), rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, exp: u128, modulus: &Poly) -> Result<Poly> {
        self.check_same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(Arc::clone(&self.field)).rem(modulus)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Value at `x`.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        FieldElement(
            self.coeffs
                .iter()
                .rev()
                .fold(0u32, |acc, &c| f.add_raw(f.mul_raw(acc, x.0), c)),
        )
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.q() == other.field.q() && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q().hash(state);
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    /// Field size, then degree, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .q()
            .cmp(&other.field.q())
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[q={}]({})", self.field.q(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_poly::GaloisField;

    fn f2() -> Arc<GaloisField> {
        GaloisField::for_q(2).unwrap()
    }

    fn p(s: &str, q: u64) -> Poly {
        Poly::parse(s, &GaloisField::for_q(q).unwrap()).unwrap()
    }

    #[test]
    fn gcd_of_t2_plus_t_and_t() {
        assert_eq!(p("T^2+T", 2).gcd(&p("T", 2)).unwrap(), p("T", 2));
    }

    #[test]
    fn freshman_dream_in_characteristic_two() {
        assert_eq!(p("T+1", 2).mul(&p("T+1", 2)).unwrap(), p("T^2+1", 2));
    }

    #[test]
    fn t8_mod_t3_t_1() {
        // T^4 = T^2 + T, so T^8 = T^4 + T^2 = T: the residue ring is F_8 and x^8 = x.
        let m = p("T^3+T+1", 2);
        let t = Poly::t(f2());
        let by_pow = t.pow_mod(8, &m).unwrap();
        let by_div = Poly::monomial(f2(), FieldElement::ONE, 8).rem(&m).unwrap();
        assert_eq!(by_pow, by_div);
        assert_eq!(by_pow, t);
    }

    #[test]
    fn division_identities() {
        let a = p("2*T^5+T^3+4*T+3", 5);
        let b = p("3*T^2+1", 5);
        let (quo, rem) = a.div_rem(&b).unwrap();
        assert!(rem.degree().unwrap_or(0) < 2);
        assert_eq!(quo.mul(&b).unwrap().add(&rem).unwrap(), a);
        assert_eq!(a.rem(&Poly::zero(a.field().clone())), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        assert_eq!(p("T", 2).add(&p("T", 3)), Err(Error::FieldMismatch(2, 3)));
    }

    #[test]
    fn gcd_is_monic() {
        let g = p("2*T^2+2*T", 3).gcd(&p("2*T", 3)).unwrap();
        assert_eq!(g, p("T", 3));
    }

    #[test]
    fn ordering_is_degree_then_top_down() {
        let mut v = [p("T^3+T^2+1", 2), p("T^3+T+1", 2), p("T+1", 2), p("T", 2)];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["T", "T+1", "T^3+T+1", "T^3+T^2+1"]);
    }

    #[test]
    fn monic_index_round_trip() {
        let f = GaloisField::for_q(3).unwrap();
        for idx in 0..27u128 {
            let m = Poly::monic_from_index(f.clone(), 3, idx);
            assert_eq!(m.tail_index(), idx);
        }
    }
}
