//! Finite fields F_q, q = p^e <= 2^20.
//!
//! Elements are stored as a single `u32` index `sum_j c_j p^j`, where
//! `c_0 + c_1 y + ... + c_{e-1} y^{e-1}` is the residue modulo the defining
//! polynomial `m(y)`. For `e > 1`, `m` is the lexicographically smallest monic
//! irreducible of degree `e` over F_p.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Fields this small get full addition and multiplication tables.
const TABLE_LIMIT: u64 = 256;

/// A prime power `q = p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        if q < 2 {
            return Err(Error::NotPrimePower(q));
        }
        let p = smallest_prime_factor(q);
        let (mut rest, mut e) = (q, 0u32);
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Ok(PrimePower { p, e, q })
    }

    pub fn from_parts(p: u64, e: u32) -> Result<Self> {
        if e == 0 || p < 2 || smallest_prime_factor(p) != p {
            return Err(Error::NotPrimePower(p));
        }
        let q = p
            .checked_pow(e)
            .filter(|q| *q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge(u64::MAX))?;
        Ok(PrimePower { p, e, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut k = 3;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return k;
        }
        k += 2;
    }
    n
}

/// An element of F_q, identified by its index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic for one concrete model of F_q.
pub struct GaloisField {
    order: PrimePower,
    /// Coefficients of `m(y)` lowest first, monic, length `e + 1`. Empty for `e = 1`.
    modulus: Vec<u32>,
    add_table: Option<Vec<u32>>,
    mul_table: Option<Vec<u32>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("q", &self.order.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for GaloisField {}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<GaloisField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<GaloisField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl GaloisField {
    /// Shared instance for `q`; built once per process.
    pub fn get(order: PrimePower) -> Arc<GaloisField> {
        if let Some(f) = field_cache().lock().unwrap().get(&order.q) {
            return Arc::clone(f);
        }
        let built = Arc::new(Self::build(order));
        let mut cache = field_cache().lock().unwrap();
        Arc::clone(cache.entry(order.q).or_insert(built))
    }

    pub fn for_q(q: u64) -> Result<Arc<GaloisField>> {
        Ok(Self::get(PrimePower::new(q)?))
    }

    fn build(order: PrimePower) -> GaloisField {
        let modulus = if order.e == 1 {
            Vec::new()
        } else {
            defining_polynomial(order.p, order.e)
        };
        let mut field = GaloisField {
            order,
            modulus,
            add_table: None,
            mul_table: None,
        };
        if order.e > 1 && order.q <= TABLE_LIMIT {
            let q = order.q as u32;
            let mut add = vec![0u32; (q * q) as usize];
            let mut mul = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_digits(a, b);
                    mul[(a * q + b) as usize] = field.mul_digits(a, b);
                }
            }
            field.add_table = Some(add);
            field.mul_table = Some(mul);
        }
        field
    }

    pub fn order(&self) -> PrimePower {
        self.order
    }

    pub fn q(&self) -> u64 {
        self.order.q
    }

    pub fn characteristic(&self) -> u64 {
        self.order.p
    }

    pub fn degree(&self) -> u32 {
        self.order.e
    }

    /// Defining polynomial of the extension, lowest coefficient first (empty when `e = 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.order.e == 1
    }

    /// Build an element from its F_p coordinates (lowest power of `y` first).
    pub fn element(&self, coords: &[u64]) -> Result<FieldElement> {
        let p = self.order.p;
        if coords.len() != self.order.e as usize {
            return Err(Error::Parse {
                input: format!("{coords:?}"),
                reason: format!("expected {} coordinates", self.order.e),
            });
        }
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            if c >= p {
                return Err(Error::Parse {
                    input: format!("{coords:?}"),
                    reason: format!("coordinate {c} not reduced mod {p}"),
                });
            }
            idx = idx * p + c;
        }
        Ok(FieldElement(idx as u32))
    }

    /// F_p coordinates of `a`, lowest power of `y` first; always length `e`.
    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let p = self.order.p;
        let mut v = Vec::with_capacity(self.order.e as usize);
        let mut rest = a.0 as u64;
        for _ in 0..self.order.e {
            v.push(rest % p);
            rest /= p;
        }
        v
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_raw(a.0, b.0))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add_raw(a.0, self.neg_raw(b.0)))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_raw(a.0))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul_raw(a.0, b.0))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order.q - 2))
        }
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        if self.order.e == 1 {
            let s = a as u64 + b as u64;
            let p = self.order.p;
            (if s >= p { s - p } else { s }) as u32
        } else if let Some(t) = &self.add_table {
            t[(a as usize) * self.order.q as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let p = self.order.p;
        if self.order.e == 1 {
            if a == 0 {
                0
            } else {
                (p - a as u64) as u32
            }
        } else {
            let mut rest = a as u64;
            let mut out = 0u64;
            let mut scale = 1u64;
            for _ in 0..self.order.e {
                let c = rest % p;
                rest /= p;
                out += ((p - c) % p) * scale;
                scale *= p;
            }
            out as u32
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.order.e == 1 {
            ((a as u64 * b as u64) % self.order.p) as u32
        } else if let Some(t) = &self.mul_table {
            t[(a as usize) * self.order.q as usize + b as usize]
        } else {
            self.mul_digits(a, b)
        }
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.order.p;
        let (mut x, mut y) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.order.e {
            out += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        out as u32
    }

    fn mul_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.order.p;
        let e = self.order.e as usize;
        let da = self.coords(FieldElement(a));
        let db = self.coords(FieldElement(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, x) in da.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // m is monic: y^e = -(m_0 + ... + m_{e-1} y^{e-1})
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let m = self.modulus[i] as u64;
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m) % p;
            }
        }
        let mut idx = 0u64;
        for &c in prod[..e].iter().rev() {
            idx = idx * p + c;
        }
        idx as u32
    }
}

/// Lexicographically smallest monic irreducible of degree `e` over F_p.
fn defining_polynomial(p: u64, e: u32) -> Vec<u32> {
    let prime = GaloisField::get(PrimePower { p, e: 1, q: p });
    let n = p.pow(e);
    for tail in 0..n {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut rest = tail;
        for _ in 0..e {
            coeffs.push((rest % p) as u32);
            rest /= p;
        }
        coeffs.push(1);
        let f = super::Poly::from_raw(Arc::clone(&prime), coeffs.clone());
        if f.is_irreducible().unwrap_or(false) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_factorisation() {
        let pp = PrimePower::new(81).unwrap();
        assert_eq!((pp.p(), pp.e(), pp.q()), (3, 4, 81));
        assert_eq!(PrimePower::new(12), Err(Error::NotPrimePower(12)));
        assert_eq!(PrimePower::new(1), Err(Error::NotPrimePower(1)));
        assert!(matches!(PrimePower::new((1 << 20) + 7), Err(Error::FieldTooLarge(_))));
        assert!(PrimePower::new(1 << 20).is_ok());
        assert_eq!(PrimePower::from_parts(2, 3).unwrap().q(), 8);
        assert!(PrimePower::from_parts(4, 1).is_err());
    }

    #[test]
    fn defining_polynomials_are_lexicographically_first() {
        assert_eq!(GaloisField::for_q(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::for_q(8).unwrap().modulus(), &[1, 1, 0, 1]);
        // y^2 + 1 over F_3
        assert_eq!(GaloisField::for_q(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27, 49] {
            let f = GaloisField::for_q(q).unwrap();
            for a in 1..q as u32 {
                let a = FieldElement(a);
                let inv = f.inv(a).unwrap();
                assert_eq!(f.mul(a, inv), FieldElement::ONE, "q={q}");
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            }
        }
    }

    #[test]
    fn table_and_digit_arithmetic_agree() {
        let f = GaloisField::for_q(16).unwrap();
        for a in 0..16 {
            for b in 0..16 {
                assert_eq!(f.mul_raw(a, b), f.mul_digits(a, b));
                assert_eq!(f.add_raw(a, b), f.add_digits(a, b));
            }
        }
    }

    #[test]
    fn large_extension_field_without_tables() {
        let f = GaloisField::for_q(1 << 10).unwrap();
        let a = FieldElement(517);
        assert_eq!(f.pow(a, 1023), FieldElement::ONE);
        assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
    }

    #[test]
    fn coordinates_round_trip() {
        let f = GaloisField::for_q(27).unwrap();
        let a = f.element(&[2, 0, 1]).unwrap();
        assert_eq!(a, FieldElement(2 + 9));
        assert_eq!(f.coords(a), vec![2, 0, 1]);
        assert!(f.element(&[3, 0, 0]).is_err());
    }
}
