//! Brute-force admissibility: enumerate `(A/p)^x / F_q^x` class by class and
//! check whether `x -> x^d` hits every class exactly once.
//!
//! This deliberately avoids any structure theory of the group; it is the
//! reference the closed-form criterion in [`crate::admissible`] is tested against.

use std::sync::Arc;

use super::field::{FieldElement, GaloisField};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Largest residue ring `q^{deg p}` the oracle will enumerate.
pub const ORACLE_CAP: u128 = 1_000_000;

/// Arithmetic in `F_q[T]/(f)` on fixed-length coefficient arrays.
struct ResidueRing {
    field: Arc<GaloisField>,
    /// Monic modulus, lowest first, length n + 1.
    modulus: Vec<u32>,
    n: usize,
    p: u64,
    prime: bool,
    /// Inverses of field elements by index, when the field is small.
    inverses: Option<Vec<u32>>,
    tables: Option<SmallTables>,
}

/// Lookup tables for fields with at most `SMALL_FIELD` elements.
struct SmallTables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    /// Row `t` holds `-t * f_i` for `i < n`.
    neg_modulus: Vec<u32>,
}

const SMALL_FIELD: u64 = 256;

impl ResidueRing {
    fn new(f: &Poly) -> ResidueRing {
        let field = Arc::clone(f.field());
        let p = field.characteristic();
        let prime = field.is_prime_field();
        let q = field.q();
        let inverses = (q <= 1 << 16).then(|| {
            (0..q as u32)
                .map(|a| field.inv(FieldElement(a)).map_or(0, |b| b.0))
                .collect()
        });
        let n = f.degree().unwrap();
        let tables = (q <= SMALL_FIELD).then(|| {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            let mut mul = vec![0u32; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = field.add_raw(a as u32, b as u32);
                    mul[a * qs + b] = field.mul_raw(a as u32, b as u32);
                }
            }
            let mut neg_modulus = vec![0u32; qs * n];
            for t in 0..qs {
                let neg = field.neg_raw(t as u32);
                for i in 0..n {
                    neg_modulus[t * n + i] = mul[neg as usize * qs + f.raw()[i] as usize];
                }
            }
            SmallTables {
                q: qs,
                add,
                mul,
                neg_modulus,
            }
        });
        ResidueRing {
            modulus: f.raw().to_vec(),
            n,
            tables,
            field,
            p,
            prime,
            inverses,
        }
    }

    fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32], scratch: &mut [u64]) {
        let n = self.n;
        if self.prime {
            let p = self.p;
            scratch[..2 * n - 1].fill(0);
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                for (j, &y) in b.iter().enumerate() {
                    scratch[i + j] = (scratch[i + j] + x * y as u64) % p;
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = scratch[k] % p;
                if c == 0 {
                    continue;
                }
                let neg = p - c;
                for i in 0..n {
                    scratch[k - n + i] = (scratch[k - n + i] + neg * self.modulus[i] as u64) % p;
                }
            }
            for i in 0..n {
                out[i] = scratch[i] as u32;
            }
        } else {
            let f = &self.field;
            let mut buf = vec![0u32; 2 * n - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    buf[i + j] = f.add_raw(buf[i + j], f.mul_raw(x, y));
                }
            }
            for k in (n..2 * n - 1).rev() {
                let c = buf[k];
                if c == 0 {
                    continue;
                }
                let neg = f.neg_raw(c);
                for i in 0..n {
                    buf[k - n + i] = f.add_raw(buf[k - n + i], f.mul_raw(neg, self.modulus[i]));
                }
            }
            out.copy_from_slice(&buf[..n]);
        }
    }

    /// `x <- x * T mod f`.
    fn shift(&self, x: &mut [u32]) {
        let n = self.n;
        let top = x[n - 1];
        x.copy_within(0..n - 1, 1);
        x[0] = 0;
        if top == 0 {
            return;
        }
        if let Some(t) = &self.tables {
            let row = &t.neg_modulus[top as usize * n..(top as usize + 1) * n];
            for (xi, &m) in x.iter_mut().zip(row) {
                *xi = t.add[*xi as usize * t.q + m as usize];
            }
            return;
        }
        if self.prime {
            let p = self.p;
            let neg = p - top as u64;
            for (xi, &m) in x.iter_mut().zip(&self.modulus[..n]) {
                *xi = ((*xi as u64 + neg * m as u64) % p) as u32;
            }
        } else {
            let f = &self.field;
            let neg = f.neg_raw(top);
            for (xi, &m) in x.iter_mut().zip(&self.modulus[..n]) {
                *xi = f.add_raw(*xi, f.mul_raw(neg, m));
            }
        }
    }

    fn inverse(&self, c: u32) -> u32 {
        match &self.inverses {
            Some(t) => t[c as usize],
            None => self.field.inv(FieldElement(c)).unwrap().0,
        }
    }

    /// Index of the class of `x` (scaled to leading coefficient 1) in `[0, q^n)`.
    fn class_index(&self, x: &[u32]) -> u64 {
        let f = &self.field;
        let top = x.iter().rposition(|&c| c != 0).expect("units are nonzero");
        let inv = self.inverse(x[top]);
        let q = f.q();
        if let Some(t) = &self.tables {
            let row = &t.mul[inv as usize * t.q..(inv as usize + 1) * t.q];
            return x[..=top]
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * q + row[c as usize] as u64);
        }
        if inv == 1 {
            return x[..=top].iter().rev().fold(0u64, |acc, &c| acc * q + c as u64);
        }
        x[..=top]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * q + f.mul_raw(c, inv) as u64)
    }
}

fn test_and_set(bits: &mut [u64], idx: u64) -> bool {
    let (word, bit) = ((idx / 64) as usize, idx % 64);
    let was = bits[word] >> bit & 1 == 1;
    bits[word] |= 1 << bit;
    was
}

/// The same walk over `F_2`, with residues packed into the bits of a `u64`.
/// Every unit is its own class since `F_2^x` is trivial.
fn binary_admissibility(p: &Poly, n: usize, ds: &[u32]) -> Vec<bool> {
    let modulus = p
        .raw()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | (c as u64) << i);
    let top = 1u64 << n;
    let shift = |x: u64| {
        let y = x << 1;
        if y & top != 0 {
            y ^ modulus
        } else {
            y
        }
    };
    let mul = |a: u64, b: u64| {
        let (mut acc, mut a, mut b) = (0u64, a, b);
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a = shift(a);
            b >>= 1;
        }
        acc
    };
    let size = top as usize;
    let words = size.div_ceil(64);
    let mut seen: Vec<Vec<u64>> = ds.iter().map(|_| vec![0u64; words]).collect();
    let mut visited = vec![0u64; words];
    let mut alive = vec![true; ds.len()];
    let mut powers = vec![0u64; ds.len()];
    for start in 1..top {
        if visited[(start / 64) as usize] >> (start % 64) & 1 == 1 {
            continue;
        }
        for (slot, &d) in ds.iter().enumerate() {
            powers[slot] = (0..d).fold(1u64, |acc, _| mul(acc, start));
        }
        let mut x = start;
        loop {
            test_and_set(&mut visited, x);
            for (slot, &d) in ds.iter().enumerate() {
                if !alive[slot] {
                    continue;
                }
                if test_and_set(&mut seen[slot], powers[slot]) {
                    alive[slot] = false;
                    continue;
                }
                for _ in 0..d {
                    powers[slot] = shift(powers[slot]);
                }
            }
            if !alive.iter().any(|a| *a) || n == 1 {
                return alive;
            }
            x = shift(x);
            if x == start {
                break;
            }
        }
    }
    alive
}

/// Enumerate the quotient classes once and report, for each `d` in `ds`,
/// whether `x -> x^d` is a bijection of `(A/p)^x / F_q^x`.
///
/// Classes are visited along orbits of multiplication by `T`: the `d`-th
/// power of `x T` is `x^d T^d`, so each step costs `d` shifts rather than a
/// full product. Every class is still visited and its image recorded.
pub fn brute_force_admissibility(p: &Poly, ds: &[u32]) -> Result<Vec<bool>> {
    let n = super::irreducible::require_monic_nonconstant(p)?;
    let q = p.field().q();
    let size = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > ORACLE_CAP {
        return Err(Error::BudgetExceeded {
            requested: size,
            cap: ORACLE_CAP,
        });
    }
    if !p.is_irreducible()? {
        return Err(Error::Reducible(p.to_string()));
    }
    if ds.contains(&0) {
        return Err(Error::InvalidConfig("exponent d must be >= 1".into()));
    }
    if q == 2 {
        return Ok(binary_admissibility(p, n, ds));
    }
    let ring = ResidueRing::new(p);
    let words = (size as usize).div_ceil(64);
    let mut seen: Vec<Vec<u64>> = ds.iter().map(|_| vec![0u64; words]).collect();
    let mut visited = vec![0u64; words];
    let mut alive: Vec<bool> = vec![true; ds.len()];
    let mut scratch = vec![0u64; 2 * n];
    let mut start = vec![0u32; n];
    let mut x = vec![0u32; n];
    let mut powers = vec![vec![0u32; n]; ds.len()];
    // orbit starts: monic polynomials of degree 0..n-1, one per class
    for k in 0..n {
        for tail in 0..q.pow(k as u32) {
            start.fill(0);
            let mut rest = tail;
            for c in start.iter_mut().take(k) {
                *c = (rest % q) as u32;
                rest /= q;
            }
            start[k] = 1;
            let start_idx = ring.class_index(&start);
            if visited[(start_idx / 64) as usize] >> (start_idx % 64) & 1 == 1 {
                continue;
            }
            x.copy_from_slice(&start);
            for (slot, &d) in ds.iter().enumerate() {
                let mut acc = vec![0u32; n];
                acc[0] = 1;
                for _ in 0..d {
                    let prev = acc.clone();
                    ring.mul(&prev, &x, &mut acc, &mut scratch);
                }
                powers[slot] = acc;
            }
            let mut idx = start_idx;
            loop {
                test_and_set(&mut visited, idx);
                for (slot, &d) in ds.iter().enumerate() {
                    if !alive[slot] {
                        continue;
                    }
                    if test_and_set(&mut seen[slot], ring.class_index(&powers[slot])) {
                        alive[slot] = false;
                        continue;
                    }
                    for _ in 0..d {
                        ring.shift(&mut powers[slot]);
                    }
                }
                if !alive.iter().any(|a| *a) {
                    return Ok(alive);
                }
                // for degree one the quotient is a single class, and T may be zero
                if n == 1 {
                    break;
                }
                ring.shift(&mut x);
                idx = ring.class_index(&x);
                if idx == start_idx {
                    break;
                }
            }
        }
    }
    Ok(alive)
}

/// Whether `x -> x^d` permutes `(A/p)^x / F_q^x`, decided by enumeration.
pub fn brute_force_is_admissible(p: &Poly, d: u32) -> Result<bool> {
    Ok(brute_force_admissibility(p, &[d])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff_poly::PrimePower;

    fn parse(s: &str, q: u64) -> Poly {
        Poly::parse(s, &GaloisField::for_q(q).unwrap()).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert!(brute_force_is_admissible(&parse("T", 3), 2).unwrap());
        assert!(!brute_force_is_admissible(&parse("T^2+1", 3), 2).unwrap());
        assert!(brute_force_is_admissible(&parse("T^3+T+1", 2), 2).unwrap());
    }

    #[test]
    fn identity_map_is_always_bijective() {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=3 {
                for f in crate::ff_poly::enumerate_monic_irreducibles(PrimePower::new(q).unwrap(), n).unwrap() {
                    assert!(brute_force_is_admissible(&f, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn oracle_rejects_bad_input() {
        assert!(matches!(
            brute_force_is_admissible(&parse("T^2+1", 2), 2),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            brute_force_is_admissible(&parse("T^20+T^3+1", 2), 2),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(brute_force_is_admissible(&parse("2*T+1", 3), 2).is_err());
    }

    #[test]
    fn extension_field_ring_arithmetic() {
        // over F_4 the quotient for a degree-2 prime has order (16-1)/3 = 5
        let f = GaloisField::for_q(4).unwrap();
        let primes = crate::ff_poly::enumerate_monic_irreducibles(f.order(), 2).unwrap();
        for p in primes {
            let got = brute_force_admissibility(&p, &[2, 3, 5]).unwrap();
            assert_eq!(got, vec![true, true, false], "{p}");
        }
    }

    #[test]
    fn profile_matches_single_calls() {
        let p = parse("T^4+T+1", 2);
        let ds: Vec<u32> = (1..=8).collect();
        let profile = brute_force_admissibility(&p, &ds).unwrap();
        for (i, &d) in ds.iter().enumerate() {
            assert_eq!(profile[i], brute_force_is_admissible(&p, d).unwrap());
        }
    }
}
