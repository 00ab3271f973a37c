use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ff_poly::{GaloisField, Poly, PrimePower};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceKind {
    /// A monic irreducible polynomial of `F_q[T]`.
    Finite(Poly),
    /// The place `1/T`.
    Infinity,
}

/// A closed point of the projective line over F_q.
///
/// Finite places sort before `inf`, and among themselves by degree, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    q: PrimePower,
    kind: PlaceKind,
}

impl Place {
    pub fn infinity(q: PrimePower) -> Place {
        Place {
            q,
            kind: PlaceKind::Infinity,
        }
    }

    /// The place of a monic irreducible polynomial.
    pub fn finite(f: Poly) -> Result<Place> {
        if !f.is_irreducible()? {
            return Err(Error::Reducible(f.to_string()));
        }
        Ok(Place {
            q: f.order(),
            kind: PlaceKind::Finite(f),
        })
    }

    /// `"inf"` or a polynomial string.
    pub fn parse(s: &str, q: PrimePower) -> Result<Place> {
        if s.trim() == "inf" {
            return Ok(Place::infinity(q));
        }
        let field: Arc<GaloisField> = GaloisField::get(q);
        Place::finite(Poly::parse(s, &field)?)
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn order(&self) -> PrimePower {
        self.q
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self.kind, PlaceKind::Infinity)
    }

    pub fn polynomial(&self) -> Option<&Poly> {
        match &self.kind {
            PlaceKind::Finite(f) => Some(f),
            PlaceKind::Infinity => None,
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.kind {
            PlaceKind::Finite(f) => f.degree().expect("places are nonconstant") as u32,
            PlaceKind::Infinity => 1,
        }
    }

    /// Size of the residue field, `q^deg`.
    pub fn residue_size(&self) -> BigInt {
        BigInt::from(self.q.q()).pow(self.degree())
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(p) => write!(f, "{p}"),
            PlaceKind::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_degrees() {
        let q = PrimePower::new(3).unwrap();
        let inf = Place::parse("inf", q).unwrap();
        assert!(inf.is_infinity());
        assert_eq!(inf.degree(), 1);
        assert_eq!(inf.residue_size(), BigInt::from(3));
        let x = Place::parse("T^2+1", q).unwrap();
        assert_eq!(x.degree(), 2);
        assert_eq!(x.residue_size(), BigInt::from(9));
        assert_eq!(x.to_string(), "T^2+1");
        assert!(matches!(Place::parse("T^2+2", q), Err(Error::Reducible(_))));
        assert!(Place::parse("2*T+1", q).is_err());
    }

    #[test]
    fn infinity_sorts_last() {
        let q = PrimePower::new(2).unwrap();
        let mut v = [
            Place::infinity(q),
            Place::parse("T^2+T+1", q).unwrap(),
            Place::parse("T+1", q).unwrap(),
        ];
        v.sort();
        let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["T+1", "T^2+T+1", "inf"]);
    }
}
