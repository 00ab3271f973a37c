//! Central division algebras over F_q(T) described by their local invariants.

use std::collections::BTreeMap;
use std::fmt;

use super::invariant::Invariant;
use crate::error::{Error, Result};
use crate::ff_poly::PrimePower;
use crate::zeta::{ExactQ, Place};

/// Whether the algebra is required to split at `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraRole {
    /// The base algebra `D`: split at `inf`.
    SplitAtInfinity,
    /// The twisted algebra built from `D` at `o` and `inf`; ramified at `inf`.
    Twisted,
}

/// `d`, the base field size, and the nonzero local invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisionAlgebraSpec {
    d: u32,
    q: PrimePower,
    ramification: BTreeMap<Place, Invariant>,
    role: AlgebraRole,
}

impl DivisionAlgebraSpec {
    /// Collects the invariant map; fails only on a repeated place.
    /// Use [`validate_algebra`] for the mathematical checks.
    pub fn new(d: u32, q: PrimePower, ramification: impl IntoIterator<Item = (Place, Invariant)>) -> Result<Self> {
        Self::with_role(d, q, ramification, AlgebraRole::SplitAtInfinity)
    }

    pub fn with_role(
        d: u32,
        q: PrimePower,
        ramification: impl IntoIterator<Item = (Place, Invariant)>,
        role: AlgebraRole,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (place, inv) in ramification {
            let label = place.to_string();
            if map.insert(place, inv).is_some() {
                return Err(Error::DuplicatePlace(label));
            }
        }
        Ok(DivisionAlgebraSpec {
            d,
            q,
            ramification: map,
            role,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn role(&self) -> AlgebraRole {
        self.role
    }

    pub fn ramification(&self) -> &BTreeMap<Place, Invariant> {
        &self.ramification
    }

    /// `inv_x`, zero off the support.
    pub fn invariant(&self, x: &Place) -> Invariant {
        self.ramification.get(x).copied().unwrap_or(Invariant::SPLIT)
    }

    /// Places in the support, sorted.
    pub fn ramified_places(&self) -> Vec<Place> {
        self.ramification.keys().cloned().collect()
    }

    pub fn is_ramified(&self, x: &Place) -> bool {
        self.ramification.contains_key(x)
    }
}

impl fmt::Display for DivisionAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ramification.iter().map(|(x, inv)| format!("{x}: {inv}")).collect();
        write!(f, "d={} q={} {{{}}}", self.d, self.q, parts.join(", "))
    }
}

/// One reason a [`DivisionAlgebraSpec`] is not a valid configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraIssue {
    ZeroDimension,
    FieldMismatch {
        place: String,
        q: u64,
    },
    SplitPlaceListed(String),
    WrongDenominator {
        place: String,
        invariant: Invariant,
        d: u32,
    },
    InfinityRamified,
    NonzeroSum(Invariant),
    OddRamificationCount(usize),
    EmptyRamification,
}

impl fmt::Display for AlgebraIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraIssue::ZeroDimension => write!(f, "d must be >= 1"),
            AlgebraIssue::FieldMismatch { place, q } => {
                write!(f, "place {place} is not defined over F_{q}")
            }
            AlgebraIssue::SplitPlaceListed(x) => write!(f, "place {x} listed with invariant 0"),
            AlgebraIssue::WrongDenominator { place, invariant, d } => {
                write!(f, "invariant {invariant} at {place} does not have denominator d = {d}")
            }
            AlgebraIssue::InfinityRamified => write!(f, "the algebra must split at inf"),
            AlgebraIssue::NonzeroSum(s) => write!(f, "invariants sum to {s}, not 0 mod 1"),
            AlgebraIssue::OddRamificationCount(n) => {
                write!(f, "d is even but {n} places ramify (must be even)")
            }
            AlgebraIssue::EmptyRamification => {
                write!(f, "d >= 2 needs at least one ramified place")
            }
        }
    }
}

/// Check every condition on the invariants and return the ramification set `R`.
///
/// Besides the defining conditions this checks a consequence of them: for
/// even `d` every invariant `a/d` has odd `a`, so a zero sum needs an even
/// number of ramified places.
pub fn validate_algebra(spec: &DivisionAlgebraSpec) -> std::result::Result<Vec<Place>, Vec<AlgebraIssue>> {
    let mut issues = Vec::new();
    let d = spec.d;
    if d == 0 {
        issues.push(AlgebraIssue::ZeroDimension);
    }
    let mut sum = ExactQ::zero();
    for (x, inv) in &spec.ramification {
        if x.order() != spec.q {
            issues.push(AlgebraIssue::FieldMismatch {
                place: x.to_string(),
                q: spec.q.q(),
            });
        }
        if inv.is_split() {
            issues.push(AlgebraIssue::SplitPlaceListed(x.to_string()));
        } else if inv.denom() != d as u64 {
            issues.push(AlgebraIssue::WrongDenominator {
                place: x.to_string(),
                invariant: *inv,
                d,
            });
        }
        if x.is_infinity() && spec.role == AlgebraRole::SplitAtInfinity {
            issues.push(AlgebraIssue::InfinityRamified);
        }
        sum = sum + inv.to_exact();
    }
    let total = Invariant::from_exact(&sum);
    if !total.is_split() {
        issues.push(AlgebraIssue::NonzeroSum(total));
    }
    let r = spec.ramification.len();
    if d >= 2 && r == 0 {
        issues.push(AlgebraIssue::EmptyRamification);
    }
    if d >= 2 && d.is_multiple_of(2) && r % 2 == 1 {
        issues.push(AlgebraIssue::OddRamificationCount(r));
    }
    if issues.is_empty() {
        Ok(spec.ramified_places())
    } else {
        Err(issues)
    }
}

pub(crate) fn validated(spec: &DivisionAlgebraSpec) -> Result<Vec<Place>> {
    validate_algebra(spec).map_err(|issues| Error::InvalidAlgebra(issues.iter().map(|i| i.to_string()).collect()))
}

/// The algebra with `inv_o = -1/d`, `inv_inf = 1/d`, and the invariants of
/// `spec` elsewhere. It is a division algebra at every place of `R + {o, inf}`.
pub fn dbar_spec(spec: &DivisionAlgebraSpec, o: &Place) -> Result<DivisionAlgebraSpec> {
    validated(spec)?;
    if o.is_infinity() {
        return Err(Error::InvalidConfig("o must be a finite place".into()));
    }
    if spec.is_ramified(o) {
        return Err(Error::InvalidConfig(format!("o = {o} lies in the ramification set")));
    }
    if o.order() != spec.q {
        return Err(Error::FieldMismatch(o.order().q(), spec.q.q()));
    }
    let d = spec.d as u64;
    let mut entries: Vec<(Place, Invariant)> = spec.ramification.iter().map(|(x, i)| (x.clone(), *i)).collect();
    entries.push((o.clone(), Invariant::new(-1, d)));
    entries.push((Place::infinity(spec.q), Invariant::new(1, d)));
    let twisted = DivisionAlgebraSpec::with_role(spec.d, spec.q, entries, AlgebraRole::Twisted)?;
    validated(&twisted)?;
    Ok(twisted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn spec(q: u64, d: u32, entries: &[(&str, &str)]) -> DivisionAlgebraSpec {
        DivisionAlgebraSpec::new(
            d,
            pp(q),
            entries
                .iter()
                .map(|(p, inv)| (Place::parse(p, pp(q)).unwrap(), inv.parse().unwrap())),
        )
        .unwrap()
    }

    fn labels(v: &[Place]) -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn validation_examples() {
        let r = validate_algebra(&spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")])).unwrap();
        assert_eq!(labels(&r), ["T", "T+1"]);
        let r = validate_algebra(&spec(5, 3, &[("T", "1/3"), ("T+1", "1/3"), ("T+2", "1/3")])).unwrap();
        assert_eq!(r.len(), 3);
        let issues = validate_algebra(&spec(3, 2, &[("T", "1/2")])).unwrap_err();
        assert!(issues.contains(&AlgebraIssue::NonzeroSum(Invariant::new(1, 2))));
        assert!(issues.contains(&AlgebraIssue::OddRamificationCount(1)));
    }

    #[test]
    fn validation_failures() {
        let issues = validate_algebra(&spec(3, 2, &[("inf", "1/2"), ("T", "1/2")])).unwrap_err();
        assert_eq!(issues, vec![AlgebraIssue::InfinityRamified]);
        let issues = validate_algebra(&spec(5, 4, &[("T", "1/2"), ("T+1", "1/2")])).unwrap_err();
        assert_eq!(issues.len(), 2);
        assert!(matches!(issues[0], AlgebraIssue::WrongDenominator { .. }));
        let issues = validate_algebra(&spec(3, 2, &[])).unwrap_err();
        assert_eq!(issues, vec![AlgebraIssue::EmptyRamification]);
        let issues = validate_algebra(&spec(3, 2, &[("T", "0"), ("T+1", "1/2"), ("T+2", "1/2")])).unwrap_err();
        assert_eq!(
            issues,
            vec![
                AlgebraIssue::SplitPlaceListed("T".into()),
                AlgebraIssue::OddRamificationCount(3)
            ]
        );
        assert!(validate_algebra(&spec(2, 1, &[])).is_ok());
    }

    #[test]
    fn duplicate_places_rejected_at_construction() {
        let x = Place::parse("T", pp(3)).unwrap();
        let err = DivisionAlgebraSpec::new(2, pp(3), [(x.clone(), Invariant::new(1, 2)), (x, Invariant::new(1, 2))]);
        assert_eq!(err, Err(Error::DuplicatePlace("T".into())));
    }

    #[test]
    fn dbar_examples() {
        let base = spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")]);
        let o = Place::parse("T+2", pp(3)).unwrap();
        let twisted = dbar_spec(&base, &o).unwrap();
        let got: Vec<String> = twisted.ramification().iter().map(|(x, i)| format!("{x}:{i}")).collect();
        assert_eq!(got, ["T:1/2", "T+1:1/2", "T+2:1/2", "inf:1/2"]);
        assert_eq!(twisted.role(), AlgebraRole::Twisted);

        let base = spec(5, 3, &[("T", "1/3"), ("T+1", "2/3")]);
        let o = Place::parse("T+2", pp(5)).unwrap();
        let got: Vec<String> = dbar_spec(&base, &o)
            .unwrap()
            .ramification()
            .iter()
            .map(|(x, i)| format!("{x}:{i}"))
            .collect();
        assert_eq!(got, ["T:1/3", "T+1:2/3", "T+2:2/3", "inf:1/3"]);

        let base = spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")]);
        assert!(dbar_spec(&base, &Place::parse("T", pp(3)).unwrap()).is_err());
        assert!(dbar_spec(&base, &Place::infinity(pp(3))).is_err());
    }
}
