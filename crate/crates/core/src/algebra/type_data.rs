//! Validation of `(D, inf, o)`-type data given as abstract local data of the
//! extension `F~/F`, and the invariants of the associated algebra `Delta`.
//!
//! The extension itself is never constructed. Each supplied fibre lists the
//! places `x~ | x` by their local degree `[F~_x~ : F_x]` and the valuation
//! `v_x~(Pi~)`. The condition that `Pi~` lies in no proper subfield of `F~`
//! cannot be decided from this data and is reported as unverified.
//!
//! The divisibility condition on `inv_x(D)` is checked at every place whose
//! fibre is supplied, not only at ramified places. Fibres over every
//! ramified place and over `o` and `inf` are required.

use std::collections::BTreeSet;
use std::fmt;

use super::invariant::Invariant;
use super::spec::{validated, DivisionAlgebraSpec};
use crate::zeta::{ExactQ, Place};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrePoint {
    /// `[F~_x~ : F_x]`.
    pub local_degree: u32,
    /// `v_x~(Pi~)`.
    pub v_pi: ExactQ,
    /// Marks the candidate for `o~`.
    pub marked_o: bool,
}

/// All places of `F~` above one place `x` of `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fibre {
    pub place: Place,
    pub points: Vec<FibrePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeData {
    /// `[F~ : F]`.
    pub ext_degree: u32,
    pub fibres: Vec<Fibre>,
    /// `deg(inf~)` over F_q.
    pub infinity_residue_degree: u32,
    /// `deg(o~)` over F_q, when known.
    pub o_residue_degree: Option<u32>,
}

impl TypeData {
    /// The type with `F~ = F`: `v_inf(Pi) = -1/d`, and `v_o(Pi) = 1/(d deg o)`
    /// so that the divisor of `Pi` has degree zero.
    pub fn supersingular(spec: &DivisionAlgebraSpec, o: &Place) -> TypeData {
        let d = spec.d() as i64;
        let point = |v: ExactQ, marked_o: bool| FibrePoint {
            local_degree: 1,
            v_pi: v,
            marked_o,
        };
        let mut fibres = vec![
            Fibre {
                place: Place::infinity(spec.q()),
                points: vec![point(ExactQ::new(-1, d), false)],
            },
            Fibre {
                place: o.clone(),
                points: vec![point(ExactQ::new(1, d * o.degree() as i64), true)],
            },
        ];
        for x in spec.ramified_places() {
            fibres.push(Fibre {
                place: x,
                points: vec![point(ExactQ::zero(), false)],
            });
        }
        TypeData {
            ext_degree: 1,
            fibres,
            infinity_residue_degree: 1,
            o_residue_degree: Some(o.degree()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaRole {
    InfinityTilde,
    OTilde,
    Other,
}

/// `inv_x~(Delta)` at one supplied place of `F~`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaInvariant {
    pub place: Place,
    /// Position of `x~` within the fibre over `place`.
    pub point: usize,
    pub role: DeltaRole,
    pub invariant: Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeReport {
    /// `h = [F~_o~ : F_o] d / [F~ : F]`.
    pub h: u32,
    pub delta_invariants: Vec<DeltaInvariant>,
    /// The "no proper subfield" condition on `Pi~`; never checkable here.
    pub subfield_condition_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeViolation {
    InvalidAlgebra(String),
    InvalidO(String),
    ZeroExtensionDegree,
    DegreeDoesNotDivide { ext_degree: u32, d: u32 },
    DuplicateFibre(String),
    ForeignPlace(String),
    IncompleteFibre { place: String, sum: u32, ext_degree: u32 },
    MissingFibre(String),
    InfinityNotInert { points: usize },
    InfinityLocalDegree(u32),
    PoleCondition { lhs: ExactQ, rhs: ExactQ },
    ResidueDegree(String),
    ZeroLocalDegree(String),
    OTildeCount(usize),
    OTildeNotOverO(String),
    MarkMismatch,
    Integrality { place: String, value: ExactQ },
    NonIntegralH(ExactQ),
    DeltaSum(Invariant),
}

impl fmt::Display for TypeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TypeViolation::*;
        match self {
            InvalidAlgebra(s) => write!(f, "algebra: {s}"),
            InvalidO(s) => write!(f, "o: {s}"),
            ZeroExtensionDegree => write!(f, "[F~:F] must be >= 1"),
            DegreeDoesNotDivide { ext_degree, d } => write!(f, "[F~:F] = {ext_degree} does not divide d = {d}"),
            DuplicateFibre(x) => write!(f, "fibre over {x} supplied twice"),
            ForeignPlace(x) => write!(f, "place {x} is over a different base field"),
            IncompleteFibre { place, sum, ext_degree } => {
                write!(f, "local degrees over {place} sum to {sum}, expected {ext_degree}")
            }
            MissingFibre(x) => write!(f, "no fibre supplied over {x}"),
            InfinityNotInert { points } => {
                write!(f, "F_inf (x) F~ must be a field, but {points} places lie over inf")
            }
            InfinityLocalDegree(n) => write!(f, "inf~ has local degree {n}, expected [F~:F]"),
            PoleCondition { lhs, rhs } => write!(f, "deg(inf~) v_inf~(Pi~) = {lhs}, expected {rhs}"),
            ResidueDegree(s) => write!(f, "residue degree: {s}"),
            ZeroLocalDegree(x) => write!(f, "zero local degree over {x}"),
            OTildeCount(n) => write!(f, "{n} places other than inf~ have v(Pi~) != 0, expected exactly 1"),
            OTildeNotOverO(x) => write!(f, "the place with v(Pi~) != 0 lies over {x}, not over o"),
            MarkMismatch => write!(f, "the marked o~ is not the unique place with v(Pi~) != 0"),
            Integrality { place, value } => {
                write!(
                    f,
                    "(d [F~_x~:F_x] / [F~:F]) inv_x(D) = {value} is not an integer at {place}"
                )
            }
            NonIntegralH(h) => write!(f, "h = {h} is not a positive integer"),
            DeltaSum(s) => write!(f, "invariants of Delta sum to {s}"),
        }
    }
}

/// Check type data against `spec` and `o`; on success compute `h` and the
/// invariants of `Delta`: `[F~:F]/d` at `inf~`, `-[F~:F]/d` at `o~`,
/// `[F~_x~:F_x] inv_x(D)` elsewhere.
pub fn validate_type(data: &TypeData, spec: &DivisionAlgebraSpec, o: &Place) -> Result<TypeReport, Vec<TypeViolation>> {
    use TypeViolation::*;
    let mut bad = Vec::new();
    if let Err(e) = validated(spec) {
        bad.push(InvalidAlgebra(e.to_string()));
        return Err(bad);
    }
    if o.is_infinity() || spec.is_ramified(o) || o.order() != spec.q() {
        bad.push(InvalidO(format!(
            "{o} must be a finite place of F_{} outside R",
            spec.q()
        )));
        return Err(bad);
    }
    let d = spec.d();
    let ext = data.ext_degree;
    if ext == 0 {
        bad.push(ZeroExtensionDegree);
        return Err(bad);
    }
    if !d.is_multiple_of(ext) {
        bad.push(DegreeDoesNotDivide { ext_degree: ext, d });
    }

    let mut seen = BTreeSet::new();
    for fibre in &data.fibres {
        let label = fibre.place.to_string();
        if fibre.place.order() != spec.q() {
            bad.push(ForeignPlace(label.clone()));
        }
        if !seen.insert(fibre.place.clone()) {
            bad.push(DuplicateFibre(label.clone()));
        }
        if fibre.points.iter().any(|pt| pt.local_degree == 0) {
            bad.push(ZeroLocalDegree(label.clone()));
        }
        let sum: u32 = fibre.points.iter().map(|pt| pt.local_degree).sum();
        if sum != ext {
            bad.push(IncompleteFibre {
                place: label,
                sum,
                ext_degree: ext,
            });
        }
    }
    let required = spec
        .ramified_places()
        .into_iter()
        .chain([o.clone(), Place::infinity(spec.q())]);
    for x in required {
        if !seen.contains(&x) {
            bad.push(MissingFibre(x.to_string()));
        }
    }

    // inf~
    let d_q = ExactQ::from_int(d as i64);
    if let Some(inf) = data.fibres.iter().find(|fb| fb.place.is_infinity()) {
        if inf.points.len() != 1 {
            bad.push(InfinityNotInert {
                points: inf.points.len(),
            });
        } else {
            let pt = &inf.points[0];
            if pt.local_degree != ext {
                bad.push(InfinityLocalDegree(pt.local_degree));
            }
            if data.infinity_residue_degree == 0 || !ext.is_multiple_of(data.infinity_residue_degree) {
                bad.push(ResidueDegree(format!(
                    "deg(inf~) = {} must divide the local degree {ext}",
                    data.infinity_residue_degree
                )));
            }
            let lhs = ExactQ::from_int(data.infinity_residue_degree as i64) * &pt.v_pi;
            let rhs = -(ExactQ::from_int(ext as i64) / &d_q);
            if lhs != rhs {
                bad.push(PoleCondition { lhs, rhs });
            }
        }
    }

    // o~: the unique finite place with nonzero valuation
    let mut nonzero = Vec::new();
    let mut marked = Vec::new();
    for fibre in data.fibres.iter().filter(|fb| !fb.place.is_infinity()) {
        for (k, pt) in fibre.points.iter().enumerate() {
            if !pt.v_pi.is_zero() {
                nonzero.push((fibre, k));
            }
            if pt.marked_o {
                marked.push((fibre, k));
            }
        }
    }
    let mut o_tilde = None;
    if nonzero.len() != 1 {
        bad.push(OTildeCount(nonzero.len()));
    } else {
        let (fibre, k) = nonzero[0];
        if &fibre.place != o {
            bad.push(OTildeNotOverO(fibre.place.to_string()));
        } else if marked.len() > 1 || marked.iter().any(|(fb, j)| &fb.place != o || *j != k) {
            bad.push(MarkMismatch);
        } else {
            o_tilde = Some((fibre, k));
        }
    }
    if let (Some((fibre, k)), Some(deg)) = (o_tilde, data.o_residue_degree) {
        let base = o.degree();
        let local = fibre.points[k].local_degree;
        if deg % base != 0 || local % (deg / base).max(1) != 0 || deg == 0 {
            bad.push(ResidueDegree(format!(
                "deg(o~) = {deg} must be a multiple f deg(o) with f dividing the local degree {local}"
            )));
        }
    }

    // integrality of (d [F~_x~:F_x] / [F~:F]) inv_x(D) at every supplied place
    for fibre in &data.fibres {
        let inv = spec.invariant(&fibre.place).to_exact();
        for pt in &fibre.points {
            let value = ExactQ::new(d as i64 * pt.local_degree as i64, ext as i64) * &inv;
            if !value.is_integer() {
                bad.push(Integrality {
                    place: fibre.place.to_string(),
                    value,
                });
            }
        }
    }

    let Some((o_fibre, o_point)) = o_tilde else {
        return Err(bad);
    };
    let h = ExactQ::new(o_fibre.points[o_point].local_degree as i64 * d as i64, ext as i64);
    if !h.is_integer() || !h.is_positive() {
        bad.push(NonIntegralH(h.clone()));
    }
    if !bad.is_empty() {
        return Err(bad);
    }

    let ratio = ExactQ::new(ext as i64, d as i64);
    let mut delta = Vec::new();
    let mut total = Invariant::SPLIT;
    for fibre in &data.fibres {
        for (k, pt) in fibre.points.iter().enumerate() {
            let (role, invariant) = if fibre.place.is_infinity() {
                (DeltaRole::InfinityTilde, Invariant::from_exact(&ratio))
            } else if &fibre.place == o && k == o_point {
                (DeltaRole::OTilde, Invariant::from_exact(&-&ratio))
            } else {
                (
                    DeltaRole::Other,
                    spec.invariant(&fibre.place).scale(pt.local_degree as u64),
                )
            };
            total = total.add(&invariant);
            delta.push(DeltaInvariant {
                place: fibre.place.clone(),
                point: k,
                role,
                invariant,
            });
        }
    }
    if !total.is_split() {
        return Err(vec![DeltaSum(total)]);
    }
    delta.sort_by(|a, b| (&a.place, a.point).cmp(&(&b.place, b.point)));
    Ok(TypeReport {
        h: h.to_integer()
            .and_then(|v| u32::try_from(v).ok())
            .expect("checked integral"),
        delta_invariants: delta,
        subfield_condition_verified: false,
    })
}
