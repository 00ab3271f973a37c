//! Closed-form counts: group orders, volumes, supersingular points,
//! asymptotic Betti sums and the bounds they are compared with.
//!
//! Sign of the zeta products: `zeta_F^S(-i)` has sign `(-1)^{|S|}` because
//! `zeta_F(-i) > 0` and each removed factor `1 - q_x^i` is negative. Over
//! `i = 1..d-1` the product has sign `(-1)^{|S|(d-1)}`, which is `+1` for odd
//! `d`, and for even `d` because `|R|` is then even. Hence supersingular
//! counts are positive; a nonpositive value is reported as a hard error.
//!
//! The covering `M -> M-bar` is taken to have degree equal to the index
//! `(q^{deg p} - 1)/(q - 1)` of `F_q^x` in `(A/p)^x`, the number of
//! geometric components; this is the reading under which the two
//! asymptotic formulas agree.
//!
//! All `h` values are asymptotic in the level degree, not exact Betti sums
//! of a particular variety. Likewise the supersingular count is the number
//! of rational points only for levels of large enough degree; no explicit
//! threshold is known.

mod betti;
mod config;
mod quad;

pub use betti::{betti_vector, wd_bound, BettiVector};
pub use config::ModuliConfig;
pub use quad::QuadExact;

use num_bigint::BigInt;
use num_traits::One;

use crate::admissible::quotient_order;
use crate::algebra::{validated, DivisionAlgebraSpec};
use crate::error::{Error, Result};
use crate::ff_poly::{Poly, PrimePower};
use crate::zeta::{zeta_partial_neg, ExactQ, Place};

/// `#GL_d(F_Q) = prod_{i<d} (Q^d - Q^i)`.
pub fn gl_order(d: u32, big_q: &BigInt) -> BigInt {
    let qd = big_q.pow(d);
    (0..d).map(|i| &qd - big_q.pow(i)).product()
}

/// `#PGL_d(F_Q) = #GL_d(F_Q) / (Q - 1)`.
pub fn pgl_order(d: u32, big_q: &BigInt) -> BigInt {
    gl_order(d, big_q) / (big_q - 1u32)
}

/// Geometric components at level `p`: `(q^{deg p} - 1)/(q - 1)`.
pub fn component_count(q: PrimePower, p: &Poly) -> Result<BigInt> {
    let n = crate::ff_poly::require_monic_nonconstant(p)?;
    if p.order() != q {
        return Err(Error::FieldMismatch(p.order().q(), q.q()));
    }
    Ok(quotient_order(q, n).into())
}

fn zeta_product(q: PrimePower, places: &[Place], d: u32) -> Result<ExactQ> {
    (1..d as i64).map(|i| zeta_partial_neg(q, places, i)).product()
}

/// `Vol(G(F)\G^1(A)) = (1/(q-1)) prod_{i=1}^{d-1} zeta_F^R(-i)`.
pub fn volume_g1(spec: &DivisionAlgebraSpec) -> Result<ExactQ> {
    let r = validated(spec)?;
    let q = spec.q();
    Ok(zeta_product(q, &r, spec.d())? / ExactQ::from_int(q.q() - 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularCount {
    pub value: ExactQ,
    /// False when the formula produced a non-integer: the level is one of
    /// the finitely many exceptions.
    pub is_integral: bool,
}

impl SupersingularCount {
    pub fn integer(&self) -> Option<BigInt> {
        self.value.to_integer()
    }
}

/// `#PGL_d(F_p) prod_{i=1}^{d-1} zeta_F^S(-i)` with `S = R + {inf, o}`.
pub fn supersingular_count(cfg: &ModuliConfig) -> Result<SupersingularCount> {
    let mut s = cfg.spec().ramified_places();
    s.push(Place::infinity(cfg.q()));
    s.push(cfg.o().clone());
    let value = ExactQ::from_int(pgl_order(cfg.d(), &cfg.level_size())) * zeta_product(cfg.q(), &s, cfg.d())?;
    if !value.is_positive() {
        return Err(Error::Invariant(format!(
            "supersingular count {value} is not positive for {}",
            cfg.spec()
        )));
    }
    let is_integral = value.is_integer();
    Ok(SupersingularCount { value, is_integral })
}

/// Asymptotic total Betti number.
///
/// barred: `(-1)^{d-1} d #PGL_d(F_p) prod zeta_F^{R+inf}(-i)`, for one
/// component. Unbarred: `(-1)^{d-1} d (#GL_d(A/p)/(q-1)) prod zeta_F^{R+inf}(-i)`.
pub fn asymptotic_h(cfg: &ModuliConfig, barred: bool) -> Result<ExactQ> {
    let mut s = cfg.spec().ramified_places();
    s.push(Place::infinity(cfg.q()));
    let d = cfg.d();
    let group = if barred {
        ExactQ::from_int(pgl_order(d, &cfg.level_size()))
    } else {
        ExactQ::new(gl_order(d, &cfg.level_size()), cfg.q().q() - 1)
    };
    let sign = if d % 2 == 1 { 1 } else { -1 };
    let value = ExactQ::from_int(sign * d as i64) * group * zeta_product(cfg.q(), &s, d)?;
    if !value.is_positive() {
        return Err(Error::Invariant(format!("asymptotic h = {value} is not positive")));
    }
    Ok(value)
}

/// `(1/d) prod_{i=1}^{d-1} (q_o^i - 1)`.
pub fn limit_ratio(d: u32, q_o: &BigInt) -> ExactQ {
    let prod: BigInt = (1..d).map(|i| q_o.pow(i) - 1u32).product();
    ExactQ::new(prod, d)
}

/// `q_o^{d(d-1)/2}`.
pub fn wd_limit(d: u32, q_o: &BigInt) -> BigInt {
    q_o.pow(d * (d - 1) / 2)
}

/// `(q^{n/2} - 1)/2`.
pub fn dv_bound(q: &BigInt, n: u32) -> QuadExact {
    let half = ExactQ::new(1, 2);
    let (a, b) = if n.is_multiple_of(2) {
        (ExactQ::from_int(q.pow(n / 2) - BigInt::one()) * &half, ExactQ::zero())
    } else {
        (-half.clone(), ExactQ::from_int(q.pow(n / 2)) * &half)
    };
    QuadExact::new(a, b, q.clone())
}

/// Supersingular count over barred asymptotic `h`; equals
/// `limit_ratio(d, q_o)` for every valid configuration.
pub fn ratio_exact(cfg: &ModuliConfig) -> Result<ExactQ> {
    Ok(supersingular_count(cfg)?.value / asymptotic_h(cfg, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Invariant;
    use crate::ff_poly::GaloisField;

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    fn place(s: &str, q: u64) -> Place {
        Place::parse(s, pp(q)).unwrap()
    }

    fn spec(q: u64, d: u32, entries: &[(&str, &str)]) -> DivisionAlgebraSpec {
        DivisionAlgebraSpec::new(
            d,
            pp(q),
            entries
                .iter()
                .map(|(p, inv)| (place(p, q), inv.parse::<Invariant>().unwrap())),
        )
        .unwrap()
    }

    fn cfg(q: u64, d: u32, entries: &[(&str, &str)], o: &str, p: &str) -> ModuliConfig {
        let prime = Poly::parse(p, &GaloisField::for_q(q).unwrap()).unwrap();
        ModuliConfig::with_prime(spec(q, d, entries), place(o, q), prime).unwrap()
    }

    fn quaternion(p: &str) -> ModuliConfig {
        cfg(3, 2, &[("T", "1/2"), ("T+1", "1/2")], "T+2", p)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, &big(7)), big(6));
        assert_eq!(gl_order(2, &big(2)), big(6));
        assert_eq!(pgl_order(2, &big(2)), big(6));
        assert_eq!(pgl_order(2, &big(27)), big(19656));
        assert_eq!(pgl_order(3, &big(4)) * big(3), gl_order(3, &big(4)));
    }

    #[test]
    fn component_counts() {
        let f3 = GaloisField::for_q(3).unwrap();
        let f2 = GaloisField::for_q(2).unwrap();
        assert_eq!(
            component_count(pp(3), &Poly::parse("T+1", &f3).unwrap()).unwrap(),
            big(1)
        );
        assert_eq!(
            component_count(pp(3), &Poly::parse("T^3+2*T+1", &f3).unwrap()).unwrap(),
            big(13)
        );
        assert_eq!(
            component_count(pp(2), &Poly::parse("T^4+T+1", &f2).unwrap()).unwrap(),
            big(15)
        );
    }

    #[test]
    fn volumes() {
        assert_eq!(
            volume_g1(&spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")])).unwrap(),
            ExactQ::new(1, 8)
        );
        assert_eq!(
            volume_g1(&spec(2, 3, &[("T", "1/3"), ("T+1", "1/3"), ("T^2+T+1", "1/3")])).unwrap(),
            ExactQ::new(45, 7)
        );
        assert!(matches!(volume_g1(&spec(3, 2, &[])), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn worked_instance() {
        let c = quaternion("T^3+2*T+1");
        let ss = supersingular_count(&c).unwrap();
        assert!(ss.is_integral);
        assert_eq!(ss.integer(), Some(big(19656)));
        assert_eq!(asymptotic_h(&c, true).unwrap(), ExactQ::from_int(19656));
        assert_eq!(asymptotic_h(&c, false).unwrap(), ExactQ::from_int(255528));
        assert_eq!(ratio_exact(&c).unwrap(), ExactQ::one());
        assert_eq!(limit_ratio(2, &big(3)), ExactQ::one());

        let c5 = quaternion("T^5+2*T+1");
        assert_eq!(supersingular_count(&c5).unwrap().integer(), Some(big(14348664)));
    }

    #[test]
    fn cubic_over_f2() {
        let r = [("T", "1/3"), ("T+1", "2/3")];
        let c = cfg(2, 3, &r, "T^2+T+1", "T^5+T^2+1");
        assert_eq!(ratio_exact(&c).unwrap(), ExactQ::from_int(15));
        assert_eq!(limit_ratio(3, &big(4)), ExactQ::from_int(15));
        let c = cfg(2, 3, &r, "T^3+T+1", "T^5+T^2+1");
        let ss = supersingular_count(&c).unwrap();
        assert!(ss.value.is_positive());
        assert!(ss.is_integral);
    }

    #[test]
    fn limits() {
        assert_eq!(wd_limit(3, &big(2)), big(8));
        assert_eq!(dv_bound(&big(9), 1).to_rational(), Some(ExactQ::one()));
        assert_eq!(dv_bound(&big(3), 2).to_rational(), Some(ExactQ::one()));
        assert_eq!(dv_bound(&big(3), 3).to_string(), "-1/2+3/2*sqrt(3)");
    }

    #[test]
    fn config_rejections() {
        let f3 = GaloisField::for_q(3).unwrap();
        let s = spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")]);
        let p = Poly::parse("T^3+2*T+1", &f3).unwrap();
        assert!(ModuliConfig::with_prime(s.clone(), place("T", 3), p.clone()).is_err());
        assert!(ModuliConfig::with_prime(s.clone(), place("inf", 3), p.clone()).is_err());
        assert!(ModuliConfig::with_prime(s.clone(), place("T+2", 3), Poly::parse("T+2", &f3).unwrap()).is_err());
        let level = crate::admissible::AdmissibleLevel::new(p, 2, Default::default()).unwrap();
        assert!(ModuliConfig::new(s, place("T+2", 3), level).is_err());
        let trivial = spec(3, 1, &[]);
        assert!(ModuliConfig::with_prime(trivial, place("T", 3), Poly::parse("T+1", &f3).unwrap()).is_err());
    }
}
