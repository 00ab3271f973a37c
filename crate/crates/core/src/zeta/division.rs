//! The zeta function of a maximal order of a division algebra, as a
//! rational function of `u = q^{-s}`, and the volume read off its residue.

use num_bigint::BigInt;

use super::exact::ExactQ;
use super::ratfunc::{QPoly, RationalFunctionQ};
use crate::algebra::{validate_algebra, DivisionAlgebraSpec};
use crate::error::{Error, Result};

/// `zeta_D(s)` in `u = q^{-s}`:
///
/// `prod_{i<d} zeta_F(s-i) * prod_{x in R} [zeta_x(s) / prod_{i<d} zeta_x(s-i)]`
///
/// with `zeta_F(s-i) = 1/((1 - q^i u)(1 - q^{i+1} u))` and
/// `zeta_x(s-i) = 1/(1 - q_x^i u^{deg x})`. Split places contribute
/// `zeta_x(s)...zeta_x(s-d+1)`, ramified ones only `zeta_x(s)`.
pub fn zeta_division_rational_function(spec: &DivisionAlgebraSpec) -> Result<RationalFunctionQ> {
    let ramified = validate_algebra(spec)
        .map_err(|issues| Error::InvalidAlgebra(issues.iter().map(|i| i.to_string()).collect()))?;
    let q = BigInt::from(spec.q().q());
    let d = spec.d();
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for i in 0..d {
        den = den
            .mul(&QPoly::one_minus(ExactQ::from_int(q.pow(i)), 1))
            .mul(&QPoly::one_minus(ExactQ::from_int(q.pow(i + 1)), 1));
    }
    for x in &ramified {
        let deg = x.degree() as usize;
        let qx = x.residue_size();
        den = den.mul(&QPoly::one_minus(ExactQ::one(), deg));
        for i in 0..d {
            num = num.mul(&QPoly::one_minus(ExactQ::from_int(qx.pow(i)), deg));
        }
    }
    RationalFunctionQ::new(num, den)
}

/// Volume of `G(F) \ G^1(A)` from the residue of `zeta_D` at `s = 0`.
///
/// Near `s = 0`, `1 - u ~ s log q`, so `Res_{s=0} zeta_D = c / log q` with
/// `c = lim_{u->1} (1-u) zeta_D`. The residue also equals `-Vol / log q`,
/// hence `Vol = -c`; no logarithm is ever evaluated.
pub fn volume_residue_oracle(spec: &DivisionAlgebraSpec) -> Result<ExactQ> {
    let zeta = zeta_division_rational_function(spec)?;
    Ok(-zeta.residue_at_one()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Invariant;
    use crate::ff_poly::PrimePower;
    use crate::zeta::Place;

    fn spec(q: u64, d: u32, entries: &[(&str, &str)]) -> DivisionAlgebraSpec {
        let pp = PrimePower::new(q).unwrap();
        DivisionAlgebraSpec::new(
            d,
            pp,
            entries
                .iter()
                .map(|(p, inv)| (Place::parse(p, pp).unwrap(), inv.parse::<Invariant>().unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn trivial_algebra_reduces_to_zeta_f() {
        let s = spec(2, 1, &[]);
        let r = zeta_division_rational_function(&s).unwrap();
        let expected = RationalFunctionQ::new(
            QPoly::one(),
            QPoly::one_minus(ExactQ::one(), 1).mul(&QPoly::one_minus(ExactQ::from_int(2), 1)),
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(volume_residue_oracle(&s).unwrap(), ExactQ::one());
    }

    #[test]
    fn quaternion_algebra_over_f3() {
        let s = spec(3, 2, &[("T", "1/2"), ("T+1", "1/2")]);
        let r = zeta_division_rational_function(&s).unwrap();
        assert_eq!(r.pole_order_at_one(), 1);
        assert_eq!(volume_residue_oracle(&s).unwrap(), ExactQ::new(1, 8));
    }

    #[test]
    fn mixed_degree_cubic_algebra_has_simple_pole() {
        let s = spec(2, 3, &[("T", "1/3"), ("T^2+T+1", "2/3")]);
        assert_eq!(zeta_division_rational_function(&s).unwrap().pole_order_at_one(), 1);
    }

    #[test]
    fn invalid_spec_is_rejected() {
        let pp = PrimePower::new(3).unwrap();
        let bad = DivisionAlgebraSpec::new(
            2,
            pp,
            [(Place::parse("T", pp).unwrap(), "1/2".parse::<Invariant>().unwrap())],
        )
        .unwrap();
        assert!(matches!(
            zeta_division_rational_function(&bad),
            Err(Error::InvalidAlgebra(_))
        ));
    }
}
