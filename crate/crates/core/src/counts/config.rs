use std::collections::BTreeSet;

use num_bigint::BigInt;

use crate::admissible::AdmissibleLevel;
use crate::algebra::{validated, DivisionAlgebraSpec};
use crate::error::{Error, Result};
use crate::ff_poly::{Poly, PrimePower};
use crate::zeta::Place;

/// `D`, the place `o`, and an admissible level `I = Spec(A/p)` away from
/// `R + {inf, o}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliConfig {
    spec: DivisionAlgebraSpec,
    o: Place,
    level: AdmissibleLevel,
}

impl ModuliConfig {
    pub fn new(spec: DivisionAlgebraSpec, o: Place, level: AdmissibleLevel) -> Result<ModuliConfig> {
        validated(&spec)?;
        if spec.d() < 2 {
            return Err(Error::InvalidConfig("d >= 2 required".into()));
        }
        if o.is_infinity() || spec.is_ramified(&o) {
            return Err(Error::InvalidConfig(format!(
                "o = {o} must be a finite place outside R"
            )));
        }
        if o.order() != spec.q() || level.prime().order() != spec.q() {
            return Err(Error::FieldMismatch(o.order().q(), spec.q().q()));
        }
        if level.d() != spec.d() {
            return Err(Error::InvalidConfig(format!(
                "level built for d = {}, algebra has d = {}",
                level.d(),
                spec.d()
            )));
        }
        for x in Self::required_exclusions(&spec, &o) {
            if !level.excluded().contains(&x) {
                return Err(Error::InvalidConfig(format!("level does not exclude {x}")));
            }
        }
        if o.polynomial() == Some(level.prime()) {
            return Err(Error::InvalidConfig("level coincides with o".into()));
        }
        Ok(ModuliConfig { spec, o, level })
    }

    /// Build the level from a bare prime, excluding exactly `R + {inf, o}`.
    pub fn with_prime(spec: DivisionAlgebraSpec, o: Place, prime: Poly) -> Result<ModuliConfig> {
        let excluded = Self::required_exclusions(&spec, &o);
        let level = AdmissibleLevel::new(prime, spec.d(), excluded)?;
        ModuliConfig::new(spec, o, level)
    }

    pub fn required_exclusions(spec: &DivisionAlgebraSpec, o: &Place) -> BTreeSet<Place> {
        let mut set: BTreeSet<Place> = spec.ramified_places().into_iter().collect();
        set.insert(Place::infinity(spec.q()));
        set.insert(o.clone());
        set
    }

    pub fn spec(&self) -> &DivisionAlgebraSpec {
        &self.spec
    }

    pub fn o(&self) -> &Place {
        &self.o
    }

    pub fn level(&self) -> &AdmissibleLevel {
        &self.level
    }

    pub fn q(&self) -> PrimePower {
        self.spec.q()
    }

    pub fn d(&self) -> u32 {
        self.spec.d()
    }

    /// `q_o = q^{deg o}`.
    pub fn q_o(&self) -> BigInt {
        self.o.residue_size()
    }

    /// `#A/p = q^{deg p}`.
    pub fn level_size(&self) -> BigInt {
        BigInt::from(self.q().q()).pow(self.level.degree() as u32)
    }
}
