use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{validated, DivisionAlgebraSpec, Fibre, FibrePoint, Invariant, TypeData};
use crate::error::{Error, Result};
use crate::ff_poly::{GaloisField, Poly, PrimePower};
use crate::zeta::{ExactQ, Place};

pub const DEFAULT_MAX_PER_DEGREE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A ramified place, either bare (invariant `1/d`) or with its invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RamificationEntry {
    Place(String),
    WithInvariant { place: String, inv: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub local_degree: u32,
    /// `v(Pi~)` as a rational string.
    pub v: String,
    #[serde(default)]
    pub o_tilde: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreConfig {
    pub place: String,
    pub points: Vec<PointConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeDataConfig {
    pub ext_degree: u32,
    pub infinity_residue_degree: u32,
    #[serde(default)]
    pub o_residue_degree: Option<u32>,
    pub fibres: Vec<FibreConfig>,
}

/// Everything a CLI run needs, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub q: u64,
    pub d: u32,
    #[serde(default)]
    pub ramification: Vec<RamificationEntry>,
    pub o: String,
    #[serde(default)]
    pub level_degrees: Vec<usize>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default = "default_max_per_degree")]
    pub max_per_degree: usize,
    #[serde(default, rename = "type")]
    pub type_data: Option<TypeDataConfig>,
}

fn default_max_per_degree() -> usize {
    DEFAULT_MAX_PER_DEGREE
}

impl RunConfig {
    pub fn new(q: u64, d: u32, ramification: &[&str], o: &str, level_degrees: &[usize]) -> RunConfig {
        RunConfig {
            q,
            d,
            ramification: ramification
                .iter()
                .map(|s| RamificationEntry::Place(s.to_string()))
                .collect(),
            o: o.to_string(),
            level_degrees: level_degrees.to_vec(),
            format: OutputFormat::Csv,
            out: None,
            max_per_degree: DEFAULT_MAX_PER_DEGREE,
            type_data: None,
        }
    }

    pub fn from_json(text: &str) -> Result<RunConfig> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            input: "config".into(),
            reason: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        RunConfig::from_json(&text)
    }

    pub fn prime_power(&self) -> Result<PrimePower> {
        PrimePower::new(self.q)
    }

    pub fn place(&self, s: &str) -> Result<Place> {
        Place::parse(s, self.prime_power()?)
    }

    pub fn poly(&self, s: &str) -> Result<Poly> {
        Poly::parse(s, &GaloisField::for_q(self.q)?)
    }

    /// The algebra described by the config; fully validated.
    pub fn spec(&self) -> Result<DivisionAlgebraSpec> {
        if self.d == 0 {
            return Err(Error::InvalidConfig("d must be >= 1".into()));
        }
        let mut entries = Vec::new();
        for entry in &self.ramification {
            let (place, inv) = match entry {
                RamificationEntry::Place(p) => (p.as_str(), Invariant::new(1, self.d as u64)),
                RamificationEntry::WithInvariant { place, inv } => (place.as_str(), inv.parse()?),
            };
            entries.push((self.place(place)?, inv));
        }
        let spec = DivisionAlgebraSpec::new(self.d, self.prime_power()?, entries)?;
        validated(&spec)?;
        Ok(spec)
    }

    /// `o`, which must be a finite place outside `R`.
    pub fn o_place(&self, spec: &DivisionAlgebraSpec) -> Result<Place> {
        let o = self
            .place(&self.o)
            .map_err(|e| Error::InvalidConfig(format!("o = {:?} unavailable: {e}", self.o)))?;
        if o.is_infinity() || spec.is_ramified(&o) {
            return Err(Error::InvalidConfig(format!(
                "o = {o} must be a finite place outside R"
            )));
        }
        Ok(o)
    }

    /// `R + {inf, o}`.
    pub fn excluded(&self, spec: &DivisionAlgebraSpec, o: &Place) -> BTreeSet<Place> {
        crate::counts::ModuliConfig::required_exclusions(spec, o)
    }

    pub fn type_data(&self) -> Result<TypeData> {
        let cfg = self
            .type_data
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("config has no \"type\" section".into()))?;
        let mut fibres = Vec::new();
        for fibre in &cfg.fibres {
            let mut points = Vec::new();
            for pt in &fibre.points {
                points.push(FibrePoint {
                    local_degree: pt.local_degree,
                    v_pi: pt.v.parse::<ExactQ>()?,
                    marked_o: pt.o_tilde,
                });
            }
            fibres.push(Fibre {
                place: self.place(&fibre.place)?,
                points,
            });
        }
        Ok(TypeData {
            ext_degree: cfg.ext_degree,
            fibres,
            infinity_residue_degree: cfg.infinity_residue_degree,
            o_residue_degree: cfg.o_residue_degree,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_ramification_forms() {
        let cfg = RunConfig::from_json(
            r#"{"q": 2, "d": 3, "ramification": [{"place": "T", "inv": "1/3"}, {"place": "T+1", "inv": "2/3"}],
                "o": "T^2+T+1", "level_degrees": [5], "format": "json"}"#,
        )
        .unwrap();
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.max_per_degree, 3);
        let spec = cfg.spec().unwrap();
        assert_eq!(spec.ramified_places().len(), 2);
        assert_eq!(cfg.o_place(&spec).unwrap().degree(), 2);

        let cfg = RunConfig::new(3, 2, &["T", "T+1"], "T+2", &[3]);
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), cfg);
        assert!(cfg.spec().is_ok());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(RunConfig::from_json(r#"{"q": 3, "d": 2, "o": "T", "bogus": 1}"#).is_err());
        let cfg = RunConfig::new(3, 2, &["T"], "T+2", &[3]);
        assert!(matches!(cfg.spec(), Err(Error::InvalidAlgebra(_))));
        let cfg = RunConfig::new(2, 2, &["T", "T+1"], "T+2", &[3]);
        let spec = cfg.spec().unwrap();
        assert!(cfg.o_place(&spec).is_err());
    }

    #[test]
    fn type_section() {
        let cfg = RunConfig::from_json(
            r#"{"q": 3, "d": 2, "ramification": ["T", "T+1"], "o": "T+2",
                "type": {"ext_degree": 1, "infinity_residue_degree": 1,
                         "fibres": [{"place": "inf", "points": [{"local_degree": 1, "v": "-1/2"}]},
                                    {"place": "T+2", "points": [{"local_degree": 1, "v": "1/2", "o_tilde": true}]},
                                    {"place": "T", "points": [{"local_degree": 1, "v": "0"}]},
                                    {"place": "T+1", "points": [{"local_degree": 1, "v": "0"}]}]}}"#,
        )
        .unwrap();
        let spec = cfg.spec().unwrap();
        let o = cfg.o_place(&spec).unwrap();
        let report = crate::algebra::validate_type(&cfg.type_data().unwrap(), &spec, &o).unwrap();
        assert_eq!(report.h, 2);
    }
}
