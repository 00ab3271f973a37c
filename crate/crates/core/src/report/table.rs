//! Convergence tables over levels of increasing degree.
//!
//! The `asymptotic_h` column is the asymptotic total Betti number, not an
//! exact invariant of the variety at that level.

use rayon::prelude::*;
use serde::Serialize;

use super::config::RunConfig;
use super::decimal::format_quad;
use crate::admissible::first_admissible_of_degree;
use crate::counts::{
    asymptotic_h, betti_vector, dv_bound, limit_ratio, supersingular_count, wd_bound, wd_limit, ModuliConfig, QuadExact,
};
use crate::error::{Error, Result};
use crate::ff_poly::Poly;
use crate::zeta::ExactQ;

pub const NONE_ADMISSIBLE: &str = "none admissible";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub level: String,
    pub deg_i: usize,
    pub supersingular_count: Option<String>,
    pub asymptotic_h: Option<String>,
    pub ratio: Option<String>,
    pub limit_ratio: Option<String>,
    pub wd_ratio: Option<String>,
    pub wd_ratio_exact: Option<String>,
    pub wd_limit: Option<String>,
    pub genus_estimate: Option<String>,
    pub dv_limit: Option<String>,
    pub note: String,
}

pub const TABLE_COLUMNS: [&str; 12] = [
    "level",
    "deg_i",
    "supersingular_count",
    "asymptotic_h",
    "ratio",
    "limit_ratio",
    "wd_ratio",
    "wd_ratio_exact",
    "wd_limit",
    "genus_estimate",
    "dv_limit",
    "note",
];

impl TableRow {
    fn none_admissible(deg_i: usize) -> TableRow {
        TableRow {
            level: NONE_ADMISSIBLE.into(),
            deg_i,
            supersingular_count: None,
            asymptotic_h: None,
            ratio: None,
            limit_ratio: None,
            wd_ratio: None,
            wd_ratio_exact: None,
            wd_limit: None,
            genus_estimate: None,
            dv_limit: None,
            note: "no admissible prime of this degree".into(),
        }
    }

    pub fn is_level(&self) -> bool {
        self.level != NONE_ADMISSIBLE
    }

    fn cells(&self) -> Vec<String> {
        let o = |v: &Option<String>| v.clone().unwrap_or_default();
        vec![
            self.level.clone(),
            self.deg_i.to_string(),
            o(&self.supersingular_count),
            o(&self.asymptotic_h),
            o(&self.ratio),
            o(&self.limit_ratio),
            o(&self.wd_ratio),
            o(&self.wd_ratio_exact),
            o(&self.wd_limit),
            o(&self.genus_estimate),
            o(&self.dv_limit),
            self.note.clone(),
        ]
    }
}

/// Exact quantities behind one table row.
#[derive(Debug, Clone)]
pub struct LevelValues {
    pub supersingular: ExactQ,
    pub integral: bool,
    pub h: ExactQ,
    pub ratio: ExactQ,
    pub limit: ExactQ,
    pub wd_ratio: QuadExact,
    pub wd_limit: ExactQ,
}

/// All exact values for one level; fails if the ratio identity or a Betti
/// invariant breaks.
pub fn level_values(cfg: &ModuliConfig) -> Result<LevelValues> {
    let ss = supersingular_count(cfg)?;
    let h = asymptotic_h(cfg, true)?;
    let ratio = &ss.value / &h;
    let q_o = cfg.q_o();
    let limit = limit_ratio(cfg.d(), &q_o);
    if ratio != limit {
        return Err(Error::Invariant(format!(
            "ratio {ratio} != limit {limit} at level {}",
            cfg.level()
        )));
    }
    let h_int = h
        .to_integer()
        .ok_or_else(|| Error::Invariant(format!("asymptotic h = {h} is not an integer")))?;
    let bv = betti_vector(cfg.d(), &h_int)?;
    bv.check()?;
    let wd_ratio = wd_bound(&bv, &q_o, cfg.d()).scale(&h.recip());
    Ok(LevelValues {
        supersingular: ss.value,
        integral: ss.is_integral,
        h,
        ratio,
        limit,
        wd_ratio,
        wd_limit: ExactQ::from_int(wd_limit(cfg.d(), &q_o)),
    })
}

fn level_row(cfg: &ModuliConfig) -> Result<TableRow> {
    let v = level_values(cfg)?;
    let d2 = cfg.d() == 2;
    let genus = d2.then(|| ((&v.h - &ExactQ::from_int(2)) / ExactQ::from_int(2)).to_string());
    let dv = d2.then(|| dv_bound(&cfg.q_o(), 2).to_string());
    Ok(TableRow {
        level: cfg.level().to_string(),
        deg_i: cfg.level().degree(),
        supersingular_count: Some(v.supersingular.to_string()),
        asymptotic_h: Some(v.h.to_string()),
        ratio: Some(v.ratio.to_string()),
        limit_ratio: Some(v.limit.to_string()),
        wd_ratio: Some(format_quad(&v.wd_ratio)),
        wd_ratio_exact: Some(v.wd_ratio.to_string()),
        wd_limit: Some(v.wd_limit.to_string()),
        genus_estimate: genus,
        dv_limit: dv,
        note: if v.integral {
            String::new()
        } else {
            "non-integral count: exceptional level".into()
        },
    })
}

/// Levels per requested degree: the first `max_per_degree` admissible primes,
/// or `None` when the degree has none.
fn select_levels(cfg: &RunConfig) -> Result<Vec<(usize, Option<Poly>)>> {
    let spec = cfg.spec()?;
    let o = cfg.o_place(&spec)?;
    let excluded = cfg.excluded(&spec, &o);
    let mut degrees = cfg.level_degrees.clone();
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.is_empty() {
        return Err(Error::InvalidConfig("no level degrees requested".into()));
    }
    let mut out = Vec::new();
    for n in degrees {
        let primes = first_admissible_of_degree(spec.q(), spec.d(), n, &excluded, cfg.max_per_degree)?;
        if primes.is_empty() {
            out.push((n, None));
        }
        out.extend(primes.into_iter().map(|p| (n, Some(p))));
    }
    if out.iter().all(|(_, p)| p.is_none()) {
        return Err(Error::NoAdmissibleLevels(format!(
            "no admissible primes of degree {:?} for q = {}, d = {}",
            cfg.level_degrees, cfg.q, cfg.d
        )));
    }
    Ok(out)
}

fn moduli_config(cfg: &RunConfig, prime: &Poly) -> Result<ModuliConfig> {
    let spec = cfg.spec()?;
    let o = cfg.o_place(&spec)?;
    ModuliConfig::with_prime(spec, o, prime.clone())
}

/// One row per selected level, sorted by degree and polynomial, with a
/// placeholder row for each requested degree that has no admissible prime.
pub fn build_convergence_table(cfg: &RunConfig) -> Result<Vec<TableRow>> {
    select_levels(cfg)?
        .par_iter()
        .map(|(n, prime)| match prime {
            None => Ok(TableRow::none_admissible(*n)),
            Some(p) => level_row(&moduli_config(cfg, p)?),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRow {
    pub level: String,
    pub deg_i: usize,
    pub points: Option<String>,
    pub asymptotic_h: Option<String>,
    pub genus_estimate: Option<String>,
    pub points_per_genus: Option<String>,
    pub points_per_genus_exact: Option<String>,
    pub dv_limit: Option<String>,
    pub note: String,
}

pub const CURVE_COLUMNS: [&str; 9] = [
    "level",
    "deg_i",
    "points",
    "asymptotic_h",
    "genus_estimate",
    "points_per_genus",
    "points_per_genus_exact",
    "dv_limit",
    "note",
];

impl CurveRow {
    fn cells(&self) -> Vec<String> {
        let o = |v: &Option<String>| v.clone().unwrap_or_default();
        vec![
            self.level.clone(),
            self.deg_i.to_string(),
            o(&self.points),
            o(&self.asymptotic_h),
            o(&self.genus_estimate),
            o(&self.points_per_genus),
            o(&self.points_per_genus_exact),
            o(&self.dv_limit),
            self.note.clone(),
        ]
    }
}

/// Exact points-per-genus ratio for a `d = 2` level with `deg o = 1`.
pub fn points_per_genus(cfg: &ModuliConfig) -> Result<(ExactQ, ExactQ, ExactQ)> {
    let points = supersingular_count(cfg)?.value;
    let h = asymptotic_h(cfg, true)?;
    let genus = (&h - &ExactQ::from_int(2)) / ExactQ::from_int(2);
    if !genus.is_positive() {
        return Err(Error::Invariant(format!("genus estimate {genus} is not positive")));
    }
    let ratio = &points / &genus;
    Ok((points, genus, ratio))
}

/// Curves over `F_{q^2}` from `d = 2` and `deg o = 1`: points over genus
/// against the Drinfeld-Vladut limit `q - 1`.
pub fn optimal_curves_report(cfg: &RunConfig) -> Result<Vec<CurveRow>> {
    if cfg.d != 2 {
        return Err(Error::InvalidConfig(format!(
            "optimal-curves needs d = 2, got {}",
            cfg.d
        )));
    }
    let spec = cfg.spec()?;
    let o = cfg.o_place(&spec)?;
    if o.degree() != 1 {
        return Err(Error::InvalidConfig(format!(
            "optimal-curves needs deg o = 1, got {}",
            o.degree()
        )));
    }
    let dv = (cfg.q - 1).to_string();
    select_levels(cfg)?
        .par_iter()
        .map(|(n, prime)| {
            let Some(p) = prime else {
                return Ok(CurveRow {
                    level: NONE_ADMISSIBLE.into(),
                    deg_i: *n,
                    points: None,
                    asymptotic_h: None,
                    genus_estimate: None,
                    points_per_genus: None,
                    points_per_genus_exact: None,
                    dv_limit: Some(dv.clone()),
                    note: "no admissible prime of this degree".into(),
                });
            };
            let m = moduli_config(cfg, p)?;
            let (points, genus, ratio) = points_per_genus(&m)?;
            Ok(CurveRow {
                level: p.to_string(),
                deg_i: *n,
                points: Some(points.to_string()),
                asymptotic_h: Some(asymptotic_h(&m, true)?.to_string()),
                genus_estimate: Some(genus.to_string()),
                points_per_genus: Some(super::decimal::format_rational(&ratio)),
                points_per_genus_exact: Some(ratio.to_string()),
                dv_limit: Some(dv.clone()),
                note: String::new(),
            })
        })
        .collect()
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv(columns: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = columns.join(",");
    out.push('\n');
    for cells in rows {
        let line: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn table_to_csv(rows: &[TableRow]) -> String {
    csv(&TABLE_COLUMNS, rows.iter().map(TableRow::cells))
}

pub fn curves_to_csv(rows: &[CurveRow]) -> String {
    csv(&CURVE_COLUMNS, rows.iter().map(CurveRow::cells))
}

pub fn to_json<T: Serialize>(rows: &[T]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}
