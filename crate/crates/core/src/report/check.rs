//! The oracle suite behind `check`: every closed form is compared with an
//! independent computation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::{first_admissible_of_degree, is_admissible_degree, is_admissible_prime};
use crate::algebra::{validate_type, DivisionAlgebraSpec, Invariant, TypeData};
use crate::counts::{
    asymptotic_h, betti_vector, component_count, limit_ratio, ratio_exact, supersingular_count, volume_g1, ModuliConfig,
};
use crate::error::{Error, Result};
use crate::ff_poly::{
    brute_force_admissibility, count_monic_irreducibles, enumerate_monic_irreducibles, monic_irreducibles_iter,
    PrimePower,
};
use crate::zeta::{
    euler_product_check, euler_product_check_with, volume_residue_oracle, zeta_partial_neg, ExactQ, Place,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Quick,
    Full,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scale> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "expected quick or full".into(),
            }),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Quick => "quick",
            Scale::Full => "full",
        })
    }
}

/// Parameter grid for one scale.
#[derive(Debug, Clone)]
pub struct CheckGrid {
    pub euler_fields: Vec<u64>,
    pub euler_order: usize,
    pub necklace_fields: Vec<u64>,
    pub necklace_max_degree: usize,
    pub admissibility_fields: Vec<u64>,
    pub admissibility_max_size: u64,
    pub admissibility_ds: Vec<u32>,
    pub random_configs: usize,
}

impl CheckGrid {
    pub fn for_scale(scale: Scale) -> CheckGrid {
        match scale {
            Scale::Quick => CheckGrid {
                euler_fields: vec![2, 3, 4, 5],
                euler_order: 20,
                necklace_fields: vec![2, 3, 4],
                necklace_max_degree: 6,
                admissibility_fields: vec![2, 3, 4, 5],
                admissibility_max_size: 1_000,
                admissibility_ds: (2..=8).collect(),
                random_configs: 30,
            },
            Scale::Full => CheckGrid {
                euler_fields: vec![2, 3, 4, 5, 7, 8, 9],
                euler_order: 30,
                necklace_fields: vec![2, 3, 4, 5, 7],
                necklace_max_degree: 6,
                admissibility_fields: vec![2, 3, 4, 5, 7],
                admissibility_max_size: 10_000,
                admissibility_ds: (2..=8).collect(),
                random_configs: 200,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub scale: Scale,
    pub seed: u64,
    pub fault_injected: bool,
    pub passed: bool,
    pub oracles: Vec<OracleResult>,
}

fn outcome(name: &str, cases: u64, failure: Option<String>) -> OracleResult {
    OracleResult {
        name: name.into(),
        passed: failure.is_none(),
        cases,
        counterexample: failure,
    }
}

fn pp(q: u64) -> PrimePower {
    PrimePower::new(q).expect("grid fields are prime powers")
}

pub fn check_euler(grid: &CheckGrid) -> OracleResult {
    let mut cases = 0;
    for &q in &grid.euler_fields {
        cases += 2;
        if !euler_product_check(pp(q), grid.euler_order) {
            return outcome(
                "euler_product",
                cases,
                Some(format!("q = {q}, N = {}", grid.euler_order)),
            );
        }
        if euler_product_check_with(pp(q), grid.euler_order, false) {
            return outcome(
                "euler_product",
                cases,
                Some(format!("q = {q}: identity held without inf")),
            );
        }
    }
    outcome("euler_product", cases, None)
}

pub fn check_necklace(grid: &CheckGrid) -> OracleResult {
    let mut cases = 0;
    for &q in &grid.necklace_fields {
        for n in 1..=grid.necklace_max_degree {
            cases += 1;
            let listed = match enumerate_monic_irreducibles(pp(q), n) {
                Ok(v) => v.len(),
                Err(e) => return outcome("irreducible_counts", cases, Some(format!("q = {q}, n = {n}: {e}"))),
            };
            let formula = count_monic_irreducibles(pp(q), n);
            if formula != listed.into() {
                return outcome(
                    "irreducible_counts",
                    cases,
                    Some(format!("q = {q}, n = {n}: enumerated {listed}, formula {formula}")),
                );
            }
        }
    }
    outcome("irreducible_counts", cases, None)
}

/// Closed-form admissibility against the group-theoretic brute force for
/// every prime with `q^{deg p} <= max_size`.
pub fn check_admissibility(fields: &[u64], max_size: u64, ds: &[u32]) -> OracleResult {
    let mut cases = 0;
    for &q in fields {
        let mut n = 1;
        while (q as u128).pow(n as u32) <= max_size as u128 {
            for p in monic_irreducibles_iter(pp(q), n) {
                let brute = match brute_force_admissibility(&p, ds) {
                    Ok(v) => v,
                    Err(e) => return outcome("admissibility", cases, Some(format!("{p} over F_{q}: {e}"))),
                };
                for (&d, &b) in ds.iter().zip(&brute) {
                    cases += 1;
                    if is_admissible_prime(&p, d).ok() != Some(b) {
                        return outcome(
                            "admissibility",
                            cases,
                            Some(format!("p = {p} over F_{q}, d = {d}: brute force {b}")),
                        );
                    }
                }
            }
            n += 1;
        }
    }
    outcome("admissibility", cases, None)
}

fn first_places(q: u64, n: usize, count: usize) -> Vec<Place> {
    monic_irreducibles_iter(pp(q), n)
        .take(count)
        .map(|p| Place::finite(p).expect("irreducible"))
        .collect()
}

/// Valid algebras over q in {2, 3, 4}, d in {2, 3, 4}, with up to four
/// ramified places of mixed degrees.
pub fn volume_configs() -> Vec<DivisionAlgebraSpec> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4] {
        for d in [2u32, 3, 4] {
            let deg1 = first_places(q, 1, 2);
            let deg2 = first_places(q, 2, 1);
            let deg3 = first_places(q, 3, 2);
            let inv = |a: i64| Invariant::new(a, d as u64);
            let mut sets: Vec<Vec<(Place, Invariant)>> = vec![
                vec![(deg1[0].clone(), inv(1)), (deg2[0].clone(), inv(-1))],
                vec![
                    (deg1[0].clone(), inv(1)),
                    (deg1[1].clone(), inv(1)),
                    (deg2[0].clone(), inv(-1)),
                    (deg3[0].clone(), inv(-1)),
                ],
            ];
            if d == 3 {
                sets.push(vec![
                    (deg1[1].clone(), inv(1)),
                    (deg2[0].clone(), inv(1)),
                    (deg3[1].clone(), inv(1)),
                ]);
            } else {
                sets.push(vec![(deg2[0].clone(), inv(1)), (deg3[1].clone(), inv(-1))]);
            }
            for set in sets {
                out.push(DivisionAlgebraSpec::new(d, pp(q), set).expect("distinct places"));
            }
        }
    }
    out
}

/// `volume_g1` with the sign of the first zeta factor flipped.
fn faulty_volume(spec: &DivisionAlgebraSpec) -> Result<ExactQ> {
    let r = spec.ramified_places();
    let mut value = -zeta_partial_neg(spec.q(), &r, 1)?;
    for i in 2..spec.d() as i64 {
        value = value * zeta_partial_neg(spec.q(), &r, i)?;
    }
    Ok(value / ExactQ::from_int(spec.q().q() - 1))
}

pub fn check_volume(specs: &[DivisionAlgebraSpec], inject_fault: bool) -> OracleResult {
    let mut cases = 0;
    for spec in specs {
        cases += 1;
        let closed = if inject_fault {
            faulty_volume(spec)
        } else {
            volume_g1(spec)
        };
        let residue = volume_residue_oracle(spec);
        match (closed, residue) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => {
                return outcome(
                    "volume",
                    cases,
                    Some(format!("{spec}: closed form {a:?}, residue {b:?}")),
                );
            }
        }
    }
    outcome("volume", cases, None)
}

/// A random valid configuration: q in {2, 3, 4, 5, 7}, d in {2, 3, 4}, two to
/// four ramified places of degree <= 3, `o` of degree <= 2, and a level of
/// admissible degree <= 6.
pub fn random_config(rng: &mut impl Rng) -> ModuliConfig {
    loop {
        if let Some(cfg) = try_random_config(rng) {
            return cfg;
        }
    }
}

fn try_random_config(rng: &mut impl Rng) -> Option<ModuliConfig> {
    let q = *[2u64, 3, 4, 5, 7].choose(rng)?;
    let d = *[2u32, 3, 4].choose(rng)?;
    let mut pool: Vec<Place> = Vec::new();
    for n in 1..=3 {
        pool.extend(first_places(q, n, 4));
    }
    let r = if d % 2 == 0 {
        *[2usize, 4].choose(rng)?
    } else {
        rng.gen_range(2..=4)
    };
    pool.shuffle(rng);
    let ramified: Vec<Place> = pool.drain(..r).collect();
    let units: Vec<i64> = (1..d as i64).filter(|a| num_integer::gcd(*a, d as i64) == 1).collect();
    let mut invs: Vec<i64> = (0..r - 1).map(|_| *units.choose(rng).unwrap()).collect();
    let last = (-invs.iter().sum::<i64>()).rem_euclid(d as i64);
    if num_integer::gcd(last, d as i64) != 1 {
        return None;
    }
    invs.push(last);
    let spec = DivisionAlgebraSpec::new(
        d,
        pp(q),
        ramified
            .into_iter()
            .zip(invs)
            .map(|(x, a)| (x, Invariant::new(a, d as u64))),
    )
    .ok()?;
    let o = pool.into_iter().find(|x| x.degree() <= 2)?;
    let degrees: Vec<usize> = (1..=6)
        .filter(|&n| is_admissible_degree(pp(q), n, d) && q.pow(n as u32) <= 100_000)
        .collect();
    let n = *degrees.choose(rng)?;
    let excluded = ModuliConfig::required_exclusions(&spec, &o);
    let primes = first_admissible_of_degree(pp(q), d, n, &excluded, 5).ok()?;
    let p = primes.choose(rng)?.clone();
    ModuliConfig::with_prime(spec, o, p).ok()
}

pub fn random_configs(seed: u64, count: usize) -> Vec<ModuliConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_config(&mut rng)).collect()
}

fn identity_failure(cfg: &ModuliConfig) -> Result<Option<String>> {
    let ratio = ratio_exact(cfg)?;
    let limit = limit_ratio(cfg.d(), &cfg.q_o());
    if ratio != limit {
        return Ok(Some(format!("ratio {ratio} != limit {limit}")));
    }
    let barred = asymptotic_h(cfg, true)?;
    let unbarred = asymptotic_h(cfg, false)?;
    let comps = component_count(cfg.q(), cfg.level().prime())?;
    if unbarred != &barred * &ExactQ::from_int(comps.clone()) {
        return Ok(Some(format!("unbarred h {unbarred} != {comps} * {barred}")));
    }
    Ok(None)
}

fn structure_failure(cfg: &ModuliConfig) -> Result<Option<String>> {
    let ss = supersingular_count(cfg)?;
    if !ss.is_integral {
        return Ok(Some(format!("supersingular count {} not integral", ss.value)));
    }
    let h = asymptotic_h(cfg, true)?;
    let Some(h) = h.to_integer() else {
        return Ok(Some(format!("h = {h} not integral")));
    };
    let bv = betti_vector(cfg.d(), &h)?;
    bv.check()?;
    if bv.total() != h {
        return Ok(Some("Betti sum differs from h".into()));
    }
    let report = validate_type(&TypeData::supersingular(cfg.spec(), cfg.o()), cfg.spec(), cfg.o())
        .map_err(|v| Error::TypeRejected(v.iter().map(|x| x.to_string()).collect()))?;
    if report.h != cfg.d() {
        return Ok(Some(format!("supersingular type has h = {}", report.h)));
    }
    if h % BigInt::from(cfg.d()) != BigInt::from(0) {
        return Ok(Some("h not divisible by d".into()));
    }
    Ok(None)
}

fn sweep(name: &str, configs: &[ModuliConfig], f: fn(&ModuliConfig) -> Result<Option<String>>) -> OracleResult {
    for (k, cfg) in configs.iter().enumerate() {
        let failure = match f(cfg) {
            Ok(None) => continue,
            Ok(Some(msg)) => msg,
            Err(e) => e.to_string(),
        };
        let desc = format!("{} o={} p={}: {failure}", cfg.spec(), cfg.o(), cfg.level());
        return outcome(name, k as u64 + 1, Some(desc));
    }
    outcome(name, configs.len() as u64, None)
}

pub fn check_ratio_identity(configs: &[ModuliConfig]) -> OracleResult {
    sweep("ratio_identity", configs, identity_failure)
}

pub fn check_structure(configs: &[ModuliConfig]) -> OracleResult {
    sweep("betti_structure", configs, structure_failure)
}

/// Run every oracle. Failures are reported in the result, never raised.
pub fn run_check(scale: Scale, seed: u64, inject_fault: bool) -> CheckReport {
    let grid = CheckGrid::for_scale(scale);
    let configs = random_configs(seed, grid.random_configs);
    let specs = volume_configs();
    let tasks: Vec<Box<dyn Fn() -> OracleResult + Sync + Send + '_>> = vec![
        Box::new(|| check_euler(&grid)),
        Box::new(|| check_necklace(&grid)),
        Box::new(|| {
            check_admissibility(
                &grid.admissibility_fields,
                grid.admissibility_max_size,
                &grid.admissibility_ds,
            )
        }),
        Box::new(|| check_volume(&specs, inject_fault)),
        Box::new(|| check_ratio_identity(&configs)),
        Box::new(|| check_structure(&configs)),
    ];
    let oracles: Vec<OracleResult> = tasks.par_iter().map(|t| t()).collect();
    CheckReport {
        scale,
        seed,
        fault_injected: inject_fault,
        passed: oracles.iter().all(|o| o.passed),
        oracles,
    }
}
