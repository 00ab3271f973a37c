//! Python bindings. Exact rationals come back as `fractions.Fraction`,
//! polynomials and places as strings in the core grammar.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use modcount::admissible as adm;
use modcount::algebra::DivisionAlgebraSpec;
use modcount::counts::{self, ModuliConfig};
use modcount::ff_poly::{self, GaloisField, Poly, PrimePower};
use modcount::report::{self, OutputFormat, RamificationEntry, RunConfig, Scale};
use modcount::zeta::{self, ExactQ, Place};

fn err(e: modcount::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, x: &ExactQ) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

fn prime_power(q: u64) -> PyResult<PrimePower> {
    PrimePower::new(q).map_err(err)
}

fn poly(s: &str, q: u64) -> PyResult<Poly> {
    let field = GaloisField::for_q(q).map_err(err)?;
    Poly::parse(s, &field).map_err(err)
}

fn place(s: &str, q: u64) -> PyResult<Place> {
    Place::parse(s, prime_power(q)?).map_err(err)
}

#[pyfunction]
fn is_irreducible(p: &str, q: u64) -> PyResult<bool> {
    poly(p, q)?.is_irreducible().map_err(err)
}

#[pyfunction]
fn count_irreducibles(q: u64, n: usize) -> PyResult<BigInt> {
    Ok(ff_poly::count_monic_irreducibles(prime_power(q)?, n).into())
}

#[pyfunction]
fn irreducibles(q: u64, n: usize) -> PyResult<Vec<String>> {
    let list = ff_poly::enumerate_monic_irreducibles(prime_power(q)?, n).map_err(err)?;
    Ok(list.iter().map(|p| p.to_string()).collect())
}

#[pyfunction]
fn is_admissible(p: &str, q: u64, d: u32) -> PyResult<bool> {
    adm::is_admissible_prime(&poly(p, q)?, d).map_err(err)
}

#[pyfunction]
fn brute_force_admissible(p: &str, q: u64, d: u32) -> PyResult<bool> {
    ff_poly::brute_force_is_admissible(&poly(p, q)?, d).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (q, d, max_deg, exclude = Vec::new()))]
fn admissible_primes(q: u64, d: u32, max_deg: usize, exclude: Vec<String>) -> PyResult<Vec<String>> {
    let excluded = exclude.iter().map(|s| place(s, q)).collect::<PyResult<BTreeSet<_>>>()?;
    let list = adm::enumerate_admissible(prime_power(q)?, d, max_deg, &excluded).map_err(err)?;
    Ok(list.iter().map(|p| p.to_string()).collect())
}

/// `zeta^S(-i)` for the places in `S`; `"inf"` names the place at infinity.
#[pyfunction]
fn zeta_partial<'py>(py: Python<'py>, q: u64, places: Vec<String>, i: i64) -> PyResult<Bound<'py, PyAny>> {
    let places = places.iter().map(|s| place(s, q)).collect::<PyResult<Vec<_>>>()?;
    fraction(py, &zeta::zeta_partial_neg(prime_power(q)?, &places, i).map_err(err)?)
}

#[pyfunction]
fn euler_product_check(q: u64, order: usize) -> PyResult<bool> {
    Ok(zeta::euler_product_check(prime_power(q)?, order))
}

#[pyfunction]
fn betti_vector(d: u32, h: BigInt) -> PyResult<Vec<BigInt>> {
    Ok(counts::betti_vector(d, &h).map_err(err)?.dims)
}

/// `(q^{n/2} - 1) / 2` as the string `a+b*sqrt(r)`.
#[pyfunction]
fn dv_bound(q: BigInt, n: u32) -> String {
    counts::dv_bound(&q, n).to_string()
}

/// Convergence table for a JSON run configuration, rendered in its format.
#[pyfunction]
fn convergence_table(config_json: &str) -> PyResult<String> {
    let cfg = RunConfig::from_json(config_json).map_err(err)?;
    let rows = report::build_convergence_table(&cfg).map_err(err)?;
    Ok(match cfg.format {
        OutputFormat::Csv => report::table_to_csv(&rows),
        OutputFormat::Json => report::to_json(&rows),
    })
}

/// Oracle report as JSON.
#[pyfunction]
#[pyo3(signature = (scale = "quick", seed = 0, inject_fault = false))]
fn run_check(scale: &str, seed: u64, inject_fault: bool) -> PyResult<String> {
    let scale: Scale = scale.parse().map_err(err)?;
    let report = report::run_check(scale, seed, inject_fault);
    serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A central division algebra over `F_q(T)` given by its ramification.
#[pyclass(name = "Algebra", frozen)]
struct PyAlgebra {
    config: RunConfig,
    spec: DivisionAlgebraSpec,
}

#[pymethods]
impl PyAlgebra {
    /// `ramification` holds places, each optionally paired with an invariant
    /// string; bare places get invariant `1/d`.
    #[new]
    fn new(q: u64, d: u32, ramification: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut entries = Vec::new();
        for item in ramification {
            if let Ok(s) = item.extract::<String>() {
                entries.push(RamificationEntry::Place(s));
            } else {
                let (place, inv): (String, String) = item.extract()?;
                entries.push(RamificationEntry::WithInvariant { place, inv });
            }
        }
        let mut config = RunConfig::new(q, d, &[], "", &[]);
        config.ramification = entries;
        let spec = config.spec().map_err(err)?;
        Ok(PyAlgebra { config, spec })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.spec.q().q()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.spec.d()
    }

    /// `(place, invariant)` pairs, sorted.
    #[getter]
    fn ramification(&self) -> Vec<(String, String)> {
        self.spec
            .ramification()
            .iter()
            .map(|(x, inv)| (x.to_string(), inv.to_string()))
            .collect()
    }

    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &counts::volume_g1(&self.spec).map_err(err)?)
    }

    fn volume_residue<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &zeta::volume_residue_oracle(&self.spec).map_err(err)?)
    }

    /// The moduli data at level `level` with auxiliary place `o`.
    fn level(&self, o: &str, level: &str) -> PyResult<PyLevel> {
        let o = place(o, self.config.q)?;
        let prime = poly(level, self.config.q)?;
        let cfg = ModuliConfig::with_prime(self.spec.clone(), o, prime).map_err(err)?;
        Ok(PyLevel { cfg })
    }

    fn __repr__(&self) -> String {
        format!("Algebra({})", self.spec)
    }
}

/// One admissible level of the moduli variety.
#[pyclass(name = "Level", frozen)]
struct PyLevel {
    cfg: ModuliConfig,
}

#[pymethods]
impl PyLevel {
    #[getter]
    fn degree(&self) -> usize {
        self.cfg.level().degree()
    }

    fn supersingular_count<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &counts::supersingular_count(&self.cfg).map_err(err)?.value)
    }

    fn is_integral(&self) -> PyResult<bool> {
        Ok(counts::supersingular_count(&self.cfg).map_err(err)?.is_integral)
    }

    #[pyo3(signature = (barred = true))]
    fn asymptotic_h<'py>(&self, py: Python<'py>, barred: bool) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &counts::asymptotic_h(&self.cfg, barred).map_err(err)?)
    }

    fn ratio<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &counts::ratio_exact(&self.cfg).map_err(err)?)
    }

    fn limit_ratio<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &counts::limit_ratio(self.cfg.d(), &self.cfg.q_o()))
    }

    fn component_count(&self) -> PyResult<BigInt> {
        counts::component_count(self.cfg.q(), self.cfg.level().prime()).map_err(err)
    }

    fn wd_limit(&self) -> BigInt {
        counts::wd_limit(self.cfg.d(), &self.cfg.q_o())
    }

    /// `wd_bound / h` as a float, and exactly as `a+b*sqrt(r)`.
    fn wd_ratio(&self) -> PyResult<(f64, String)> {
        let v = report::level_values(&self.cfg).map_err(err)?;
        Ok((v.wd_ratio.to_f64(), v.wd_ratio.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Level({})", self.cfg.level())
    }
}

#[pymodule]
#[pyo3(name = "modcount")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyLevel>()?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(count_irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(is_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(admissible_primes, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_partial, m)?)?;
    m.add_function(wrap_pyfunction!(euler_product_check, m)?)?;
    m.add_function(wrap_pyfunction!(betti_vector, m)?)?;
    m.add_function(wrap_pyfunction!(dv_bound, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_table, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
