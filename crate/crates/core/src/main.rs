use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use modcount::admissible::{enumerate_admissible, is_admissible_prime};
use modcount::algebra::validate_type;
use modcount::counts::{
    asymptotic_h, betti_vector, component_count, limit_ratio, ratio_exact, supersingular_count, volume_g1, wd_bound,
    wd_limit, ModuliConfig,
};
use modcount::ff_poly::{enumerate_monic_irreducibles, PrimePower};
use modcount::report::{
    build_convergence_table, curves_to_csv, optimal_curves_report, run_check, table_to_csv, to_json, OutputFormat,
    RamificationEntry, RunConfig, Scale, DEFAULT_MAX_PER_DEGREE,
};
use modcount::zeta::{euler_product_check, volume_residue_oracle, zeta_partial_neg, Place};
use modcount::Error;

#[derive(Parser)]
#[command(
    name = "modcount",
    version,
    about = "Exact counts for modular varieties of D-elliptic sheaves"
)]
struct Cli {
    /// JSON run configuration
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Partial zeta value zeta^S(-i) of P^1 over F_q
    Zeta {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        i: i64,
        /// Removed places, comma separated ("inf" allowed)
        #[arg(long, default_value = "")]
        places: String,
        /// Also check the Euler product to this order
        #[arg(long)]
        euler: Option<usize>,
    },
    /// Admissible primes up to a degree
    Admissible {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        max_deg: usize,
        /// Excluded places, comma separated
        #[arg(long, default_value = "")]
        exclude: String,
    },
    /// Volume of G(F)\G^1(A), closed form and residue
    Volume(AlgebraArgs),
    /// Supersingular count and asymptotic h at one level
    Count {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Level prime; defaults to the first admissible prime of the first degree
        #[arg(long)]
        level: Option<String>,
    },
    /// Betti vector from d and an asymptotic h
    Betti {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        h: BigInt,
        /// With --n, also print the Weil-Deligne bound
        #[arg(long)]
        q_o: Option<BigInt>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Convergence table over level degrees
    Table(AlgebraArgs),
    /// Points over genus for d = 2, deg o = 1
    OptimalCurves(AlgebraArgs),
    /// Validate (D, inf, o)-type data from the config's "type" section
    TypeCheck(AlgebraArgs),
    /// Run the oracle suite
    Check {
        #[arg(long, default_value = "quick")]
        scale: String,
        /// Flip one zeta sign in the volume oracle
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    d: Option<u32>,
    /// Ramified place, "poly" (invariant 1/d) or "poly:inv"; repeatable
    #[arg(long = "ram")]
    ram: Vec<String>,
    #[arg(long)]
    o: Option<String>,
    /// Level degrees, comma separated
    #[arg(long)]
    degrees: Option<String>,
    #[arg(long)]
    max_per_degree: Option<usize>,
}

enum Failure {
    Validation(Error),
    Oracle(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

type Outcome = Result<String, Failure>;

/// Split on commas outside `[...]`, so extension-field coefficients survive.
fn split_list(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur);
    out.into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_places(list: &str, q: PrimePower) -> Result<Vec<Place>, Error> {
    split_list(list).iter().map(|s| Place::parse(s, q)).collect()
}

fn run_config(cli: &Cli, args: &AlgebraArgs) -> Result<RunConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => {
            let need = |what: &str| Error::InvalidConfig(format!("--{what} is required without --config"));
            RunConfig::new(
                args.q.ok_or_else(|| need("q"))?,
                args.d.ok_or_else(|| need("d"))?,
                &[],
                "",
                &[],
            )
        }
    };
    if let Some(q) = args.q {
        cfg.q = q;
    }
    if let Some(d) = args.d {
        cfg.d = d;
    }
    if !args.ram.is_empty() {
        cfg.ramification = args
            .ram
            .iter()
            .map(|r| match r.rsplit_once(':') {
                Some((place, inv)) => RamificationEntry::WithInvariant {
                    place: place.trim().into(),
                    inv: inv.trim().into(),
                },
                None => RamificationEntry::Place(r.trim().into()),
            })
            .collect();
    }
    if let Some(o) = &args.o {
        cfg.o = o.clone();
    }
    if let Some(deg) = &args.degrees {
        cfg.level_degrees = split_list(deg)
            .iter()
            .map(|s| {
                s.parse().map_err(|_| Error::Parse {
                    input: s.clone(),
                    reason: "expected a degree".into(),
                })
            })
            .collect::<Result<_, _>>()?;
    }
    if let Some(m) = args.max_per_degree {
        cfg.max_per_degree = m;
    }
    if cfg.max_per_degree == 0 {
        cfg.max_per_degree = DEFAULT_MAX_PER_DEGREE;
    }
    if let Some(f) = cli.format {
        cfg.format = match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        };
    }
    Ok(cfg)
}

fn json_out(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn wants_json(cli: &Cli) -> bool {
    matches!(cli.format, Some(Format::Json))
}

fn cmd_zeta(cli: &Cli, q: u64, i: i64, places: &str, euler: Option<usize>) -> Outcome {
    let pp = PrimePower::new(q)?;
    let s = parse_places(places, pp)?;
    let value = zeta_partial_neg(pp, &s, i)?;
    let euler_ok = euler.map(|n| euler_product_check(pp, n));
    if euler_ok == Some(false) {
        return Err(Failure::Oracle(format!("Euler product check failed for q = {q}")));
    }
    let labels: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    if wants_json(cli) {
        return Ok(json_out(
            json!({"q": q, "i": i, "places": labels, "value": value.to_string(), "euler_check": euler_ok}),
        ));
    }
    let mut out = format!("zeta^S(-{i}) = {value}\n");
    if let Some(n) = euler {
        out.push_str(&format!("euler product to order {n}: ok\n"));
    }
    Ok(out)
}

fn cmd_admissible(cli: &Cli, q: u64, d: u32, max_deg: usize, exclude: &str) -> Outcome {
    let pp = PrimePower::new(q)?;
    let excluded: BTreeSet<Place> = parse_places(exclude, pp)?.into_iter().collect();
    if !wants_json(cli) {
        let primes = enumerate_admissible(pp, d, max_deg, &excluded)?;
        return Ok(primes.iter().map(|p| format!("{p}\n")).collect());
    }
    let mut rows = Vec::new();
    for n in 1..=max_deg {
        for p in enumerate_monic_irreducibles(pp, n)? {
            if excluded.iter().any(|x| x.polynomial() == Some(&p)) {
                continue;
            }
            rows.push(json!({"poly": p.to_string(), "degree": n, "admissible": is_admissible_prime(&p, d)?}));
        }
    }
    Ok(json_out(serde_json::Value::Array(rows)))
}

fn cmd_volume(cli: &Cli, args: &AlgebraArgs) -> Outcome {
    let cfg = run_config(cli, args)?;
    let spec = cfg.spec()?;
    let closed = volume_g1(&spec)?;
    let residue = volume_residue_oracle(&spec)?;
    if closed != residue {
        return Err(Failure::Oracle(format!("volume {closed} != residue oracle {residue}")));
    }
    if wants_json(cli) {
        return Ok(json_out(
            json!({"algebra": spec.to_string(), "volume": closed.to_string(), "residue_oracle": residue.to_string()}),
        ));
    }
    Ok(format!("volume = {closed}\nresidue oracle = {residue}\n"))
}

fn cmd_count(cli: &Cli, args: &AlgebraArgs, level: Option<&str>) -> Outcome {
    let cfg = run_config(cli, args)?;
    let spec = cfg.spec()?;
    let o = cfg.o_place(&spec)?;
    let prime = match level {
        Some(s) => cfg.poly(s)?,
        None => {
            let excluded = cfg.excluded(&spec, &o);
            let n = *cfg
                .level_degrees
                .first()
                .ok_or_else(|| Error::InvalidConfig("give --level or --degrees".into()))?;
            modcount::admissible::first_admissible_of_degree(spec.q(), spec.d(), n, &excluded, 1)?
                .pop()
                .ok_or_else(|| Error::NoAdmissibleLevels(format!("no admissible prime of degree {n}")))?
        }
    };
    let m = ModuliConfig::with_prime(spec, o, prime)?;
    let ss = supersingular_count(&m)?;
    let barred = asymptotic_h(&m, true)?;
    let unbarred = asymptotic_h(&m, false)?;
    let comps = component_count(m.q(), m.level().prime())?;
    let ratio = ratio_exact(&m)?;
    let limit = limit_ratio(m.d(), &m.q_o());
    if ratio != limit {
        return Err(Failure::Oracle(format!("ratio {ratio} != limit {limit}")));
    }
    let wdl = wd_limit(m.d(), &m.q_o());
    if wants_json(cli) {
        return Ok(json_out(json!({
            "level": m.level().to_string(),
            "deg_i": m.level().degree(),
            "supersingular_count": ss.value.to_string(),
            "supersingular_integral": ss.is_integral,
            "asymptotic_h_barred": barred.to_string(),
            "asymptotic_h": unbarred.to_string(),
            "component_count": comps.to_string(),
            "ratio": ratio.to_string(),
            "limit_ratio": limit.to_string(),
            "wd_limit": wdl.to_string(),
        })));
    }
    let mut out = String::new();
    out.push_str(&format!("level = {} (degree {})\n", m.level(), m.level().degree()));
    out.push_str(&format!("supersingular count = {}", ss.value));
    out.push_str(if ss.is_integral {
        "\n"
    } else {
        " (non-integral: exceptional level)\n"
    });
    out.push_str(&format!(
        "h ~ {barred} per component, h ~ {unbarred} total over {comps} components\n"
    ));
    out.push_str(&format!("ratio = {ratio} = limit {limit}\nwd limit = {wdl}\n"));
    Ok(out)
}

fn cmd_betti(cli: &Cli, d: u32, h: &BigInt, q_o: Option<&BigInt>, n: Option<u32>) -> Outcome {
    let bv = betti_vector(d, h)?;
    bv.check()?;
    let wd = match (q_o, n) {
        (Some(q), Some(n)) => Some(wd_bound(&bv, q, n)),
        (None, None) => None,
        _ => return Err(Error::InvalidConfig("--q-o and --n go together".into()).into()),
    };
    let dims: Vec<String> = bv.dims.iter().map(|x| x.to_string()).collect();
    if wants_json(cli) {
        return Ok(json_out(
            json!({"dims": dims, "mu": bv.mu.to_string(), "wd_bound": wd.map(|w| w.to_string())}),
        ));
    }
    let mut out = format!("dims = [{}]\nmu = {}\n", dims.join(", "), bv.mu);
    if let Some(w) = wd {
        out.push_str(&format!("wd bound = {w}\n"));
    }
    Ok(out)
}

fn cmd_table(cli: &Cli, args: &AlgebraArgs, curves: bool) -> Result<(String, Option<PathBuf>), Failure> {
    let cfg = run_config(cli, args)?;
    let text = if curves {
        let rows = optimal_curves_report(&cfg)?;
        match cfg.format {
            OutputFormat::Csv => curves_to_csv(&rows),
            OutputFormat::Json => to_json(&rows),
        }
    } else {
        let rows = build_convergence_table(&cfg)?;
        match cfg.format {
            OutputFormat::Csv => table_to_csv(&rows),
            OutputFormat::Json => to_json(&rows),
        }
    };
    Ok((text, cfg.out.as_ref().map(PathBuf::from)))
}

fn cmd_type_check(cli: &Cli, args: &AlgebraArgs) -> Outcome {
    let cfg = run_config(cli, args)?;
    let spec = cfg.spec()?;
    let o = cfg.o_place(&spec)?;
    let data = cfg.type_data()?;
    let report =
        validate_type(&data, &spec, &o).map_err(|v| Error::TypeRejected(v.iter().map(|x| x.to_string()).collect()))?;
    let delta: Vec<serde_json::Value> = report
        .delta_invariants
        .iter()
        .map(|e| json!({"place": e.place.to_string(), "point": e.point, "role": format!("{:?}", e.role), "invariant": e.invariant.to_string()}))
        .collect();
    if wants_json(cli) {
        return Ok(json_out(
            json!({"h": report.h, "delta": delta, "subfield_condition_verified": false}),
        ));
    }
    let mut out = format!("valid type, h = {}\n", report.h);
    for e in &report.delta_invariants {
        out.push_str(&format!(
            "inv at {}[{}] ({:?}) = {}\n",
            e.place, e.point, e.role, e.invariant
        ));
    }
    out.push_str("subfield condition on Pi~: not verified\n");
    Ok(out)
}

fn run(cli: &Cli) -> Result<(String, Option<PathBuf>), Failure> {
    let text = match &cli.command {
        Command::Zeta { q, i, places, euler } => cmd_zeta(cli, *q, *i, places, *euler)?,
        Command::Admissible { q, d, max_deg, exclude } => cmd_admissible(cli, *q, *d, *max_deg, exclude)?,
        Command::Volume(args) => cmd_volume(cli, args)?,
        Command::Count { algebra, level } => cmd_count(cli, algebra, level.as_deref())?,
        Command::Betti { d, h, q_o, n } => cmd_betti(cli, *d, h, q_o.as_ref(), *n)?,
        Command::Table(args) => return cmd_table(cli, args, false),
        Command::OptimalCurves(args) => return cmd_table(cli, args, true),
        Command::TypeCheck(args) => cmd_type_check(cli, args)?,
        Command::Check { scale, inject_fault } => {
            let scale: Scale = scale.parse()?;
            let report = run_check(scale, cli.seed, *inject_fault);
            let text = json_out(serde_json::to_value(&report).expect("report serializes"));
            if !report.passed {
                emit(&text, cli.out.as_ref())?;
                return Err(Failure::Oracle("one or more oracles failed".into()));
            }
            text
        }
    };
    Ok((text, None))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure::Validation(Error::Io(format!("{}: {e}", path.display()))))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(text, config_out)| emit(&text, cli.out.as_ref().or(config_out.as_ref())));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Oracle(msg)) => {
            eprintln!("oracle failure: {msg}");
            ExitCode::from(2)
        }
    }
}
