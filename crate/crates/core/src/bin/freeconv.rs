use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use freeconv::convolutions::{convolve, Op, Theory};
use freeconv::io::write_csv_to;
use freeconv::maps::{apply, MAP_NAMES};
use freeconv::measures::parse::{parse_json, parse_measure};
use freeconv::oracle::{empirical_measure, linspace, subordination_density};
use freeconv::verify::{run_suite, VerifyReport, SUITES};
use freeconv::{Error, Family, Measure};

/// Transforms, convolutions and max-convolution homomorphisms for
/// probability measures on [0, ∞).
#[derive(Parser)]
#[command(name = "freeconv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the measure families or describe one measure.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// CSV `t,F` of a measure's CDF.
    Cdf {
        #[command(flatten)]
        measure: MeasureArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// CSV `t,value` of one transform.
    Transform {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long, value_enum)]
        which: WhichArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Convolve two measures; CSV CDF when the result has one, otherwise
    /// its JSON descriptor.
    Convolve {
        mu: String,
        nu: String,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, value_enum)]
        theory: TheoryArg,
        /// Emit this transform of the result instead of its CDF.
        #[arg(long, value_enum)]
        which: Option<WhichArg>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Apply a named map; CSV CDF output (or the JSON descriptor for
    /// transform-defined results).
    Map {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(MAP_NAMES))]
        name: String,
        /// Index of the stable homomorphisms c-alpha, f-alpha, b-alpha.
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Draw samples, one per line.
    Sample {
        #[command(flatten)]
        measure: MeasureArg,
        #[arg(short, long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Independent computations: subordination and Monte Carlo.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Run a verification suite; JSON report on stdout.
    Verify {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        /// Replace the tolerance of every upper-bound check.
        #[arg(long)]
        tol: Option<f64>,
        /// Directory for per-check CSV series.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Describe {
        #[command(flatten)]
        measure: MeasureArg,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// CSV `t,value` of the density of μ ⊞ ν by subordination.
    Subord {
        mu: String,
        nu: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// CSV `t,F` of an empirical CDF, optionally of paired samples.
    Sample {
        #[command(flatten)]
        measure: MeasureArg,
        /// Pair each sample with one from this measure.
        #[arg(long)]
        with: Option<String>,
        #[arg(long, value_enum, default_value = "sum")]
        pairing: Pairing,
        #[arg(short, long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Args)]
struct MeasureArg {
    /// `family:key=val,...`, e.g. `dagum:alpha=0.5`.
    #[arg(required_unless_present = "spec")]
    measure: Option<String>,
    /// JSON descriptor file, instead of the positional measure.
    #[arg(long, conflicts_with = "measure")]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    tmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    tmax: Option<f64>,
    #[arg(long, default_value_t = 101)]
    points: usize,
}

impl GridArgs {
    fn grid(&self, lo: f64, hi: f64) -> Vec<f64> {
        linspace(self.tmin.unwrap_or(lo), self.tmax.unwrap_or(hi), self.points)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(name = "G")]
    G,
    #[value(name = "psi")]
    Psi,
    #[value(name = "eta")]
    Eta,
    #[value(name = "R")]
    R,
    #[value(name = "S")]
    S,
    #[value(name = "C")]
    C,
    #[value(name = "M")]
    M,
}

impl WhichArg {
    fn default_range(self) -> (f64, f64) {
        match self {
            WhichArg::S => (-0.99, -0.01),
            WhichArg::M => (-0.5, 0.5),
            WhichArg::R => (-0.5, -0.01),
            _ => (-10.0, -0.01),
        }
    }

    fn eval(self, m: &Measure, t: f64) -> freeconv::Result<f64> {
        match self {
            WhichArg::G => m.cauchy(t),
            WhichArg::Psi => m.psi(t),
            WhichArg::Eta => m.eta(t),
            WhichArg::R => m.r_transform(t),
            WhichArg::S => m.s_transform(t),
            WhichArg::C => m.cumulant(t),
            WhichArg::M => m.mellin(t),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Add,
    Mul,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Classical,
    Free,
    Boolean,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairing {
    Sum,
    Product,
    Max,
}

fn measure_from(text: &str) -> anyhow::Result<Measure> {
    let parsed = if text.trim_start().starts_with('{') { parse_json(text) } else { parse_measure(text) };
    parsed.map_err(usage_or)
}

fn usage_or(e: Error) -> anyhow::Error {
    match e {
        Error::Parse(msg) => anyhow::Error::msg(msg).context(UsageMarker),
        other => other.into(),
    }
}

/// Context attached to errors that should exit with status 2 rather than 1.
#[derive(Debug)]
struct UsageMarker;

impl std::fmt::Display for UsageMarker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("usage")
    }
}

impl MeasureArg {
    fn load(&self) -> anyhow::Result<Measure> {
        match (&self.measure, &self.spec) {
            (_, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(parse_json(&text).map_err(usage_or)?)
            }
            (Some(m), None) => measure_from(m),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

fn csv_rows(
    grid: &[f64],
    f: impl Fn(f64) -> freeconv::Result<f64>,
) -> anyhow::Result<Vec<Vec<f64>>> {
    grid.iter()
        .map(|&t| Ok(vec![t, f(t).with_context(|| format!("at t = {t}"))?]))
        .collect()
}

fn print_csv(header: &[&str], rows: &[Vec<f64>]) -> anyhow::Result<()> {
    let stdout = std::io::stdout();
    write_csv_to(stdout.lock(), header, rows)?;
    Ok(())
}

fn cdf_range(m: &Measure) -> (f64, f64) {
    let hi = m.quantile(0.99).ok().filter(|q| q.is_finite() && *q > 0.0).unwrap_or(10.0);
    (0.0, hi)
}

/// CSV CDF when the measure has one, else its descriptor.
fn emit_measure(m: &Measure, grid: &GridArgs) -> anyhow::Result<()> {
    if m.cdf(1.0).is_err() {
        let mut d = m.descriptor();
        if let Ok(a) = m.neg_moment() {
            d["A"] = serde_json::json!(if a.is_finite() { serde_json::json!(a) } else { serde_json::json!("inf") });
        }
        println!("{}", serde_json::to_string_pretty(&d)?);
        return Ok(());
    }
    let (lo, hi) = cdf_range(m);
    print_csv(&["t", "F"], &csv_rows(&grid.grid(lo, hi), |t| m.cdf(t))?)
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Catalog { action: CatalogAction::List } => {
            for (name, keys) in Family::registry() {
                if keys.is_empty() {
                    println!("{name}");
                } else {
                    let ks: Vec<String> = keys.iter().map(|k| format!("{k}=…")).collect();
                    println!("{name}:{}", ks.join(","));
                }
            }
        }
        Command::Catalog { action: CatalogAction::Describe { measure } } => {
            let m = measure.load()?;
            let mut d = m.descriptor();
            d["label"] = serde_json::json!(m.label());
            d["atom0"] = serde_json::json!(m.atom0());
            d["id_star"] = serde_json::json!(m.id_star());
            if let Ok(a) = m.neg_moment() {
                d["A"] = if a.is_finite() { serde_json::json!(a) } else { serde_json::json!("inf") };
            }
            if let Some(f) = m.family() {
                d["closed_forms"] = serde_json::json!(f.closed_forms());
            }
            println!("{}", serde_json::to_string_pretty(&d)?);
        }
        Command::Cdf { measure, grid } => {
            let m = measure.load()?;
            let (lo, hi) = cdf_range(&m);
            print_csv(&["t", "F"], &csv_rows(&grid.grid(lo, hi), |t| m.cdf(t))?)?;
        }
        Command::Transform { measure, which, grid } => {
            let m = measure.load()?;
            let (lo, hi) = which.default_range();
            print_csv(&["t", "value"], &csv_rows(&grid.grid(lo, hi), |t| which.eval(&m, t))?)?;
        }
        Command::Convolve { mu, nu, op, theory, which, grid } => {
            let (mu, nu) = (measure_from(&mu)?, measure_from(&nu)?);
            let op = match op {
                OpArg::Add => Op::Add,
                OpArg::Mul => Op::Mul,
                OpArg::Max => Op::Max,
            };
            let theory = match theory {
                TheoryArg::Classical => Theory::Classical,
                TheoryArg::Free => Theory::Free,
                TheoryArg::Boolean => Theory::Boolean,
            };
            let out = convolve(op, theory, &mu, &nu)?;
            match which {
                Some(w) => {
                    let (lo, hi) = w.default_range();
                    print_csv(&["t", "value"], &csv_rows(&grid.grid(lo, hi), |t| w.eval(&out, t))?)?
                }
                None => emit_measure(&out, &grid)?,
            }
        }
        Command::Map { measure, name, alpha, grid } => {
            let m = measure.load()?;
            emit_measure(&apply(&name, &m, alpha)?, &grid)?;
        }
        Command::Sample { measure, n, seed } => {
            let m = measure.load()?;
            let stdout = std::io::stdout();
            let mut w = std::io::BufWriter::new(stdout.lock());
            for x in m.sample(n, seed)? {
                writeln!(w, "{}", freeconv::io::format_f64(x))?;
            }
        }
        Command::Oracle { action: OracleAction::Subord { mu, nu, grid } } => {
            let (mu, nu) = (measure_from(&mu)?, measure_from(&nu)?);
            let xs = grid.grid(0.0, 10.0);
            let rows: Vec<Vec<f64>> = xs
                .par_iter()
                .map(|&x| Ok(vec![x, subordination_density(&mu, &nu, x).with_context(|| format!("at t = {x}"))?]))
                .collect::<anyhow::Result<_>>()?;
            print_csv(&["t", "value"], &rows)?;
        }
        Command::Oracle { action: OracleAction::Sample { measure, with, pairing, n, seed, grid } } => {
            let m = measure.load()?;
            let mut xs = m.sample(n, seed)?;
            if let Some(other) = with {
                let ys = measure_from(&other)?.sample(n, seed.wrapping_add(1))?;
                for (x, y) in xs.iter_mut().zip(ys) {
                    *x = match pairing {
                        Pairing::Sum => *x + y,
                        Pairing::Product => *x * y,
                        Pairing::Max => x.max(y),
                    };
                }
            }
            let e = Measure::from_grid(empirical_measure(&xs)?);
            let (lo, hi) = cdf_range(&e);
            print_csv(&["t", "F"], &csv_rows(&grid.grid(lo, hi), |t| e.cdf(t))?)?;
        }
        Command::Verify { suite, tol, out } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports: Vec<VerifyReport> = Vec::new();
            for name in names {
                reports.push(run_suite(name, tol).map_err(usage_or)?);
            }
            if let Some(dir) = &out {
                for r in &reports {
                    r.write_artifacts(dir)?;
                }
            }
            let json = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])?
            } else {
                serde_json::to_string_pretty(&reports)?
            };
            println!("{json}");
            let mut failed = false;
            for r in &reports {
                for c in r.failures() {
                    failed = true;
                    let detail = match (&c.error, c.sup_error) {
                        (Some(e), _) => e.clone(),
                        (None, Some(v)) => format!("{v:e} against tolerance {:e}", c.tol),
                        (None, None) => "no value".to_string(),
                    };
                    eprintln!("FAIL {}/{}: {detail}", r.suite, c.id);
                }
            }
            if failed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("FREECONV_THREADS") else { return Ok(()) };
    let n = v
        .parse::<usize>()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| anyhow::anyhow!("FREECONV_THREADS must be a positive integer, got '{v}'").context(UsageMarker))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            let usage = e.downcast_ref::<UsageMarker>().is_some();
            eprintln!("error: {}", e.root_cause());
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
