//! `mzv`: evaluate zeta values, print generating-function tables, run the
//! identity checks, and manage the value cache.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mzv_core::gf::{phi_bruteforce, GFParams};
use mzv_core::rational::{format_rational, parse_rational};
use mzv_core::real::format_dd;
use mzv_core::verify::{run_many, IdentityName, ReportDocument, VerifyConfig, REPORT_FORMAT};
use mzv_core::zeta::cache::{clear_cache, default_cache_dir, ZetaCache};
use mzv_core::zeta::Variant;
use mzv_core::{CoefficientRing, Index, MzvError, Rational, RealValue, ZetaEngine};

const MAX_ORDER: u32 = 12;

#[derive(Parser)]
#[command(name = "mzv", version, about = "Multiple zeta values and their generating functions")]
struct Cli {
    /// Cache directory (default: MZV_CACHE_DIR or ~/.cache/mzv).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Do not read or write the value cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one zeta value.
    Eval(EvalArgs),
    /// Print the truncated generating function of a variant.
    Phi(PhiArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
    /// Coefficient table as CSV: i, j, k, coefficient, error_bound.
    Table(PhiArgs),
    /// Inspect or clear the value cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    Stats,
    Clear,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Point {
    /// Interpolation parameter, as p/q.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    t: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    y: String,
}

#[derive(Args)]
struct EvalArgs {
    /// Comma-separated entries; `-` is the empty index.
    #[arg(long, allow_hyphen_values = true)]
    index: String,
    /// plain, star, t, ipmzv, S, S_star.
    #[arg(long, default_value = "plain")]
    variant: String,
    #[command(flatten)]
    point: Point,
    /// Allow non-admissible indices (regularized with T = 0).
    #[arg(long)]
    reg: bool,
    /// With --reg and the plain variant: print the polynomial in T.
    #[arg(long, requires = "reg")]
    symbolic_t: bool,
    /// Target absolute error of each underlying value.
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long, default_value = "plain")]
    variant: String,
    #[command(flatten)]
    point: Point,
    /// Truncation order (total degree in X, Y, Z).
    #[arg(long, default_value_t = 6)]
    max_weight: u32,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity to check; repeatable.
    #[arg(long, required_unless_present = "all", conflicts_with = "all")]
    identity: Vec<String>,
    /// Check every registered identity.
    #[arg(long)]
    all: bool,
    /// Overrides each identity's size parameter.
    #[arg(long)]
    max_weight: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Record wall time (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

/// Usage errors exit with 2, everything else with 1.
struct Failure {
    usage: bool,
    message: String,
}

impl From<MzvError> for Failure {
    fn from(e: MzvError) -> Self {
        let usage = matches!(
            e,
            MzvError::InvalidIndex(_)
                | MzvError::NotAdmissible(_)
                | MzvError::EmptyIndex
                | MzvError::InvalidArgument(_)
                | MzvError::UnknownIdentity(_)
                | MzvError::Precondition(_)
        );
        let message = match &e {
            MzvError::CacheCorrupt { .. } | MzvError::CacheVersion { .. } => {
                format!("{e} (run `mzv cache clear`)")
            }
            _ => e.to_string(),
        };
        Failure { usage, message }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            usage: false,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        usage: true,
        message: message.into(),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            let kind = if f.usage { "usage" } else { "runtime" };
            eprintln!("error[{kind}]: {}", f.message);
            ExitCode::from(if f.usage { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let cache_dir = cli.cache_dir.clone().unwrap_or_else(default_cache_dir);
    let engine = |eps: Option<f64>| -> CliResult<ZetaEngine> {
        let eps = eps.unwrap_or(mzv_core::zeta::engine::DEFAULT_EPS);
        if eps.is_nan() || eps <= 0.0 {
            return Err(usage(format!("--eps must be positive, got {eps}")));
        }
        let engine = ZetaEngine::new(eps);
        if cli.no_cache {
            return Ok(engine);
        }
        Ok(engine.with_cache(ZetaCache::open(&cache_dir)?))
    };
    match &cli.command {
        Command::Eval(a) => eval(&engine(a.eps)?, a),
        Command::Phi(a) => phi(&engine(None)?, a, a.format.unwrap_or(Format::Text)),
        Command::Table(a) => phi(&engine(None)?, a, Format::Csv),
        Command::Verify(a) => verify(&engine(None)?, a),
        Command::Cache { action } => cache(&cache_dir, action),
    }
}

fn rational(flag: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn parse_variant(s: &str) -> CliResult<Variant> {
    s.parse().map_err(Failure::from)
}

fn check_order(n: u32) -> CliResult<()> {
    if n > MAX_ORDER {
        return Err(usage(format!("--max-weight {n} exceeds the limit of {MAX_ORDER}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalOutput {
    format: u32,
    index: String,
    variant: String,
    t: String,
    x: String,
    y: String,
    value: String,
    error: f64,
}

fn eval(engine: &ZetaEngine, a: &EvalArgs) -> CliResult<ExitCode> {
    let k: Index = a.index.parse()?;
    let variant = parse_variant(&a.variant)?;
    let (t, x, y) = (rational("t", &a.point.t)?, rational("x", &a.point.x)?, rational("y", &a.point.y)?);
    let symmetric = matches!(variant, Variant::S | Variant::SStar);
    if !k.is_admissible() && !symmetric && !a.reg {
        return Err(usage(format!(
            "index {k} is not admissible; pass --reg to use the regularized value"
        )));
    }
    if a.symbolic_t {
        if variant != Variant::Plain {
            return Err(usage("--symbolic-t is only available for the plain variant"));
        }
        println!("{}", engine.zeta_reg_sym(&k)?.render("T"));
        return Ok(ExitCode::SUCCESS);
    }
    let (tv, xv, yv) = (
        RealValue::from_rational(&t),
        RealValue::from_rational(&x),
        RealValue::from_rational(&y),
    );
    let value = match variant {
        Variant::Plain => engine.zeta_reg0(&k)?,
        Variant::Star => engine.zeta_star(&k)?,
        Variant::T => engine.zeta_t(&k, &tv)?,
        Variant::Ipmzv => engine.ipmzv(&k, &tv, &xv, &yv)?,
        Variant::S => engine.szv(&k, false)?,
        Variant::SStar => engine.szv(&k, true)?,
    };
    match a.format {
        Format::Json => {
            let out = EvalOutput {
                format: REPORT_FORMAT,
                index: k.to_string(),
                variant: variant.to_string(),
                t: format_rational(&t),
                x: format_rational(&x),
                y: format_rational(&y),
                value: format_dd(value.value(), 30),
                error: value.error(),
            };
            println!("{}", serde_json::to_string_pretty(&out).map_err(MzvError::from)?);
        }
        _ => println!("{} ± {:.1e}", format_dd(value.value(), 30), value.error()),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PhiRow {
    i: u32,
    j: u32,
    k: u32,
    coefficient: String,
    error_bound: f64,
}

fn phi(engine: &ZetaEngine, a: &PhiArgs, format: Format) -> CliResult<ExitCode> {
    check_order(a.max_weight)?;
    let variant = parse_variant(&a.variant)?;
    let (t, x, y) = (rational("t", &a.point.t)?, rational("x", &a.point.x)?, rational("y", &a.point.y)?);
    let params = GFParams {
        variant,
        t,
        x,
        y,
        order: a.max_weight,
    };
    let series = phi_bruteforce(engine, &params)?;
    let rows: Vec<PhiRow> = series
        .iter()
        .map(|(e, c)| PhiRow {
            i: e.i,
            j: e.j,
            k: e.k,
            coefficient: format_dd(c.value(), 25),
            error_bound: c.error_bound(),
        })
        .collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Csv => {
            writeln!(out, "i,j,k,coefficient,error_bound")?;
            for r in &rows {
                writeln!(out, "{},{},{},{},{:e}", r.i, r.j, r.k, r.coefficient, r.error_bound)?;
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                format: u32,
                variant: String,
                order: u32,
                coefficients: &'a [PhiRow],
            }
            let doc = Doc {
                format: REPORT_FORMAT,
                variant: variant.to_string(),
                order: a.max_weight,
                coefficients: &rows,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(MzvError::from)?)?;
        }
        Format::Text => {
            let is_zero = |s: &str| s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.');
            let mut shown = 0;
            for r in rows.iter().filter(|r| !is_zero(&r.coefficient)) {
                writeln!(out, "X^{} Y^{} Z^{}  {}  ± {:.1e}", r.i, r.j, r.k, r.coefficient, r.error_bound)?;
                shown += 1;
            }
            if shown == 0 {
                writeln!(out, "all coefficients up to order {} vanish", a.max_weight)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(engine: &ZetaEngine, a: &VerifyArgs) -> CliResult<ExitCode> {
    if let Some(n) = a.max_weight {
        check_order(n)?;
    }
    if a.format == Format::Csv {
        return Err(usage("verify supports --format json or text"));
    }
    let names: Vec<IdentityName> = if a.all {
        IdentityName::ALL.to_vec()
    } else {
        a.identity.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let config = VerifyConfig {
        max_weight: a.max_weight,
        timing: a.timing,
    };
    let doc = ReportDocument::new(run_many(engine, &names, &config));
    match a.format {
        Format::Json => println!("{}", doc.to_json()?),
        _ => {
            for r in &doc.reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                println!(
                    "{status} {:<16} max_dev={:.3e} tolerance={:.0e} checks={}",
                    r.identity.name(),
                    r.max_dev,
                    r.tolerance,
                    r.deviations.len()
                );
                for d in r.failures() {
                    println!("    {} dev={:.3e} tolerance={:.0e}", d.key, d.dev, d.tolerance);
                }
                for e in &r.excluded {
                    println!("    excluded: {e}");
                }
            }
        }
    }
    Ok(if doc.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cache(dir: &std::path::Path, action: &CacheAction) -> CliResult<ExitCode> {
    match action {
        CacheAction::Stats => {
            let stats = ZetaCache::open(dir)?.stats()?;
            println!("path: {}\nentries: {}\nbytes: {}", stats.path, stats.entries, stats.bytes);
        }
        CacheAction::Clear => {
            if clear_cache(dir)? {
                println!("cleared {}", dir.display());
            } else {
                println!("no cache at {}", dir.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
