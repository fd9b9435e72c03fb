//! Command-line front end. [`run`] is the whole program minus process exit.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{catalog, model_filiform, model_shape, parse_algebra, AlgebraError, AlgebraSpec};
use crate::ce::ce_complex;
use crate::dp::{dp_complex, Truncation};
use crate::report::{self, BettiReport, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker thread count.
pub const THREADS_VAR: &str = "SUPERCOHOM_THREADS";

#[derive(Parser, Debug)]
#[command(name = "supercohom", version, about = "Cohomology of nilpotent Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check parity and the graded Jacobi identity; report the nilindex.
    Validate(Common),
    /// Betti numbers up to --kmax (over F_p when --p is given).
    Betti(Common),
    /// Divided-power cohomology over the whole finite complex.
    Dph(Common),
    /// Cup products of basis classes.
    Products(Common),
    /// Cross-check a model algebra against the weight-space formulas.
    Oracle(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Catalog name, e.g. F22_3 or L2,1.
    #[arg(long, group = "source")]
    catalog: Option<String>,
    /// JSON algebra document.
    #[arg(long, group = "source")]
    file: Option<std::path::PathBuf>,
    /// Model algebra L_{n,m} given as n,m.
    #[arg(long, group = "source", value_parser = parse_pair)]
    model: Option<(usize, usize)>,
    /// Prime characteristic (> 3).
    #[arg(long)]
    p: Option<u64>,
    /// Truncation heights, one per odd generator; defaults to all ones.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<u32>>,
    #[arg(long, default_value_t = 8)]
    kmax: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Attach oracle dimensions (model algebras only).
    #[arg(long)]
    oracle: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Table => Format::Table,
        }
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected n,m but got {s:?}"))?;
    let n = a.trim().parse().map_err(|_| format!("bad n in {s:?}"))?;
    let m = b.trim().parse().map_err(|_| format!("bad m in {s:?}"))?;
    Ok((n, m))
}

/// Failure carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

impl From<crate::complex::ComplexError> for Failure {
    fn from(e: crate::complex::ComplexError) -> Self {
        use crate::complex::ComplexError::*;
        let code = match e {
            InvalidTruncation(_) | MixedTruncation | DenominatorDivisibleByP { .. } => EXIT_USAGE,
            _ => EXIT_DISAGREE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<crate::oracle::OracleError> for Failure {
    fn from(e: crate::oracle::OracleError) -> Self {
        usage(e.to_string())
    }
}

struct Loaded {
    id: String,
    spec: AlgebraSpec,
    model: Option<(usize, usize)>,
}

fn algebra_failure(e: AlgebraError) -> Failure {
    match e {
        AlgebraError::Validation(r) => Failure {
            code: EXIT_DISAGREE,
            message: format!("invalid algebra: {} violation(s), first: {}", r.violations.len(), r.violations[0]),
        },
        other => usage(other.to_string()),
    }
}

/// Loads the selected algebra; axioms are checked only when `check` is set.
fn load(c: &Common, check: bool) -> Result<Loaded, Failure> {
    let (id, spec, model) = if let Some(name) = &c.catalog {
        (name.clone(), catalog(name).map_err(algebra_failure)?, model_shape(name))
    } else if let Some(path) = &c.file {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let spec = parse_algebra(&text).map_err(algebra_failure)?;
        let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        (id, spec, None)
    } else if let Some((n, m)) = c.model {
        (format!("L{n},{m}"), model_filiform(n, m).map_err(algebra_failure)?, Some((n, m)))
    } else {
        return Err(usage("one of --catalog, --file, --model is required"));
    };
    if check {
        let v = spec.validate();
        if !v.is_valid() {
            return Err(algebra_failure(AlgebraError::Validation(v)));
        }
    }
    Ok(Loaded { id, spec, model })
}

fn bad_truncation(e: crate::complex::ComplexError) -> Failure {
    usage(format!("BadTruncation: {e}"))
}

fn truncation(c: &Common, spec: &AlgebraSpec) -> Result<Option<Truncation>, Failure> {
    match (c.p, &c.t) {
        (None, None) => Ok(None),
        (None, Some(_)) => Err(usage("--t requires --p")),
        (Some(p), None) => Truncation::ones(p, spec.odd_names().len()).map(Some).map_err(bad_truncation),
        (Some(p), Some(t)) => {
            if t.len() != spec.odd_names().len() {
                return Err(usage(format!(
                    "--t has {} entries but the algebra has {} odd generators",
                    t.len(),
                    spec.odd_names().len()
                )));
            }
            Truncation::new(p, t.clone()).map(Some).map_err(bad_truncation)
        }
    }
}

struct Output {
    body: String,
    code: i32,
}

fn elapsed(start: Instant, on: bool) -> Option<u64> {
    on.then(|| start.elapsed().as_millis() as u64)
}

fn cmd_validate(c: &Common) -> Result<Output, Failure> {
    let a = load(c, false)?;
    let r = report::validate_report(&a.id, &a.spec);
    let code = if r.valid { EXIT_OK } else { EXIT_DISAGREE };
    Ok(Output { body: report::render(&r, c.format.into()), code })
}

fn betti_code(r: &BettiReport) -> i32 {
    if r.agrees() {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    }
}

fn cmd_betti(c: &Common) -> Result<Output, Failure> {
    let start = Instant::now();
    let a = load(c, true)?;
    if c.oracle && a.model.is_none() {
        return Err(usage(format!("OracleUnavailable: {} is not a model algebra", a.id)));
    }
    let mut r = match truncation(c, &a.spec)? {
        None => report::betti_report(&a.id, &a.spec, c.kmax, if c.oracle { a.model } else { None })?,
        Some(trunc) => {
            if c.oracle {
                return Err(usage("OracleUnavailable: the oracle covers characteristic 0 only"));
            }
            let complex = dp_complex(&a.spec, &trunc)?;
            let kmax = complex.top_degree().map_or(c.kmax, |top| c.kmax.min(top));
            let dims = complex.betti_numbers(kmax)?;
            BettiReport {
                algebra: a.id.clone(),
                characteristic: trunc.p(),
                truncation: Some(trunc.heights().to_vec()),
                kmax,
                total: dims.iter().sum(),
                dims,
                oracle_dims: None,
                oracle_agrees: None,
                reference_dims: None,
                reference_agrees: None,
                reference_total: None,
                reference_total_agrees: None,
                reference_note: None,
                timing_ms: None,
            }
        }
    };
    r.timing_ms = elapsed(start, c.timing);
    Ok(Output { body: report::render(&r, c.format.into()), code: betti_code(&r) })
}

fn cmd_dph(c: &Common) -> Result<Output, Failure> {
    let start = Instant::now();
    let a = load(c, true)?;
    let trunc = truncation(c, &a.spec)?.ok_or_else(|| usage("dph requires --p"))?;
    let mut r = report::dph_report(&a.id, &a.spec, &trunc)?;
    r.timing_ms = elapsed(start, c.timing);
    Ok(Output { body: report::render(&r, c.format.into()), code: betti_code(&r) })
}

fn cmd_products(c: &Common) -> Result<Output, Failure> {
    let start = Instant::now();
    let a = load(c, true)?;
    let mut r = match truncation(c, &a.spec)? {
        None => report::product_report(&a.id, &ce_complex(&a.spec), c.kmax)?,
        Some(trunc) => report::product_report(&a.id, &dp_complex(&a.spec, &trunc)?, c.kmax)?,
    };
    r.timing_ms = elapsed(start, c.timing);
    let code = if r.supercommutative && r.associative { EXIT_OK } else { EXIT_DISAGREE };
    Ok(Output { body: report::render(&r, c.format.into()), code })
}

fn cmd_oracle(c: &Common) -> Result<Output, Failure> {
    let start = Instant::now();
    let a = load(c, true)?;
    let (n, m) = a
        .model
        .ok_or_else(|| usage(format!("NotModelAlgebra: {} is not of the form L_{{n,m}}", a.id)))?;
    let mut r = report::oracle_report(n, m, c.kmax)?;
    r.timing_ms = elapsed(start, c.timing);
    let code = if r.passed { EXIT_OK } else { EXIT_DISAGREE };
    Ok(Output { body: report::render(&r, c.format.into()), code })
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // A pool may already exist when run is called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (including the program name), writes the report to `out`
/// and diagnostics to `err`, and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::Validate(c) => cmd_validate(c),
        Command::Betti(c) => cmd_betti(c),
        Command::Dph(c) => cmd_dph(c),
        Command::Products(c) => cmd_products(c),
        Command::Oracle(c) => cmd_oracle(c),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.body.as_bytes());
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
