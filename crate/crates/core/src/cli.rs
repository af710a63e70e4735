//! The `kaczmarz` command-line front end.
//!
//! Exit codes: 0 success, 1 a bound check failed, 2 iteration cap reached,
//! 64 bad flags or parameters, 65 bad input data (or SVD size cap),
//! 66 input cannot be opened, 73 output cannot be created.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{self, CheckStatus, FactorContext, SVD_SIZE_CAP};
use crate::bench::{bench_problem, BenchOptions, BenchTable};
use crate::error::Error;
use crate::io::{
    gen_gaussian, make_consistent_problem, read_matrix_market, write_matrix_market_array,
    write_report_csv, write_solve_report_csv, write_solve_report_jsonl, Problem,
};
use crate::linalg::MatrixHandle;
use crate::solvers::{solve, Method, SolveConfig, StopMode, Strategy, TraceLevel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ITERATION_CAP: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_CANT_CREATE: i32 = 73;

/// Environment variable that overrides `--seed-base`.
pub const SEED_ENV: &str = "KACZMARZ_SEED";

/// XORed into a generated matrix's seed to seed its x★.
const SOLUTION_SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Parser)]
#[command(name = "kaczmarz", version, about = "Greedy Kaczmarz solvers and bound verification")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one solve and write its report.
    Solve(SolveArgs),
    /// Compare methods over repeated runs and write a CSV table.
    Bench(BenchArgs),
    /// Run GK with a full trace and check it against the convergence bounds.
    Bounds(BoundsArgs),
    /// Write a seeded Gaussian matrix as a Matrix Market array file.
    Gen(GenArgs),
}

/// A Matrix Market path or `gen:MxN:seed`.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSource {
    Generated { rows: usize, cols: usize, seed: u64 },
    File(PathBuf),
}

impl FromStr for MatrixSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let Some(rest) = s.strip_prefix("gen:") else {
            return Ok(MatrixSource::File(PathBuf::from(s)));
        };
        let bad = || format!("expected gen:MxN:seed, got '{s}'");
        let (dims, seed) = rest.split_once(':').ok_or_else(bad)?;
        let (rows, cols) = dims.split_once(['x', 'X']).ok_or_else(bad)?;
        let rows: usize = rows.parse().map_err(|_| bad())?;
        let cols: usize = cols.parse().map_err(|_| bad())?;
        if rows == 0 || cols == 0 {
            return Err(format!("matrix dimensions must be positive in '{s}'"));
        }
        Ok(MatrixSource::Generated {
            rows,
            cols,
            seed: seed.parse().map_err(|_| bad())?,
        })
    }
}

impl std::fmt::Display for MatrixSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixSource::Generated { rows, cols, seed } => write!(f, "gen:{rows}x{cols}:{seed}"),
            MatrixSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Rk,
    Grk,
    Rgrk,
    Gk,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Rk => Method::Rk,
            MethodArg::Grk => Method::Grk,
            MethodArg::Rgrk => Method::Rgrk,
            MethodArg::Gk => Method::Gk,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TraceArg {
    None,
    Indices,
    Full,
}

impl From<TraceArg> for TraceLevel {
    fn from(t: TraceArg) -> Self {
        match t {
            TraceArg::None => TraceLevel::None,
            TraceArg::Indices => TraceLevel::Indices,
            TraceArg::Full => TraceLevel::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StopArg {
    /// Relative solution error against x★.
    Res,
    /// Relative residual ‖r‖/‖b‖.
    Residual,
}

impl From<StopArg> for StopMode {
    fn from(s: StopArg) -> Self {
        match s {
            StopArg::Res => StopMode::KnownSolution,
            StopArg::Residual => StopMode::RelativeResidual,
        }
    }
}

#[derive(Debug, Args)]
struct StopArgs {
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_iters: usize,
    #[arg(long, value_enum, default_value_t = StopArg::Res)]
    stop: StopArg,
}

impl StopArgs {
    fn config(&self, trace: TraceLevel) -> SolveConfig {
        SolveConfig {
            max_iters: self.max_iters,
            res_tol: self.tol,
            stop_mode: self.stop.into(),
            trace,
        }
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    matrix: MatrixSource,
    #[arg(long, value_enum)]
    method: MethodArg,
    /// RGRK relaxation parameter in [0, 1].
    #[arg(long, default_value_t = Strategy::DEFAULT_THETA)]
    theta: f64,
    /// PRNG seed of the randomized methods; also seeds x★ for file inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TraceArg::None)]
    trace: TraceArg,
    /// JSON-lines report, or a one-row CSV summary when the path ends in `.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    stop: StopArgs,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, required = true)]
    matrix: Vec<MatrixSource>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Grk, MethodArg::Rgrk, MethodArg::Gk])]
    methods: Vec<MethodArg>,
    #[arg(long, default_value_t = 50)]
    repeats: usize,
    #[arg(long, default_value_t = Strategy::DEFAULT_THETA)]
    theta: f64,
    #[arg(long, default_value_t = 0)]
    seed_base: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    stop: StopArgs,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    matrix: MatrixSource,
    /// Seeds x★ for file inputs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// RGRK θ used for the expected-factor column.
    #[arg(long, default_value_t = Strategy::DEFAULT_THETA)]
    theta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    stop: StopArgs,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A message plus the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter(_) | Error::Config(_) => EXIT_USAGE,
            Error::Io(_) => EXIT_CANT_CREATE,
            _ => EXIT_DATA,
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first) and runs the command, writing
/// human-readable output to `stdout` and diagnostics to `stderr`.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK {
                write!(stdout, "{}", e.render())
            } else {
                write!(stderr, "{}", e.render())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(&a, stdout),
        Command::Bench(a) => cmd_bench(&a, stdout, stderr),
        Command::Bounds(a) => cmd_bounds(&a, stdout),
        Command::Gen(a) => cmd_gen(&a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "kaczmarz: {}", f.message);
            f.code
        }
    }
}

fn open_input(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::new(EXIT_NO_INPUT, format!("cannot open {}: {e}", path.display())))
}

fn create_output(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::new(EXIT_CANT_CREATE, format!("cannot create {}: {e}", path.display())))
}

fn load_matrix(source: &MatrixSource) -> CliResult<MatrixHandle<f64>> {
    match source {
        MatrixSource::Generated { rows, cols, seed } => Ok(gen_gaussian(*rows, *cols, *seed)?),
        MatrixSource::File(path) => {
            let reader = open_input(path)?;
            read_matrix_market(reader).map_err(|e| match e {
                Error::Io(io) => Failure::new(EXIT_NO_INPUT, format!("cannot read {}: {io}", path.display())),
                other => Failure::new(EXIT_DATA, format!("{}: {other}", path.display())),
            })
        }
    }
}

/// Builds b = A·x★ with x★ ~ N(0, I). When A has fewer independent rows
/// than columns (always the case for m < n), x★ is replaced by A†b, the
/// solution every method reaches from x₀ = 0; this needs a full SVD and is
/// skipped beyond the size cap.
pub fn build_problem(source: &MatrixSource, seed: u64) -> CliResult<Problem<f64>> {
    let matrix = load_matrix(source)?;
    let solution_seed = match source {
        MatrixSource::Generated { seed, .. } => *seed ^ SOLUTION_SEED_MIX,
        MatrixSource::File(_) => seed ^ SOLUTION_SEED_MIX,
    };
    let (m, n) = (matrix.rows(), matrix.cols());
    let probe = m < n || matches!(source, MatrixSource::File(_));
    let problem = make_consistent_problem(matrix, solution_seed)?.with_label(source.to_string());
    if probe && m.min(n) <= SVD_SIZE_CAP {
        let rank = analysis::lambda_min_pos(&problem.matrix)?.rank;
        if rank < n {
            return Ok(analysis::with_min_norm_reference(problem)?);
        }
    } else if probe {
        log::warn!("{source}: too large to check the rank; RES uses the drawn x★");
    }
    Ok(problem)
}

fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    let strategy = Strategy::new(args.method.into(), args.theta, args.seed)?;
    let config = args.stop.config(args.trace.into());
    config.validate()?;
    let problem = build_problem(&args.matrix, args.seed)?;
    let report = solve(&problem, &strategy, &config)?;

    match &args.out {
        Some(path) => {
            let mut sink = create_output(path)?;
            let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
            if is_csv {
                write_solve_report_csv(&problem.label, &report, &mut sink)?;
            } else {
                write_solve_report_jsonl(&problem.label, &report, &mut sink)?;
            }
            sink.flush().map_err(Error::from)?;
        }
        None => write_solve_report_jsonl(&problem.label, &report, &mut *stdout)?,
    }
    Ok(if report.converged {
        EXIT_OK
    } else {
        EXIT_ITERATION_CAP
    })
}

fn seed_base(args: &BenchArgs) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::new(EXIT_USAGE, format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(args.seed_base),
    }
}

fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    if args.repeats == 0 {
        return Err(Failure::new(EXIT_USAGE, "--repeats must be at least 1"));
    }
    let mut methods: Vec<Method> = Vec::new();
    for m in &args.methods {
        let m = Method::from(*m);
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    let options = BenchOptions {
        methods,
        repeats: args.repeats,
        theta: args.theta,
        seed_base: seed_base(args)?,
        config: args.stop.config(TraceLevel::None),
    };
    Strategy::rgrk(options.theta, 0)?;
    options.config.validate()?;

    let mut table = BenchTable {
        repeats: options.repeats,
        rows: Vec::new(),
    };
    let mut failures = 0;
    for source in &args.matrix {
        let rows = build_problem(source, options.seed_base)
            .and_then(|mut p| bench_problem(&mut p, &options).map_err(Failure::from));
        match rows {
            Ok(rows) => table.rows.extend(rows),
            Err(f) => {
                failures += 1;
                log::error!("{source}: {}", f.message);
                let _ = writeln!(stderr, "kaczmarz: skipping {source}: {}", f.message);
            }
        }
    }
    match &args.out {
        Some(path) => {
            let mut sink = create_output(path)?;
            write_report_csv(&table, &mut sink)?;
        }
        None => write_report_csv(&table, &mut *stdout)?,
    }
    Ok(if failures == args.matrix.len() {
        EXIT_DATA
    } else {
        EXIT_OK
    })
}

fn cmd_bounds(args: &BoundsArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    Strategy::rgrk(args.theta, 0)?;
    let config = args.stop.config(TraceLevel::Full);
    config.validate()?;
    let problem = build_problem(&args.matrix, args.seed)?;
    let (m, n) = (problem.matrix.rows(), problem.matrix.cols());
    if m.min(n) > SVD_SIZE_CAP {
        return Err(Failure::new(
            EXIT_DATA,
            format!("bounds need a full SVD; min(m, n) = {} exceeds {SVD_SIZE_CAP}", m.min(n)),
        ));
    }
    let problem = analysis::with_min_norm_reference(problem)?;
    let report = solve(&problem, &Strategy::gk(), &config)?;
    let ctx = FactorContext::new(&problem.matrix)?;
    let bounds = analysis::bound_report(&problem, &report, args.theta)?;
    let verification = analysis::verify_run_with(&problem, &report, Some(&ctx))?;

    let mut out = String::new();
    let line = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(&mut out, format!("matrix {} ({m}x{n}), rank {}", problem.label, bounds.rank));
    line(&mut out, format!("GK iterations {} converged {}", report.iterations, report.converged));
    line(&mut out, format!("lambda_min {:.6e}  alpha {}  beta {:.6e}", bounds.lambda_min, bounds.alpha, bounds.beta));
    line(&mut out, format!("initial factor {:.6e}", bounds.factor_initial));
    match &bounds.factor_step {
        Some(f) if !f.is_empty() => {
            let worst = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            line(&mut out, format!("step factor (largest) {worst:.6e}"));
        }
        Some(_) => line(&mut out, "step factor: no steps after the first".into()),
        None => line(&mut out, "step factor: not applicable (m = 1)".into()),
    }
    match bounds.factor_envelope {
        Some(e) => line(&mut out, format!("envelope at k = {} {e:.6e}", report.iterations)),
        None => line(&mut out, "envelope: not applicable (m = 1)".into()),
    }
    if let (Some(g), Some(r)) = (bounds.grk_factor, bounds.rgrk_factor) {
        line(&mut out, format!("GRK expected factor {g:.6e}  RGRK expected factor {r:.6e} (theta {})", args.theta));
    }
    for check in &verification.checks {
        let text = match &check.status {
            CheckStatus::Passed => format!("PASS {} (worst margin {:.3e})", check.name, check.worst_margin),
            CheckStatus::Failed { iteration } => format!(
                "FAIL {} at iteration {iteration} (worst margin {:.3e})",
                check.name, check.worst_margin
            ),
            CheckStatus::Skipped { reason } => format!("N/A  {} ({reason})", check.name),
        };
        line(&mut out, text);
    }
    stdout.write_all(out.as_bytes()).map_err(Error::from)?;

    if let Some(path) = &args.out {
        let mut sink = create_output(path)?;
        let doc = json!({
            "label": problem.label,
            "iterations": report.iterations,
            "converged": report.converged,
            "bounds": bounds,
            "verification": verification,
        });
        serde_json::to_writer_pretty(&mut sink, &doc).map_err(Error::from)?;
        writeln!(sink).map_err(Error::from)?;
        sink.flush().map_err(Error::from)?;
    }
    Ok(if verification.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_gen(args: &GenArgs, stdout: &mut dyn Write) -> CliResult<i32> {
    if args.rows == 0 || args.cols == 0 {
        return Err(Failure::new(EXIT_USAGE, "--rows and --cols must be positive"));
    }
    let a: MatrixHandle<f64> = gen_gaussian(args.rows, args.cols, args.seed)?;
    match &args.out {
        Some(path) => {
            let mut sink = create_output(path)?;
            write_matrix_market_array(&a, &mut sink)?;
        }
        None => write_matrix_market_array(&a, &mut *stdout)?,
    }
    Ok(EXIT_OK)
}
