//! Command-line front-end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error (including
//! an exhaustive solve over the qubit cap), 3 I/O or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use qubosat_core::formula::{clause_count_for_ratio, random_3sat, CRITICAL_RATIO};
use qubosat_core::solve::{solve_exhaustive_with_cap, solve_sa, DEFAULT_EXHAUSTIVE_CAP};
use qubosat_core::{
    ChancellorParams, ChoiParams, Formula, Method, MethodKind, SaParams, SolveError, Translation,
};

use crate::dimacs::{parse_dimacs, write_dimacs};
use crate::experiment::{
    comparison_csv, comparison_table, coupling_fit, gnuplot_table, run_comparison, run_scaling,
    scaling_csv, scaling_summary, ComparisonConfig, ScalingConfig, Solver,
};
use crate::json::{read_qubo_input, translation_to_json, QuboInput, SaConfig, SolveReport};
use crate::verify::{expected_qubits, run_verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qubosat", version, about = "3-SAT / MAX-3-SAT to QUBO translation, solving and experiments")]
pub struct Cli {
    /// Base seed for every random choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Reject clauses that repeat a variable (default).
    #[arg(long, global = true, overrides_with = "permissive")]
    strict: bool,
    /// Accept clauses that repeat a variable when parsing.
    #[arg(long, global = true, overrides_with = "strict")]
    permissive: bool,
    /// Output format for documents and records.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random strict 3-SAT formula in DIMACS form.
    Gen(GenArgs),
    /// Translate a DIMACS formula into a QUBO.
    Translate(TranslateArgs),
    /// Solve a QUBO (JSON) or a formula (DIMACS + --method).
    Solve(SolveArgs),
    /// Check translations against brute-force oracles on random formulas.
    Verify(VerifyArgs),
    /// Coupling counts of random critical-ratio formulas, as CSV.
    Scaling(ScalingArgs),
    /// Satisfied clauses of solver results per method, as CSV plus a summary table.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Number of variables.
    #[arg(short = 'n')]
    n: usize,
    /// Number of clauses.
    #[arg(short = 'm', conflicts_with = "ratio")]
    m: Option<usize>,
    /// Clauses per variable; m = ceil(ratio * n). Default when -m is absent: 4.2.
    #[arg(long)]
    ratio: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Default, Args)]
struct MethodArgs {
    /// Choi incentive X.
    #[arg(long)]
    choi_x: Option<i64>,
    /// Choi same-clause penalty Y.
    #[arg(long)]
    choi_y: Option<i64>,
    /// Choi conflict penalty Z.
    #[arg(long)]
    choi_z: Option<i64>,
    /// Chancellor satisfied/falsified gap g.
    #[arg(long)]
    chancellor_g: Option<i64>,
    /// Chancellor pair coupling J (J_a = 2J).
    #[arg(long)]
    chancellor_j: Option<i64>,
    /// Give every clause its own aux qubit in the n+m translation.
    #[arg(long)]
    no_share_aux: bool,
}

impl MethodArgs {
    fn build(&self, kind: MethodKind) -> Result<Method, CliError> {
        let method = match kind {
            MethodKind::Choi => {
                let d = ChoiParams::default();
                let p = ChoiParams {
                    x: self.choi_x.unwrap_or(d.x),
                    y: self.choi_y.unwrap_or(d.y),
                    z: self.choi_z.unwrap_or(d.z),
                };
                p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Method::Choi(p)
            }
            MethodKind::Chancellor => {
                let d = ChancellorParams::default();
                let j = self.chancellor_j.unwrap_or(d.j);
                let p = ChancellorParams {
                    g: self.chancellor_g.unwrap_or(d.g),
                    j,
                    j_a: 2 * j,
                    ..d
                };
                p.validate().map_err(|e| CliError::Usage(e.to_string()))?;
                Method::Chancellor(p)
            }
            MethodKind::Nuesslein2nm => Method::Nuesslein2nm,
            MethodKind::NuessleinNm => Method::NuessleinNm {
                share_aux: !self.no_share_aux,
            },
        };
        Ok(method)
    }
}

#[derive(Debug, Args)]
struct TranslateArgs {
    /// DIMACS input file.
    input: PathBuf,
    /// Translation method: choi, chancellor, nuesslein2nm or nuessleinnm.
    #[arg(long)]
    method: MethodKind,
    #[command(flatten)]
    params: MethodArgs,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolverKind {
    Exhaustive,
    Sa,
}

#[derive(Debug, Args)]
struct SaArgs {
    /// Sweeps per restart.
    #[arg(long)]
    sweeps: Option<usize>,
    /// Independent restarts; the best result is kept.
    #[arg(long)]
    restarts: Option<usize>,
    /// Starting temperature of the geometric schedule.
    #[arg(long)]
    t_initial: Option<f64>,
    /// Final temperature of the geometric schedule.
    #[arg(long)]
    t_final: Option<f64>,
    /// JSON file with any of sweeps, restarts, t_initial, t_final, seed.
    #[arg(long)]
    sa_config: Option<PathBuf>,
}

impl SaArgs {
    fn params(&self, seed: Option<u64>) -> Result<SaParams, CliError> {
        let mut config = match &self.sa_config {
            Some(path) => SaConfig::from_json(&read_text(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
            None => SaConfig::default(),
        };
        if let Some(v) = self.sweeps {
            config.sweeps = v;
        }
        if let Some(v) = self.restarts {
            config.restarts = v;
        }
        if let Some(v) = self.t_initial {
            config.t_initial = v;
        }
        if let Some(v) = self.t_final {
            config.t_final = v;
        }
        if let Some(v) = seed {
            config.seed = v;
        }
        let params = SaParams::from(config);
        params
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(params)
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// QUBO or translation JSON, or a DIMACS formula (needs --method).
    input: PathBuf,
    /// Translation method, required for DIMACS input.
    #[arg(long)]
    method: Option<MethodKind>,
    #[command(flatten)]
    params: MethodArgs,
    #[arg(long, value_enum, default_value = "sa")]
    solver: SolverKind,
    /// Largest qubit count the exhaustive solver accepts.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    cap: usize,
    #[command(flatten)]
    sa: SaArgs,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Inclusive variable-count range `lo:hi`.
    #[arg(long, default_value = "3:6")]
    n_range: String,
    /// Inclusive clause-count range `lo:hi`.
    #[arg(long, default_value = "1:8")]
    m_range: String,
    /// Number of random formulas.
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Comma-separated methods; all four by default.
    #[arg(long)]
    methods: Option<String>,
}

#[derive(Debug, Args)]
struct ScalingArgs {
    /// Variable counts: `lo:hi:step`, `lo:hi` or a comma-separated list.
    #[arg(long = "n", default_value = "20:200:20")]
    n: String,
    /// Formulas per size.
    #[arg(long, default_value_t = 20)]
    replicates: usize,
    /// Comma-separated methods.
    #[arg(long, default_value = "chancellor,nuessleinnm")]
    methods: String,
    /// Clauses per variable; m = ceil(ratio * n).
    #[arg(long, default_value_t = CRITICAL_RATIO)]
    ratio: f64,
    #[command(flatten)]
    params: MethodArgs,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Also write a gnuplot-compatible summary table here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    /// Comma-separated `NxM` sizes.
    #[arg(long, default_value = "5x21,10x42,12x50")]
    sizes: String,
    /// Formulas per size.
    #[arg(long, default_value_t = 20)]
    replicates: usize,
    /// Comma-separated methods; all four by default.
    #[arg(long)]
    methods: Option<String>,
    #[command(flatten)]
    params: MethodArgs,
    #[arg(long, value_enum, default_value = "sa")]
    solver: SolverKind,
    /// Largest qubit count the exhaustive solver accepts.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    cap: usize,
    #[command(flatten)]
    sa: SaArgs,
    /// Largest n for which the brute-force optimum is computed.
    #[arg(long, default_value_t = 24)]
    oracle_cap: usize,
    /// Output file; standard output when absent.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    /// Also write the summary table here.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Input(String),
    VerifyFailed,
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Input(_) => EXIT_IO,
            CliError::VerifyFailed => EXIT_VERIFY_FAILED,
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

struct Io<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    /// Writes `text` to `path`, or to stdout without one.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }

    /// Human-oriented notes go to stdout when the data went to a file, and to
    /// stderr when stdout carries the data.
    fn note(&mut self, data_on_stdout: bool, text: &str) {
        let w: &mut dyn Write = if data_on_stdout {
            &mut *self.stderr
        } else {
            &mut *self.stdout
        };
        let _ = w.write_all(text.as_bytes());
    }
}

/// Parses `lo:hi` (inclusive).
pub fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("range {s:?} must look like lo:hi"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

/// Parses `lo:hi:step`, `lo:hi` or `a,b,c` into a list of values.
pub fn parse_values(s: &str) -> Result<Vec<usize>, String> {
    if !s.contains(':') {
        return s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad value {t:?} in {s:?}")))
            .collect();
    }
    let parts: Vec<&str> = s.split(':').collect();
    let (range, step) = match parts.as_slice() {
        [lo, hi] => (format!("{lo}:{hi}"), 1),
        [lo, hi, step] => (
            format!("{lo}:{hi}"),
            step.trim().parse().map_err(|_| format!("bad step in {s:?}"))?,
        ),
        _ => return Err(format!("range {s:?} must look like lo:hi[:step]")),
    };
    if step == 0 {
        return Err(format!("zero step in {s:?}"));
    }
    let (lo, hi) = parse_range(&range)?;
    Ok((lo..=hi).step_by(step).collect())
}

/// Parses `5x21,10x42`.
pub fn parse_sizes(s: &str) -> Result<Vec<(usize, usize)>, String> {
    s.split(',')
        .map(|t| {
            let (n, m) = t
                .trim()
                .split_once('x')
                .ok_or_else(|| format!("size {t:?} must look like NxM"))?;
            let n = n.parse().map_err(|_| format!("bad variable count in {t:?}"))?;
            let m = m.parse().map_err(|_| format!("bad clause count in {t:?}"))?;
            Ok((n, m))
        })
        .collect()
}

fn parse_methods(s: &str, params: &MethodArgs) -> Result<Vec<Method>, CliError> {
    s.split(',')
        .map(|t| {
            let kind: MethodKind = t.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "unknown method {t:?} (expected choi, chancellor, nuesslein2nm or nuessleinnm)"
                ))
            })?;
            params.build(kind)
        })
        .collect()
}

fn all_methods(params: &MethodArgs) -> Result<Vec<Method>, CliError> {
    MethodKind::ALL.iter().map(|&k| params.build(k)).collect()
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    let mut io = Io { stdout, stderr };
    match dispatch(&cli, &mut io) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            match &e {
                CliError::Usage(msg) | CliError::Io(msg) | CliError::Input(msg) => {
                    let _ = writeln!(io.stderr, "error: {msg}");
                }
                CliError::VerifyFailed => {}
            }
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, io: &mut Io<'_>) -> Result<(), CliError> {
    let strict = !cli.permissive;
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, seed, io),
        Command::Translate(a) => cmd_translate(a, strict, cli.format, io),
        Command::Solve(a) => cmd_solve(a, strict, cli.seed, cli.format, io),
        Command::Verify(a) => cmd_verify(a, seed, io),
        Command::Scaling(a) => cmd_scaling(a, seed, cli.format, io),
        Command::Compare(a) => cmd_compare(a, seed, cli.format, io),
    }
}

fn cmd_gen(a: &GenArgs, seed: u64, io: &mut Io<'_>) -> Result<(), CliError> {
    let m = match a.m {
        Some(m) => m,
        None => {
            let ratio = a.ratio.unwrap_or(CRITICAL_RATIO);
            if !(ratio.is_finite() && ratio >= 0.0) {
                return Err(CliError::Usage(format!("invalid ratio {ratio}")));
            }
            clause_count_for_ratio(a.n, ratio)
        }
    };
    let f = random_3sat(a.n, m, seed).map_err(|e| CliError::Usage(e.to_string()))?;
    io.emit(a.out.as_deref(), &write_dimacs(&f))
}

fn load_formula(path: &Path, strict: bool) -> Result<Formula, CliError> {
    parse_dimacs(&read_text(path)?, strict)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn translate(method: &Method, f: &Formula) -> Result<Translation, CliError> {
    method.translate(f).map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_translate(
    a: &TranslateArgs,
    strict: bool,
    format: Option<Format>,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let f = load_formula(&a.input, strict)?;
    let method = a.params.build(a.method)?;
    let t = translate(&method, &f)?;
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => translation_to_json(&t) + "\n",
        Format::Csv => {
            let mut out = String::from("i,j,w\n");
            for (i, j, w) in t.qubo.entries() {
                out.push_str(&format!("{i},{j},{w}\n"));
            }
            out
        }
    };
    io.emit(a.out.as_deref(), &text)?;
    let note = format!(
        "{} logical qubits, {} couplings\n",
        t.k(),
        t.qubo.coupling_count()
    );
    io.note(a.out.is_none(), &note);
    Ok(())
}

fn cmd_solve(
    a: &SolveArgs,
    strict: bool,
    seed: Option<u64>,
    format: Option<Format>,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let text = read_text(&a.input)?;
    let (input, formula) = if text.trim_start().starts_with('{') {
        let input = read_qubo_input(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
        (input, None)
    } else {
        let kind = a.method.ok_or_else(|| {
            CliError::Usage("solving a DIMACS formula needs --method".into())
        })?;
        let f = parse_dimacs(&text, strict)
            .map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
        let t = translate(&a.params.build(kind)?, &f)?;
        (QuboInput::Translation(t), Some(f))
    };
    let q = input.qubo();
    let (result, solver) = match a.solver {
        SolverKind::Exhaustive => (
            solve_exhaustive_with_cap(q, a.cap).map_err(|e| match e {
                SolveError::OverCap { k, cap } => CliError::Usage(format!(
                    "refusing exhaustive search over {k} qubits (cap {cap}); use --solver sa"
                )),
                other => CliError::Input(other.to_string()),
            })?,
            "exhaustive",
        ),
        SolverKind::Sa => (
            solve_sa(q, &a.sa.params(seed)?).map_err(|e| CliError::Usage(e.to_string()))?,
            "sa",
        ),
    };
    let mut report = SolveReport::new(&result, solver);
    if let QuboInput::Translation(t) = &input {
        let assignment = t
            .decode(&result.best)
            .map_err(|e| CliError::Input(e.to_string()))?;
        report.method = Some(t.kind().name().to_string());
        report.assignment = Some(assignment.values().iter().map(|&b| if b { '1' } else { '0' }).collect());
        if let Some(f) = &formula {
            report.satisfied = Some(f.satisfied_count(&assignment));
            report.m = Some(f.num_clauses());
        }
    }
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => report.to_json() + "\n",
        Format::Csv => {
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            format!(
                "best_bits,energy,evaluations,satisfied,m\n{},{},{},{},{}\n",
                report.best_bits,
                report.energy,
                report.evaluations,
                opt(report.satisfied),
                opt(report.m)
            )
        }
    };
    io.emit(a.out.as_deref(), &text)
}

fn cmd_verify(a: &VerifyArgs, seed: u64, io: &mut Io<'_>) -> Result<(), CliError> {
    let n_range = parse_range(&a.n_range).map_err(CliError::Usage)?;
    let m_range = parse_range(&a.m_range).map_err(CliError::Usage)?;
    if n_range.0 < 3 {
        return Err(CliError::Usage("strict formulas need at least 3 variables".into()));
    }
    let no_params = MethodArgs::default();
    let methods = match &a.methods {
        Some(s) => parse_methods(s, &no_params)?,
        None => all_methods(&no_params)?,
    };
    let config = VerifyConfig {
        n_range,
        m_range,
        count: a.count,
        methods,
        seed,
    };
    let largest = config
        .methods
        .iter()
        .map(|method| expected_qubits(method, n_range.1, m_range.1).0)
        .max()
        .unwrap_or(0);
    if largest > DEFAULT_EXHAUSTIVE_CAP {
        return Err(CliError::Usage(format!(
            "largest translation would need {largest} qubits, over the exhaustive cap of {DEFAULT_EXHAUSTIVE_CAP}"
        )));
    }
    if a.count == 0 {
        let _ = writeln!(io.stderr, "warning: --count 0, nothing to verify");
    }
    let report = run_verify(&config);
    for c in &report.failures {
        let _ = writeln!(
            io.stdout,
            "FAIL formula {} [{}]: {}\n{}",
            c.index,
            c.method.name(),
            c.reason,
            c.dimacs
        );
    }
    let _ = writeln!(
        io.stdout,
        "{} formulas, {} checks, {} failures",
        report.formulas,
        report.checks,
        report.failures.len()
    );
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn cmd_scaling(a: &ScalingArgs, seed: u64, format: Option<Format>, io: &mut Io<'_>) -> Result<(), CliError> {
    let n_values = parse_values(&a.n).map_err(CliError::Usage)?;
    if n_values.iter().any(|&n| n < 3) {
        return Err(CliError::Usage("variable counts must be at least 3".into()));
    }
    let config = ScalingConfig {
        n_values,
        replicates: a.replicates,
        methods: parse_methods(&a.methods, &a.params)?,
        ratio: a.ratio,
        seed,
    };
    let records = run_scaling(&config).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => scaling_csv(&records),
        Format::Json => serde_json::to_string(&records).expect("serializable") + "\n",
    };
    io.emit(a.out.as_deref(), &text)?;
    let rows = scaling_summary(&records, MethodKind::NuessleinNm, MethodKind::Chancellor);
    let table = gnuplot_table(&rows);
    if let Some(path) = &a.summary {
        fs::write(path, &table).map_err(|e| io_err(path, e))?;
    }
    let mut note = table;
    for method in &config.methods {
        if let Some(fit) = coupling_fit(&records, method.kind()) {
            note.push_str(&format!(
                "# {}: couplings ~ {:.3} n + {:.1} (R^2 = {:.5})\n",
                method.kind().name(),
                fit.slope,
                fit.intercept,
                fit.r_squared
            ));
        }
    }
    io.note(a.out.is_none(), &note);
    Ok(())
}

fn cmd_compare(a: &CompareArgs, seed: u64, format: Option<Format>, io: &mut Io<'_>) -> Result<(), CliError> {
    let sizes = parse_sizes(&a.sizes).map_err(CliError::Usage)?;
    if sizes.iter().any(|&(n, _)| n < 3) {
        return Err(CliError::Usage("variable counts must be at least 3".into()));
    }
    let methods = match &a.methods {
        Some(s) => parse_methods(s, &a.params)?,
        None => all_methods(&a.params)?,
    };
    let solver = match a.solver {
        SolverKind::Sa => Solver::Anneal(a.sa.params(None)?),
        SolverKind::Exhaustive => Solver::Exhaustive { cap: a.cap },
    };
    let config = ComparisonConfig {
        sizes,
        replicates: a.replicates,
        methods,
        solver,
        oracle_cap: a.oracle_cap,
        seed,
    };
    let records = run_comparison(&config).map_err(|e| match e {
        crate::experiment::ExperimentError::Solve(SolveError::OverCap { k, cap }) => CliError::Usage(
            format!("refusing exhaustive search over {k} qubits (cap {cap}); use --solver sa"),
        ),
        other => CliError::Usage(other.to_string()),
    })?;
    let text = match format.unwrap_or(Format::Csv) {
        Format::Csv => comparison_csv(&records),
        Format::Json => serde_json::to_string(&records).expect("serializable") + "\n",
    };
    io.emit(a.out.as_deref(), &text)?;
    let table = comparison_table(&records).render();
    if let Some(path) = &a.summary {
        fs::write(path, &table).map_err(|e| io_err(path, e))?;
    }
    io.note(a.out.is_none(), &table);
    Ok(())
}
