//! Command implementations behind the `ctseq` binary.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use ctseq::automaton::{
    build_rz, linrep_eval, minimize, shortest_zero_enum, shortest_zero_exact, to_linrep,
    zero_power_machine, MooreMachine, ShortestZeroOutcome, DEFAULT_STATE_CAP,
};
use ctseq::bounds::BoundReport;
use ctseq::laurent::{ct_pow_sequence, LaurentPoly};
use ctseq::search::{read_csv, run_experiment, Engine, ExperimentConfig, ExperimentResults};
use ctseq::{Error, Prime};

pub mod svg;
pub mod verify;

#[derive(Debug, Parser)]
#[command(
    name = "ctseq",
    version,
    about = "Constant term sequences modulo p and their automata"
)]
pub struct Cli {
    /// Laurent polynomial, e.g. "32t^2+13t+1+27t^-1+35t^-2".
    #[arg(long, global = true)]
    pub poly: Option<String>,
    #[arg(long, global = true)]
    pub prime: Option<u64>,
    /// Master seed for `search`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file (`search`) or directory (`plot`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqEngine {
    /// Direct expansion of `P^n · Q`.
    Oracle,
    Automaton,
    Linrep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Enum,
}

#[derive(Debug, Args)]
pub struct QArg {
    /// Multiplier `Q` in `ct(P^n · Q)`; defaults to 1.
    #[arg(long)]
    pub q: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first terms of `ct(P^n · Q) mod p`.
    Seq {
        #[arg(long, default_value_t = 20)]
        count: u64,
        #[arg(long, value_enum, default_value_t = SeqEngine::Automaton)]
        engine: SeqEngine,
        #[command(flatten)]
        q: QArg,
    },
    /// Print the first zero index, `none` or `cap-exceeded`.
    ShortestZero {
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = 50_000)]
        cap: u64,
        #[command(flatten)]
        q: QArg,
    },
    /// Build the digit automaton; print statistics and dump DOT or JSON.
    Automaton {
        #[arg(long)]
        stats: bool,
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Dump the minimized machine instead of the raw one.
        #[arg(long)]
        minimize: bool,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: usize,
        #[command(flatten)]
        q: QArg,
    },
    /// Print all bounds and the classification of the first zero as JSON.
    Bounds {
        /// Number of variables in the worst-case bound.
        #[arg(long, default_value_t = 1)]
        r: u64,
        #[command(flatten)]
        q: QArg,
    },
    /// Run a seeded randomized search.
    Search(SearchArgs),
    /// Re-check the published fixtures; exit 1 if any check fails.
    VerifyPaper,
    /// Render one SVG scatter per polynomial from a result file.
    Plot {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Experiment config JSON; explicit flags override its fields.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Number of polynomials.
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long)]
    pub degree: Option<u64>,
    /// Exclusive upper bound on the primes swept.
    #[arg(long)]
    pub max_prime: Option<u64>,
    #[arg(long)]
    pub cap: Option<u64>,
    #[arg(long)]
    pub parallelism: Option<usize>,
    #[arg(long)]
    pub no_kappa: bool,
    /// Enumerate `n < cap` instead of the exact search.
    #[arg(long)]
    pub cap_engine: bool,
    /// Also write JSON results here.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Also write CSV results here.
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Leave `runtime_ms` blank in CSV output.
    #[arg(long)]
    pub no_timing: bool,
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 4;

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => EXIT_IO,
            Error::StateExplosion { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

/// Runs one parsed command, writing its normal output to `out`. Returns the
/// exit code for outcomes that are not errors (`cap-exceeded`, failed checks).
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Seq { count, engine, q } => cmd_seq(cli, *count, *engine, q, out),
        Command::ShortestZero { method, cap, q } => cmd_shortest_zero(cli, *method, *cap, q, out),
        Command::Automaton {
            stats,
            dot,
            json,
            minimize,
            state_cap,
            q,
        } => cmd_automaton(
            cli,
            *stats,
            dot.as_deref(),
            json.as_deref(),
            *minimize,
            *state_cap,
            q,
            out,
        ),
        Command::Bounds { r, q } => cmd_bounds(cli, *r, q, out),
        Command::Search(args) => cmd_search(cli, args, out),
        Command::VerifyPaper => cmd_verify(out),
        Command::Plot { input } => cmd_plot(cli, input, out),
    }
}

fn prime_arg(cli: &Cli) -> CliResult<Prime> {
    let p = cli
        .prime
        .ok_or_else(|| CliError::usage("--prime is required"))?;
    Ok(Prime::new(p)?)
}

/// `(P, Q)` reduced modulo `--prime`.
fn poly_args(cli: &Cli, q: &QArg) -> CliResult<(LaurentPoly, LaurentPoly)> {
    let p = prime_arg(cli)?;
    let text = cli
        .poly
        .as_deref()
        .ok_or_else(|| CliError::usage("--poly is required"))?;
    let poly = LaurentPoly::parse(text, p)?;
    let q_poly = match &q.q {
        Some(s) => LaurentPoly::parse(s, p)?,
        None => LaurentPoly::one(p),
    };
    Ok((poly, q_poly))
}

/// Sequence machine for `(P, Q)`, including the degenerate `P = 0`.
fn machine_for(poly: &LaurentPoly, q: &LaurentPoly, state_cap: usize) -> CliResult<MooreMachine> {
    if poly.is_zero() {
        return Ok(zero_power_machine(poly.modulus(), q.ct().value()));
    }
    Ok(build_rz(poly, q, state_cap)?.machine)
}

fn cmd_seq(
    cli: &Cli,
    count: u64,
    engine: SeqEngine,
    q: &QArg,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (poly, q_poly) = poly_args(cli, q)?;
    let values: Vec<u64> = match engine {
        SeqEngine::Oracle => ct_pow_sequence(&poly, &q_poly, count as usize)
            .iter()
            .map(|v| v.value())
            .collect(),
        SeqEngine::Automaton => machine_for(&poly, &q_poly, DEFAULT_STATE_CAP)?
            .sequence(count)
            .iter()
            .map(|v| v.value())
            .collect(),
        SeqEngine::Linrep if poly.is_zero() => machine_for(&poly, &q_poly, 1)?
            .sequence(count)
            .iter()
            .map(|v| v.value())
            .collect(),
        SeqEngine::Linrep => {
            let l = to_linrep(&poly, &q_poly)?;
            (0..count)
                .map(|n| linrep_eval(&l, &BigUint::from(n)).value())
                .collect()
        }
    };
    if !values.is_empty() {
        let line: Vec<String> = values.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(0)
}

fn cmd_shortest_zero(
    cli: &Cli,
    method: Method,
    cap: u64,
    q: &QArg,
    out: &mut dyn Write,
) -> CliResult<i32> {
    if cap == 0 {
        return Err(CliError::usage("--cap must be at least 1"));
    }
    let (poly, q_poly) = poly_args(cli, q)?;
    let m = machine_for(&poly, &q_poly, DEFAULT_STATE_CAP)?;
    let outcome = match method {
        Method::Exact => shortest_zero_exact(&m),
        Method::Enum => shortest_zero_enum(&m, cap),
    };
    match &outcome {
        ShortestZeroOutcome::Found(n) => writeln!(out, "{n}")?,
        other => writeln!(out, "{}", other.label())?,
    }
    Ok(match outcome {
        ShortestZeroOutcome::CapExceeded(_) => EXIT_CAP,
        _ => 0,
    })
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn write_file(path: &Path, body: &str) -> CliResult {
    fs::write(path, body).map_err(|e| CliError::io(path, e))
}

#[allow(clippy::too_many_arguments)]
fn cmd_automaton(
    cli: &Cli,
    stats: bool,
    dot: Option<&Path>,
    json: Option<&Path>,
    do_minimize: bool,
    state_cap: usize,
    q: &QArg,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let (poly, q_poly) = poly_args(cli, q)?;
    let (machine, labels) = if poly.is_zero() {
        (
            zero_power_machine(poly.modulus(), q_poly.ct().value()),
            None,
        )
    } else {
        let a = build_rz(&poly, &q_poly, state_cap)?;
        let labels = a.state_labels();
        (a.machine, Some(labels))
    };
    let minimal = minimize(&machine);
    let (dumped, labels) = if do_minimize {
        (&minimal, None)
    } else {
        (&machine, labels)
    };
    if let Some(path) = dot {
        write_file(path, &dumped.to_dot(labels.as_deref()))?;
    }
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(&dumped.to_json(labels.as_deref()))
            .map_err(|e| CliError::from(Error::from(e)))?;
        write_file(path, &(body + "\n"))?;
    }
    if stats || (dot.is_none() && json.is_none()) {
        writeln!(
            out,
            "states={} kappa={} zero_reachable={}",
            machine.num_states(),
            minimal.num_states(),
            machine.zero_state_reachable()
        )?;
    }
    Ok(0)
}

fn cmd_bounds(cli: &Cli, r: u64, q: &QArg, out: &mut dyn Write) -> CliResult<i32> {
    let (poly, q_poly) = poly_args(cli, q)?;
    let p = poly.modulus();
    let deg = poly.degree().unwrap_or(0);
    let m = machine_for(&poly, &q_poly, DEFAULT_STATE_CAP)?;
    let kappa = minimize(&m).num_states() as u64;
    let mut report = BoundReport::new(p, deg, r, Some(kappa));
    if let ShortestZeroOutcome::Found(n0) = shortest_zero_exact(&m) {
        report = report.with_first_zero(&n0);
    }
    let body = serde_json::to_string_pretty(&report).map_err(|e| CliError::from(Error::from(e)))?;
    writeln!(out, "{body}")?;
    Ok(0)
}

fn search_config(cli: &Cli, args: &SearchArgs) -> CliResult<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let f = File::open(path).map_err(|e| CliError::io(path, e))?;
            serde_json::from_reader(BufReader::new(f))
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig::new(10, 2, 20, 0),
    };
    if let Some(v) = args.count {
        cfg.num_polynomials = v;
    }
    if let Some(v) = args.degree {
        cfg.degree = v;
    }
    if let Some(v) = args.max_prime {
        cfg.max_prime = v;
    }
    if let Some(v) = args.cap {
        cfg.cap = v;
    }
    if let Some(v) = args.parallelism {
        cfg.parallelism = v;
    }
    if let Some(v) = cli.seed {
        cfg.master_seed = v;
    }
    if args.no_kappa {
        cfg.compute_kappa = false;
    }
    if args.cap_engine {
        cfg.engine = Engine::Enum;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn format_for(path: &Path, explicit: Option<Format>) -> Format {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
        _ => Format::Json,
    })
}

fn write_results(
    res: &ExperimentResults,
    format: Format,
    timing: bool,
    w: impl Write,
) -> CliResult {
    match format {
        Format::Json => res.write_json(w)?,
        Format::Csv => res.write_csv(w, timing)?,
    }
    Ok(())
}

fn write_results_file(
    res: &ExperimentResults,
    path: &Path,
    format: Format,
    timing: bool,
) -> CliResult {
    let mut w = create(path)?;
    write_results(res, format, timing, &mut w)?;
    w.flush().map_err(|e| CliError::io(path, e))
}

fn cmd_search(cli: &Cli, args: &SearchArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = search_config(cli, args)?;
    let res = run_experiment(&cfg)?;
    let timing = !args.no_timing;
    if let Some(path) = &args.json {
        write_results_file(&res, path, Format::Json, timing)?;
    }
    if let Some(path) = &args.csv {
        write_results_file(&res, path, Format::Csv, timing)?;
    }
    match &cli.out {
        Some(path) => write_results_file(&res, path, format_for(path, cli.format), timing)?,
        None if args.json.is_none() && args.csv.is_none() => {
            write_results(&res, cli.format.unwrap_or(Format::Json), timing, &mut *out)?;
            eprintln!("{}", res.summary());
            return Ok(0);
        }
        None => {}
    }
    writeln!(out, "{}", res.summary())?;
    Ok(0)
}

fn cmd_verify(out: &mut dyn Write) -> CliResult<i32> {
    let checks = verify::paper_checks();
    write!(out, "{}", verify::render_table(&checks))?;
    Ok(if checks.iter().all(|c| c.passed) {
        0
    } else {
        EXIT_VERIFY
    })
}

fn load_series(path: &Path, format: Option<Format>) -> CliResult<Vec<svg::Series>> {
    let f = File::open(path).map_err(|e| CliError::io(path, e))?;
    let malformed = |e: Error| match e {
        Error::Io(_) => CliError::from(e),
        other => CliError::usage(format!("{}: malformed results: {other}", path.display())),
    };
    match format_for(path, format) {
        Format::Json => {
            let res = ExperimentResults::read_json(BufReader::new(f)).map_err(malformed)?;
            Ok(svg::series_from_results(&res))
        }
        Format::Csv => {
            let rows = read_csv(BufReader::new(f)).map_err(malformed)?;
            svg::series_from_csv(&rows)
                .map_err(|m| CliError::usage(format!("{}: {m}", path.display())))
        }
    }
}

fn cmd_plot(cli: &Cli, input: &Path, out: &mut dyn Write) -> CliResult<i32> {
    let series = load_series(input, cli.format)?;
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    for s in &series {
        let path = dir.join(format!("plot_{}.svg", s.poly_id));
        write_file(&path, &svg::render(s))?;
    }
    writeln!(out, "wrote {} plot(s) to {}", series.len(), dir.display())?;
    Ok(0)
}
