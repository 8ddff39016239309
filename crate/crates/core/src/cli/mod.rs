//! Command-line front end: `gen`, `run`, `verify`, `bench`.
//!
//! Exit codes: 0 success, 2 validation failure or bad strategy path, 3 budget
//! exhausted, 4 certificate rejected, 5 I/O or parse error.

mod bench;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::constructions::{
    glued_network, ConstructionError, EuclidMode, EuclideanStrategy, GluedLayout, GluedStrategy,
    LayoutDoc,
};
use crate::engine::{
    run, AbortReason, Budget, HaltReason, MaxBottleneck, RunOptions, RunReport, SeededRandom,
    ShortestPath, Strategy,
};
use crate::exactfield::{QuadValue, DEFAULT_D};
use crate::flownet::{Flow, FlowDoc, JsonError, Network, NetworkDoc};

pub use bench::{bench_rows, BenchRow, BenchTable};
pub use verify::{verify_flow_text, verify_trace_text, VerifyOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CERTIFICATE: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "transflow",
    version,
    about = "Transfinite Ford-Fulkerson laboratory"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated network and its layout sidecar.
    Gen(GenArgs),
    /// Execute a run and write its report, trace and final flow.
    Run(RunArgs),
    /// Re-check a flow or a trace independently of the engine.
    Verify(VerifyArgs),
    /// Run every strategy on every network and tabulate the outcomes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Euclidean,
    Glued,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Number of glued levels.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = DEFAULT_D)]
    pub d: u64,
    #[arg(long, env = "TRANSFLOW_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// File stem; defaults to `euclidean` or `glued-k<k>`.
    #[arg(long)]
    pub stem: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyName {
    ShortestPath,
    MaxBottleneck,
    SeededRandom,
    Euclidean,
    EuclideanConcrete,
    Glued,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Network JSON document.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    pub network: Option<PathBuf>,
    /// Layout sidecar, needed by the euclidean and glued strategies.
    #[arg(long)]
    pub layout: Option<PathBuf>,
    /// Inline generator: `euclidean:A:B` or `glued:K:A:B`.
    #[arg(long)]
    pub generate: Option<String>,
    #[arg(long, value_enum, default_value = "shortest-path")]
    pub strategy: StrategyName,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: usize,
    #[arg(long, default_value_t = 64)]
    pub max_jumps: usize,
    #[arg(long, default_value_t = crate::engine::DEFAULT_PROBE_ROUNDS)]
    pub probe_rounds: usize,
    /// Continue with shortest paths after the last certified phase.
    #[arg(long)]
    pub finish: bool,
    /// Snapshot the flow after every augmentation.
    #[arg(long)]
    pub snapshots: bool,
    /// Start from this flow instead of zero.
    #[arg(long)]
    pub initial_flow: Option<PathBuf>,
    #[arg(long, env = "TRANSFLOW_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value = "run")]
    pub stem: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long, conflicts_with = "trace", required_unless_present = "trace")]
    pub flow: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Report to cross-check against the replayed trace.
    #[arg(long, requires = "trace")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Generator specs; defaults to the standard suite.
    #[arg(long = "network")]
    pub networks: Vec<String>,
    #[arg(long = "strategy", value_enum)]
    pub strategies: Vec<StrategyName>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20_000)]
    pub max_steps: usize,
    /// Continue certified strategies with shortest paths after their last
    /// limit phase.
    #[arg(long)]
    pub finish: bool,
    /// Add a wall-time column. Output is then no longer reproducible.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, env = "TRANSFLOW_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value = "bench")]
    pub stem: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => EXIT_IO,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Invalid(_) | JsonError::HashMismatch { .. } => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

/// Run with explicit arguments (the first is the program name) and return
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, CliError> {
    match cmd {
        Command::Gen(a) => cmd_gen(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let io = |source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// A field literal, or `phi` for the golden ratio in Q(√5).
fn literal(text: &str, d: u64) -> Result<QuadValue, CliError> {
    if text.trim() == "phi" {
        return Ok(QuadValue::golden());
    }
    QuadValue::parse(text, d).map_err(|e| CliError::Parse(e.to_string()))
}

/// A generated network with its layout and the inputs it came from.
pub struct Generated {
    pub network: Network,
    pub layout: GluedLayout,
    pub doc: LayoutDoc,
}

pub fn generate(
    kind: GenKind,
    k: usize,
    a: &QuadValue,
    b: &QuadValue,
) -> Result<Generated, CliError> {
    let k = match kind {
        GenKind::Euclidean => 1,
        GenKind::Glued => k,
    };
    let (network, layout) = glued_network(k, a, b)?;
    let doc = LayoutDoc::new(&network, &layout, a, b);
    Ok(Generated {
        network,
        layout,
        doc,
    })
}

/// Parse `euclidean:A:B` or `glued:K:A:B` (field Q(√5) unless the literals
/// name another).
pub fn parse_generator(spec: &str) -> Result<Generated, CliError> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let bad = || {
        CliError::Parse(format!(
            "generator spec {spec:?}: expected euclidean:A:B or glued:K:A:B"
        ))
    };
    let (kind, k, a, b) = match parts.as_slice() {
        ["euclidean", a, b] => (GenKind::Euclidean, 1, *a, *b),
        ["glued", k, a, b] => (GenKind::Glued, k.parse().map_err(|_| bad())?, *a, *b),
        _ => return Err(bad()),
    };
    let a = literal(a, DEFAULT_D)?;
    let b = literal(b, a.d())?;
    generate(kind, k, &a, &b)
}

fn cmd_gen(args: &GenArgs) -> Result<i32, CliError> {
    let a = literal(&args.a, args.d)?;
    let b = literal(&args.b, args.d)?;
    let g = generate(args.kind, args.k, &a, &b)?;
    let stem = args.stem.clone().unwrap_or_else(|| match args.kind {
        GenKind::Euclidean => "euclidean".into(),
        GenKind::Glued => format!("glued-k{}", g.layout.k),
    });
    let net_path = write(
        &args.out_dir,
        &format!("{stem}.network.json"),
        &pretty(&NetworkDoc::from_network(&g.network)),
    )?;
    let layout_path = write(
        &args.out_dir,
        &format!("{stem}.layout.json"),
        &pretty(&g.doc),
    )?;
    println!(
        "{} vertices, {} arcs, {} labelled arcs, unlabelled capacity {}(a+b)",
        g.network.vertex_count(),
        g.network.arc_count(),
        g.layout.labelled().len(),
        g.layout.capacity_factor
    );
    println!("wrote {}", net_path.display());
    println!("wrote {}", layout_path.display());
    Ok(EXIT_OK)
}

pub(crate) fn build_strategy(
    name: StrategyName,
    n: &Network,
    layout: Option<&GluedLayout>,
    seed: u64,
    probe_rounds: usize,
    finish: bool,
) -> Result<Box<dyn Strategy + Send>, CliError> {
    let need = || {
        layout.cloned().ok_or_else(|| {
            CliError::Validation("this strategy needs a layout sidecar (--layout)".into())
        })
    };
    Ok(match name {
        StrategyName::ShortestPath => Box::new(ShortestPath),
        StrategyName::MaxBottleneck => Box::new(MaxBottleneck),
        StrategyName::SeededRandom => Box::new(SeededRandom::new(seed)),
        StrategyName::Euclidean | StrategyName::EuclideanConcrete => {
            let mode = if name == StrategyName::Euclidean {
                EuclidMode::Certified
            } else {
                EuclidMode::Concrete
            };
            let g = need()?.gadgets[0].clone();
            Box::new(
                EuclideanStrategy::new(g, mode)
                    .with_finish(finish)
                    .with_probe_rounds(probe_rounds),
            )
        }
        StrategyName::Glued => Box::new(
            GluedStrategy::new(n, need()?)?
                .with_finish(finish)
                .with_probe_rounds(probe_rounds),
        ),
    })
}

/// Exit code for a finished run.
pub fn halt_exit_code(halt: &HaltReason) -> i32 {
    match halt {
        HaltReason::Terminated | HaltReason::Stopped => EXIT_OK,
        HaltReason::BudgetExhausted { .. } => EXIT_BUDGET,
        HaltReason::Aborted(AbortReason::CertificateRejected { .. }) => EXIT_CERTIFICATE,
        HaltReason::Aborted(_) => EXIT_VALIDATION,
    }
}

fn cmd_run(args: &RunArgs) -> Result<i32, CliError> {
    let (network, layout) = match (&args.network, &args.generate) {
        (Some(path), _) => {
            let n = NetworkDoc::parse(&read(path)?)?;
            let layout = match &args.layout {
                Some(lp) => {
                    let doc: LayoutDoc = serde_json::from_str(&read(lp)?)
                        .map_err(|e| CliError::Parse(e.to_string()))?;
                    Some(doc.layout_for(&n)?)
                }
                None => None,
            };
            (n, layout)
        }
        (None, Some(spec)) => {
            let g = parse_generator(spec)?;
            (g.network, Some(g.layout))
        }
        (None, None) => return Err(CliError::Validation("no network given".into())),
    };
    let f0 = match &args.initial_flow {
        Some(p) => {
            let doc: FlowDoc =
                serde_json::from_str(&read(p)?).map_err(|e| CliError::Parse(e.to_string()))?;
            doc.to_flow(&network)?
        }
        None => Flow::zero(&network),
    };
    let mut strategy = build_strategy(
        args.strategy,
        &network,
        layout.as_ref(),
        args.seed,
        args.probe_rounds,
        args.finish,
    )?;
    let opts = RunOptions {
        budget: Budget {
            max_steps: args.max_steps,
            max_jumps: args.max_jumps,
        },
        debug_snapshots: args.snapshots,
    };
    let report = run(&network, &f0, strategy.as_mut(), &opts)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    write_run_outputs(&args.out_dir, &args.stem, &network, &report)?;
    print_summary(&report);
    Ok(halt_exit_code(&report.halt))
}

/// Write `<stem>.report.json`, `<stem>.trace.jsonl` and `<stem>.flow.json`.
pub fn write_run_outputs(
    dir: &Path,
    stem: &str,
    n: &Network,
    report: &RunReport,
) -> Result<(), CliError> {
    write(
        dir,
        &format!("{stem}.report.json"),
        &pretty(&report.to_doc()),
    )?;
    write(dir, &format!("{stem}.trace.jsonl"), &report.trace_jsonl())?;
    write(
        dir,
        &format!("{stem}.flow.json"),
        &pretty(&FlowDoc::from_flow(n, &report.final_flow)),
    )?;
    Ok(())
}

fn print_summary(r: &RunReport) {
    println!("strategy   {}", r.strategy);
    println!("clock      {}", r.final_clock);
    println!(
        "value      {} (~{})",
        r.final_value,
        r.final_value.to_decimal(15)
    );
    println!(
        "steps      {} augmentations, {} limit jumps",
        r.steps, r.jumps
    );
    println!("halt       {}", r.halt.describe());
    for m in &r.monitors {
        let verdict = if m.pass { "pass" } else { "FAIL" };
        println!(
            "monitor    {} @ {}: {verdict} ({})",
            m.name, m.clock, m.details
        );
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let network_text = read(&args.network)?;
    let outcome = match (&args.flow, &args.trace) {
        (Some(flow), _) => verify_flow_text(&network_text, &read(flow)?)?,
        (None, Some(trace)) => {
            let report = args.report.as_deref().map(read).transpose()?;
            verify_trace_text(&network_text, &read(trace)?, report.as_deref())?
        }
        (None, None) => return Err(CliError::Validation("nothing to verify".into())),
    };
    for line in &outcome.notes {
        println!("ok: {line}");
    }
    for v in &outcome.violations {
        println!("violation: {v}");
    }
    Ok(if outcome.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VALIDATION
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let specs = if args.networks.is_empty() {
        bench::default_networks()
    } else {
        args.networks.clone()
    };
    let strategies = if args.strategies.is_empty() {
        bench::default_strategies()
    } else {
        args.strategies.clone()
    };
    let table = bench_rows(
        &specs,
        &strategies,
        args.seed,
        args.max_steps,
        args.finish,
        args.timing,
    )?;
    let text = table.to_text();
    print!("{text}");
    write(&args.out_dir, &format!("{}.txt", args.stem), &text)?;
    write(
        &args.out_dir,
        &format!("{}.json", args.stem),
        &pretty(&table),
    )?;
    Ok(EXIT_OK)
}
