//! CLI for the experiment harness.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 1 otherwise.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cuckoo_rw::harness::config::{ExperimentConfig, Kind, OutputFormat, PartialConfig};
use cuckoo_rw::harness::run;
use cuckoo_rw::Error;

#[derive(Parser)]
#[command(
    name = "cuckoo-rw",
    about = "k-ary cuckoo hashing experiments: thresholds, scans, insertion benchmarks, core sizes, structural audits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the solved constants {k, xi_star, c_star, lambda_k, walk_exponent} as JSON.
    Thresholds(RunArgs),
    /// Orientability fraction across a load grid.
    Scan(RunArgs),
    /// Sequential random-walk insertions with per-trial step statistics.
    InsertBench(RunArgs),
    /// Empirical 2-core sizes against the analytic prediction.
    Core(RunArgs),
    /// Density, expansion and neighborhood-bound audits of sampled instances.
    Audit(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Number of hash choices per item.
    #[arg(long)]
    k: Option<u32>,
    /// Table size / vertex count.
    #[arg(long)]
    n: Option<u64>,
    /// Load factor: the experiment uses floor(c*n) items or edges.
    #[arg(long)]
    c: Option<f64>,
    /// Load grid `a:b:step`, endpoints inclusive.
    #[arg(long, value_name = "A:B:STEP")]
    c_grid: Option<String>,
    #[arg(long)]
    trials: Option<u32>,
    /// Master seed; trial i derives splitmix64(seed ^ i*0x9E3779B97F4A7C15).
    #[arg(long)]
    seed: Option<u64>,
    /// Phase-length slack (default 0.1).
    #[arg(long)]
    zeta: Option<f64>,
    /// Walk cap per insertion (default ceil(log2(n)^4)).
    #[arg(long)]
    step_cap: Option<u64>,
    /// Density slack for audits (default 0.01).
    #[arg(long)]
    delta: Option<f64>,
    /// Connected subsets sampled by the expansion audit (default 10000).
    #[arg(long)]
    expansion_samples: Option<u64>,
    /// Random (vertex, radius) probes of the neighborhood bound (default 1000).
    #[arg(long)]
    probes: Option<u64>,
    /// Hypergraph fixture in the text format (core and audit only).
    #[arg(long)]
    fixture: Option<PathBuf>,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Worker threads for trial parallelism (default: rayon's choice).
    #[arg(long)]
    threads: Option<usize>,
    /// Measure matching wall time in scan rows (breaks byte-reproducibility).
    #[arg(long)]
    timings: bool,
}

impl RunArgs {
    fn into_partial(self) -> Result<PartialConfig, Error> {
        let file = match &self.config {
            Some(path) => PartialConfig::from_json_file(path)?,
            None => PartialConfig::default(),
        };
        let cli = PartialConfig {
            kind: None,
            k: self.k,
            n: self.n,
            c: self.c,
            c_grid: self.c_grid,
            trials: self.trials,
            seed: self.seed,
            zeta: self.zeta,
            step_cap: self.step_cap,
            delta: self.delta,
            expansion_samples: self.expansion_samples,
            probes: self.probes,
            fixture: self.fixture,
            out: self.out,
            format: self.format,
            threads: self.threads,
            timings: self.timings.then_some(true),
        };
        Ok(file.overlaid_with(cli))
    }
}

fn execute(command: Command) -> Result<(), Error> {
    let (kind, args) = match command {
        Command::Thresholds(a) => (Kind::Thresholds, a),
        Command::Scan(a) => (Kind::Scan, a),
        Command::InsertBench(a) => (Kind::InsertBench, a),
        Command::Core(a) => (Kind::Core, a),
        Command::Audit(a) => (Kind::Audit, a),
    };
    let cfg = ExperimentConfig::build(kind, args.into_partial()?)?;
    let output = run::render(&cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, &output)?,
        None => print!("{output}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
