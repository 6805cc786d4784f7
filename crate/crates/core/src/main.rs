use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use querylab::algorithms::ComparatorKind;
use querylab::lab::{
    cmd_amplify, cmd_bounds, cmd_extract_poly, cmd_ordered, cmd_parity_degree, cmd_tradeoff, Builtin,
    ExperimentConfig, Report, Row,
};
use querylab::polymethod::ZeroMode;
use querylab::Result;

#[derive(Parser)]
#[command(name = "querylab", version, about = "Query-complexity experiments: Grover, LP bounds, ordered search")]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// JSON config file (default: $QUERYLAB_CONFIG, else built-in defaults).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long = "n-grid", global = true, value_delimiter = ',')]
    n_grid: Option<Vec<usize>>,
    #[arg(long = "t-grid", global = true, value_delimiter = ',')]
    t_grid: Option<Vec<usize>>,
    #[arg(long = "T-grid", global = true, value_delimiter = ',')]
    iter_grid: Option<Vec<usize>>,
    #[arg(long, global = true)]
    a: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    eta: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output prefix; writes <out>.json and <out>.csv instead of printing JSON.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// strict | relaxed
    #[arg(long, global = true)]
    mode: Option<ZeroMode>,
    #[arg(long, global = true)]
    repetitions: Option<usize>,
    #[arg(long = "query-budget", global = true)]
    query_budget: Option<usize>,
    /// coherent | exact
    #[arg(long, global = true)]
    comparator: Option<ComparatorKind>,
    #[arg(long, global = true)]
    trials: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Grover error, LP optimum and explicit bound over the (N, t, T) grid.
    Tradeoff,
    /// Ordered search built from approximate comparisons.
    Ordered,
    /// Degree of the interpolant of k mod 2.
    ParityDegree,
    /// Error reduction for one-sided error at t = N/2.
    Amplify,
    /// Acceptance polynomial of a built-in network.
    ExtractPoly {
        /// constant | lookup | grover
        #[arg(long)]
        network: Builtin,
        #[arg(long)]
        n: usize,
        /// Grover iterations.
        #[arg(long = "T", default_value_t = 0)]
        iterations: usize,
    },
    /// Explicit error lower bound at (N, t, d).
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        d: u64,
    },
}

impl Overrides {
    fn apply(self) -> Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::resolve(self.config.as_deref())?;
        if let Some(v) = self.n_grid {
            cfg.n_grid = v;
        }
        if let Some(v) = self.t_grid {
            cfg.t_grid = v;
        }
        if let Some(v) = self.iter_grid {
            cfg.iter_grid = v;
        }
        if let Some(v) = self.a {
            cfg.a = v;
        }
        if let Some(v) = self.b {
            cfg.b = v;
        }
        if let Some(v) = self.eta {
            cfg.eta = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.out {
            cfg.out = Some(v);
        }
        if let Some(v) = self.mode {
            cfg.mode = v;
        }
        if let Some(v) = self.repetitions {
            cfg.repetitions = v;
        }
        if let Some(v) = self.query_budget {
            cfg.query_budget = v;
        }
        if let Some(v) = self.comparator {
            cfg.comparator = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn emit<R: Row + Serialize>(report: Report<R>, started: Instant) -> Result<bool> {
    match &report.config.out {
        Some(prefix) => {
            let (json, csv) = report.write(prefix)?;
            eprintln!("wrote {} and {}", json.display(), csv.display());
        }
        None => print!("{}", report.to_json()?),
    }
    for inv in report.invariants.iter().filter(|i| !i.holds) {
        eprintln!("invariant failed: {} {}", inv.name, inv.detail);
    }
    eprintln!("{} finished in {:.2?}", report.command, started.elapsed());
    Ok(report.ok)
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let cfg = cli.overrides.apply()?;
    match cli.command {
        Command::Tradeoff => emit(cmd_tradeoff(&cfg)?, started),
        Command::Ordered => emit(cmd_ordered(&cfg)?, started),
        Command::ParityDegree => emit(cmd_parity_degree(&cfg)?, started),
        Command::Amplify => emit(cmd_amplify(&cfg)?, started),
        Command::ExtractPoly { network, n, iterations } => {
            emit(cmd_extract_poly(&cfg, network, n, iterations)?, started)
        }
        Command::Bounds { n, t, d } => emit(cmd_bounds(&cfg, n, t, d)?, started),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
