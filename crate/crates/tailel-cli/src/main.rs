//! `tailel`: tail-index estimation and confidence intervals for
//! heavy-tailed data.
//!
//! Exit codes: 0 success, 2 usage error, 3 input-data error,
//! 4 success with numeric degeneracy flags set (results still emitted).

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tailel::{
    hill_plot, interval_for, log_spacings, parse_methods, read_dataset, run_plan,
    ConfidenceInterval, DistributionSpec, Error, KGrid, LogSpacings, Sample, SimulationPlan,
};

const DEFAULT_SEED: u64 = 42;
const ALL_METHODS: &str = "normal,normal-conv,el,ael-chen,ael-bartlett";

#[derive(Parser)]
#[command(
    name = "tailel",
    version,
    about = "Tail-index estimation and confidence intervals for heavy-tailed data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hill estimate and log-spacing summary for a dataset (JSON).
    Estimate {
        /// Single-column CSV of positive values.
        #[arg(long)]
        input: PathBuf,
        /// Number of upper order statistics to use (1 <= k <= n-1).
        #[arg(long)]
        k: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Confidence intervals for the tail index at one k (JSON array).
    Ci {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Confidence level in (0, 1).
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        /// Comma list of normal, normal-conv, el, ael-chen, ael-bartlett.
        #[arg(long, default_value = ALL_METHODS)]
        methods: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hill estimates with confidence limits over a k grid (CSV).
    Hillplot {
        #[arg(long)]
        input: PathBuf,
        /// Grid MIN:MAX:STEP.
        #[arg(long = "k-grid")]
        k_grid: String,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value = "normal,ael-bartlett")]
        methods: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo coverage study over a k grid (CSV or JSON).
    Simulate {
        /// frechet:A | burr:A,B | pareto:G | exp:M
        #[arg(long)]
        dist: String,
        /// Sample size per replication.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Number of replications (paper figures used 10000).
        #[arg(long, default_value_t = 2000)]
        reps: usize,
        /// Sample-fraction grid, K or MIN:MAX:STEP.
        #[arg(long)]
        k: String,
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value = ALL_METHODS)]
        methods: String,
        /// Base seed; replication r draws from stream r.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

enum CmdError {
    /// Bad flag value or a flag/data mismatch (exit 2).
    Usage(String),
    /// Unreadable or unusable input data (exit 3).
    Input(String),
}

impl CmdError {
    fn code(&self) -> ExitCode {
        match self {
            Self::Usage(_) => ExitCode::from(2),
            Self::Input(_) => ExitCode::from(3),
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Input(m) => f.write_str(m),
        }
    }
}

fn usage(e: Error) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn input(e: Error) -> CmdError {
    CmdError::Input(e.to_string())
}

struct Output {
    text: String,
    degenerate: bool,
}

fn load_sample(path: &Path) -> Result<(Sample, usize), CmdError> {
    let dataset = read_dataset(path)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    let rejected = dataset.rejected;
    let sample = dataset.sample().map_err(input)?;
    Ok((sample, rejected))
}

fn spacings_at(sample: &Sample, k: usize) -> Result<LogSpacings, CmdError> {
    log_spacings(sample, k).map_err(usage)
}

fn cmd_estimate(input_path: PathBuf, k: usize) -> Result<Output, CmdError> {
    let (sample, rejected) = load_sample(&input_path)?;
    let sp = spacings_at(&sample, k)?;
    let y_min = sp.y().iter().copied().fold(f64::INFINITY, f64::min);
    let y_max = sp.y().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let doc = json!({
        "n": sample.n(),
        "k": k,
        "rejected": rejected,
        "hill": sp.hill(),
        "y": { "mean": sp.hill(), "min": y_min, "max": y_max },
    });
    Ok(Output {
        text: format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain json")),
        degenerate: false,
    })
}

fn cmd_ci(
    input_path: PathBuf,
    k: usize,
    level: f64,
    methods: &str,
) -> Result<Output, CmdError> {
    let methods = parse_methods(methods).map_err(usage)?;
    let (sample, _) = load_sample(&input_path)?;
    let sp = spacings_at(&sample, k)?;
    let intervals = methods
        .iter()
        .map(|&m| interval_for(&sp, m, level))
        .collect::<Result<Vec<ConfidenceInterval>, Error>>()
        .map_err(usage)?;
    let degenerate = intervals.iter().any(|ci| ci.degenerate);
    Ok(Output {
        text: format!(
            "{}\n",
            serde_json::to_string_pretty(&intervals).expect("plain json")
        ),
        degenerate,
    })
}

fn cmd_hillplot(
    input_path: PathBuf,
    k_grid: &str,
    level: f64,
    methods: &str,
) -> Result<Output, CmdError> {
    let grid: KGrid = k_grid.parse().map_err(usage)?;
    let methods = parse_methods(methods).map_err(usage)?;
    let (sample, _) = load_sample(&input_path)?;
    let table = hill_plot(&sample, &grid, level, &methods).map_err(usage)?;
    Ok(Output {
        degenerate: table.degenerate_count > 0,
        text: table.to_csv(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    dist: &str,
    n: usize,
    reps: usize,
    k: &str,
    level: f64,
    methods: &str,
    seed: u64,
    format: OutputFormat,
) -> Result<Output, CmdError> {
    let plan = SimulationPlan {
        dist: dist.parse::<DistributionSpec>().map_err(usage)?,
        n,
        reps,
        k_grid: k.parse().map_err(usage)?,
        level,
        methods: parse_methods(methods).map_err(usage)?,
        base_seed: seed,
    };
    plan.validate().map_err(usage)?;
    let report = run_plan(&plan).map_err(usage)?;
    let text = match format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&report).expect("plain json")
        ),
    };
    // Degenerate replications are an expected, per-row-counted outcome of a
    // coverage study, not a failure of the command.
    Ok(Output {
        text,
        degenerate: false,
    })
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CmdError> {
    let (output, out_path) = match command {
        Command::Estimate { input, k, out } => (cmd_estimate(input, k)?, out),
        Command::Ci {
            input,
            k,
            level,
            methods,
            out,
        } => (cmd_ci(input, k, level, &methods)?, out),
        Command::Hillplot {
            input,
            k_grid,
            level,
            methods,
            out,
        } => (cmd_hillplot(input, &k_grid, level, &methods)?, out),
        Command::Simulate {
            dist,
            n,
            reps,
            k,
            level,
            methods,
            seed,
            format,
            out,
        } => (
            cmd_simulate(&dist, n, reps, &k, level, &methods, seed, format)?,
            out,
        ),
    };
    emit(out_path, &output.text)?;
    Ok(if output.degenerate {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}
