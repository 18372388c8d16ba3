use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geoprob::runner::{self, Experiment, ExperimentConfig, OutputFormat, DEFAULT_TRIALS};
use geoprob::Error;

const EXIT_CONFIG: u8 = 2;
const EXIT_NON_CONVERGENCE: u8 = 3;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "geoprob", version, about = "Monte Carlo runs of classic geometric-probability paradoxes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more experiments and emit a report.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated experiment names (see --list-methods).
    #[arg(long, value_delimiter = ',', conflicts_with = "all")]
    method: Vec<String>,

    /// Run every known experiment.
    #[arg(long)]
    all: bool,

    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,

    /// csv, json or table.
    #[arg(long, default_value = "table")]
    format: String,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Print the experiment names and exit.
    #[arg(long)]
    list_methods: bool,
}

fn config_from(args: &RunArgs) -> Result<ExperimentConfig, Error> {
    let experiments = if args.all {
        Experiment::catalog()
    } else if args.method.is_empty() {
        return Err(Error::Config("pass --method <name>[,<name>...] or --all".into()));
    } else {
        args.method
            .iter()
            .map(|m| m.parse())
            .collect::<Result<Vec<Experiment>, _>>()?
    };
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    Ok(ExperimentConfig {
        experiments,
        trials: args.trials,
        seed: args.seed,
        workers,
        output_format: args.format.parse::<OutputFormat>()?,
        output_path: args.out.clone(),
    })
}

fn list_methods() {
    for e in Experiment::catalog() {
        println!("{:<22}{}", e.name(), e.description());
    }
}

fn run(args: RunArgs) -> Result<(), Error> {
    if args.list_methods {
        list_methods();
        return Ok(());
    }
    let config = config_from(&args)?;
    let report = runner::run(&config)?;
    runner::emit_configured(&report, &config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("geoprob: {err}");
            ExitCode::from(match err {
                Error::Config(_) => EXIT_CONFIG,
                Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
                _ => EXIT_OTHER,
            })
        }
    }
}
