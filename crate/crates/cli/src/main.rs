use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use urnlab::montecarlo::{DEFAULT_SEED, DEFAULT_TRIALS, DEFAULT_Z_THRESHOLD};
use urnlab_cli::commands::{self, CliError, MethodChoice, SimulateArgs};
use urnlab_cli::record::{render, Format, OutputRecord};

/// Exact and simulated answers to the random-composition urn puzzle.
#[derive(Debug, Parser)]
#[command(name = "urnlab", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for the chance the second ball is red, given the first was red.
    Exact {
        #[arg(long)]
        n: u64,
        /// uniform-prior, weighted-prior, conditional, symmetry, inductive or all.
        #[arg(long, default_value = "all")]
        method: MethodChoice,
    },
    /// Chance the next ball is red after observing a sequence of draws.
    Prefix {
        #[arg(long)]
        n: u64,
        /// Observed colours as a string over R and G, e.g. "RRG".
        #[arg(long, default_value = "")]
        prefix: String,
        /// Also report the posterior over red counts.
        #[arg(long)]
        posterior: bool,
    },
    /// Replay a sampling process and compare the estimate against its exact value.
    Simulate {
        /// uniform-composition, weighted-red-pick or symmetry.
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 100)]
        n: u64,
        #[arg(long, env = "URNLAB_TRIALS", default_value_t = DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, env = "URNLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_Z_THRESHOLD)]
        z_threshold: f64,
    },
    /// Exact answers for every urn size in a range.
    Sweep {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value = "all")]
        method: MethodChoice,
    },
    /// Related puzzles: bertrand-box, boy-girl-older, boy-girl-at-least-one.
    Catalog { scenario: String },
}

fn run(command: Command) -> Result<Vec<OutputRecord>, CliError> {
    Ok(match command {
        Command::Exact { n, method } => vec![commands::exact(n, method)?],
        Command::Prefix { n, prefix, posterior } => vec![commands::prefix(n, &prefix, posterior)?],
        Command::Simulate {
            model,
            n,
            trials,
            seed,
            z_threshold,
        } => vec![commands::simulate(&SimulateArgs {
            model,
            n,
            trials,
            seed,
            z_threshold,
        })?],
        Command::Sweep { min, max, method } => commands::sweep(min, max, method)?,
        Command::Catalog { scenario } => vec![commands::catalog(&scenario)?],
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = match run(cli.command) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("urnlab: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = render(&records, cli.format, &mut out).and_then(|_| out.flush()) {
        eprintln!("urnlab: writing output: {e}");
        return ExitCode::FAILURE;
    }
    if records.iter().all(OutputRecord::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
