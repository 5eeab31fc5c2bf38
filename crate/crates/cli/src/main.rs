use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use covchan::commands::{self, CapacityArgs, CheckArgs, ClassifyArgs, FamilyArgs, SolveArgs};
use covchan::format::write_json;
use covchan::CliResult;

/// Build, classify and analyse group-covariant qudit channels.
#[derive(Parser, Debug)]
#[command(name = "covchan", version)]
struct Cli {
    /// Seed for optimizer restarts and random test states.
    #[arg(long, global = true, env = "COVCHAN_SEED", default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a channel from a named family.
    Family(FamilyArgs),
    /// Report CP, TP and unitality flags and the affine representation.
    Classify(ClassifyArgs),
    /// Solve the intertwining equations for covariant Kraus multiplets.
    Solve(SolveArgs),
    /// Minimum output entropy and one-shot capacity, optionally over a sweep.
    Capacity(CapacityArgs),
    /// Test covariance or symmetry of a channel file.
    Check(CheckArgs),
}

fn run(cli: &Cli) -> CliResult<()> {
    let report = match &cli.command {
        Command::Family(a) => commands::family(a)?,
        Command::Classify(a) => commands::classify_cmd(a)?,
        Command::Solve(a) => commands::solve(a)?,
        Command::Capacity(a) => commands::capacity(a, cli.seed)?,
        Command::Check(a) => commands::check(a, cli.seed)?,
    };
    match &cli.report {
        Some(path) => write_json(path, &report)?,
        None => println!("{}", serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
