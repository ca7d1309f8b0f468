//! `firefighter`: solve, simulate, generate and benchmark firefighter
//! instances stored as JSON.

mod bench;
mod generate;
mod io;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use firefighter::format::{parse_instance, parse_strategy, to_json, OutcomeFile};
use firefighter::simulate;

use io::{read, write_output, Failure, WithCode, BAD_INPUT, INVALID_STRATEGY};

#[derive(Debug, Parser)]
#[command(
    name = "firefighter",
    version,
    about = "Firefighting on trees with b firefighters per step"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a strategy for an instance.
    Solve(solve::SolveArgs),
    /// Run a strategy and report what burns.
    Simulate(SimulateArgs),
    /// Write an instance from one of the built-in families.
    Generate(generate::GenerateArgs),
    /// Run solvers over a directory of instances.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    instance: PathBuf,
    strategy: PathBuf,
    /// Include the per-step record.
    #[arg(long)]
    trace: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let (inst, _) = parse_instance(&read(&args.instance)?).code(BAD_INPUT)?;
    let strategy = parse_strategy(&read(&args.strategy)?).code(BAD_INPUT)?;
    let outcome = simulate(&inst, &strategy).code(INVALID_STRATEGY)?;
    write_output(
        args.output.as_deref(),
        &to_json(&OutcomeFile::new(&inst, &outcome, args.trace)),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(BAD_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => solve::cmd_solve(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Generate(a) => generate::cmd_generate(a),
        Command::Bench(a) => bench::cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
