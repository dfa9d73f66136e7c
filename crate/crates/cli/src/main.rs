mod args;
mod commands;
mod error;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Common};
use error::{CliError, EXIT_USAGE};

/// Environment variable holding the sampling seed.
const SEED_VAR: &str = "ROTHYP_SEED";

fn seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_VAR}=`{s}` is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = seed()?;
    let start = Instant::now();
    let (outcome, common): (commands::Outcome, &Common) = match &cli.command {
        Command::Curvature(a) => (commands::curvature(a, seed)?, &a.common),
        Command::Lk(a) => (commands::lk(a, seed)?, &a.spec.common),
        Command::Classify(a) => (commands::classify_cmd(a, seed)?, &a.spec.common),
        Command::SolveMinimal(a) => (commands::solve_minimal(a, seed)?, &a.common),
        Command::Audit(a) => (commands::audit(a, seed)?, &a.common),
        Command::Fixtures(a) => (commands::fixtures(a, seed)?, &a.common),
        Command::Export(a) => (commands::export(a, seed)?, &a.spec.common),
    };
    let mut outcome = outcome;
    outcome.report.elapsed_seconds = start.elapsed().as_secs_f64();
    let text = outcome.render(common.format)?;
    report::emit(common.out.as_deref(), &text)?;
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
