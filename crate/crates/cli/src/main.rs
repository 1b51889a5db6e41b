use std::process::ExitCode;

use splitwalk_cli::{run_from, RunError};

fn main() -> ExitCode {
    match run_from(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        // help/version exit 0, parse errors exit 2
        Err(RunError::Clap(e)) => e.exit(),
        Err(RunError::Cli(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
