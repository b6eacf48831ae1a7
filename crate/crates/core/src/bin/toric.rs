use std::process::ExitCode;

use toric_codes::cli::{self, CliError};

fn main() -> ExitCode {
    let result = cli::run(std::env::args_os()).and_then(|(text, out)| match out {
        Some(path) => cli::write_output(&path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Clap(e)) => e.exit(),
        Err(CliError::VerifyFailed(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("toric: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
