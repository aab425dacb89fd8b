use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use degen_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let code = match run(cli, &mut stdout) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("error: {e:#}");
            2
        }
    };
    ExitCode::from(code as u8)
}
