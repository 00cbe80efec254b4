use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use eqbif::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            for n in &outcome.notices {
                eprintln!("notice: {n}");
            }
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.render().as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
