use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tailscore::cli::{run, Cli, CliError, ExperimentConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match ExperimentConfig::from_cli(cli).and_then(|c| run(&c).map(|csv| (c, csv))).and_then(|(c, csv)| emit(&c, &csv)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(config: &ExperimentConfig, csv: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(csv.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}
