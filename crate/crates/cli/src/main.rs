use std::process::ExitCode;

use clap::Parser;
use zetalab_cli::{Cli, CliError, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let result = RunConfig::from_overrides(&cli.overrides).and_then(|cfg| zetalab_cli::run(cfg, &cli.command));
    match result {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(zetalab::Error::WindingUnstable { rect, at }) = &e {
                eprintln!("offending box: {rect:?} ({at})");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
