//! Pipeline behind the `zetalab` binary: configuration, the zero-table
//! cache, and one function per subcommand.

pub mod cache;
pub mod config;
pub mod error;
pub mod output;
pub mod pipeline;
pub mod verify;

use std::fs;

pub use config::{Cli, Command, Overrides, RunConfig};
pub use error::{CliError, CliResult};
pub use pipeline::Session;

/// Runs one subcommand on a pool of `cfg.jobs` threads.
pub fn run(cfg: RunConfig, command: &Command) -> CliResult<Vec<String>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut s = Session::new(cfg)?;
        match command {
            Command::Zeros => pipeline::cmd_zeros(&mut s),
            Command::Dzeros => pipeline::cmd_dzeros(&mut s),
            Command::Stats => pipeline::cmd_stats(&mut s),
            Command::Meanvalue => pipeline::cmd_meanvalue(&mut s),
            Command::Verify { table } => {
                if let Some(path) = table {
                    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                    s = s.with_table(output::parse_zeros_csv(&text)?);
                }
                verify::cmd_verify(&mut s)
            }
            Command::All => {
                let mut lines = Vec::new();
                lines.extend(pipeline::cmd_zeros(&mut s)?);
                lines.extend(pipeline::cmd_dzeros(&mut s)?);
                lines.extend(pipeline::cmd_stats(&mut s)?);
                lines.extend(pipeline::cmd_meanvalue(&mut s)?);
                lines.extend(verify::cmd_verify(&mut s)?);
                Ok(lines)
            }
        }
    })
}
