//! Command-line driver for the `selmer-core` experiments: configuration,
//! worker pools, and JSON/CSV reports.

pub mod cli;
pub mod config;
pub mod error;
pub mod report;
pub mod run;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use report::Report;

use cli::{Cli, Command};
use config::Subcommand;

/// Runs a parsed command line; returns the process exit code.
pub fn dispatch(cli: Cli) -> i32 {
    let (sub, opts) = match cli.command {
        Command::VerifyAll(v) => {
            let ctx = verify::Ctx { seed: v.seed.unwrap_or(0), jobs: v.jobs, profile: v.profile };
            let outcomes = verify::verify_all(&ctx);
            if let Some(p) = &v.out {
                let text = serde_json::to_string_pretty(&verify::summary(&ctx, &outcomes)).expect("json serializes");
                if let Err(e) = std::fs::write(p, text + "\n") {
                    eprintln!("error: {e}");
                    return 1;
                }
            }
            return if outcomes.iter().all(|o| o.passed) { 0 } else { 1 };
        }
        Command::Census(o) => (Subcommand::Census, o),
        Command::Density(o) => (Subcommand::Density, o),
        Command::LiftCheck(o) => (Subcommand::LiftCheck, o),
        Command::Family(o) => (Subcommand::Family, o),
        Command::McRegular(o) => (Subcommand::McRegular, o),
        Command::Mass(o) => (Subcommand::Mass, o),
        Command::Kostant(o) => (Subcommand::Kostant, o),
    };
    let result = ExperimentConfig::resolve(sub, &opts)
        .and_then(|cfg| run::run(&cfg).and_then(|r| r.emit(cfg.format, cfg.out.as_deref())));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
