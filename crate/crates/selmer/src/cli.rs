use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "selmer", version, about = "Exact experiments on Vinberg representations over finite fields and P^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive regular-orbit census of a representation.
    Census(Opts),
    /// Local densities α and β over the dual numbers.
    Density(Opts),
    /// Fibre sizes of the differential of the invariant map.
    LiftCheck(Opts),
    /// Transversal, minimal or two-torsion scans of families over P^1.
    Family(Opts),
    /// Monte Carlo density of everywhere-regular sections.
    McRegular(Opts),
    /// Mass series of bundles on P^1 against the Tamagawa prediction.
    Mass(Opts),
    /// Kostant section round trips and reductions.
    Kostant(Opts),
    /// Run the acceptance checks.
    VerifyAll(VerifyOpts),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyOpts {
    #[arg(value_enum, default_value = "quick")]
    pub profile: Profile,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Summary JSON path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Flags shared by the experiment subcommands; each reads what it needs.
#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// `odd` or `pair`.
    #[arg(long, visible_alias = "chapter")]
    pub model: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "trunc-B")]
    pub trunc_b: Option<usize>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `json` or `csv`.
    #[arg(long)]
    pub format: Option<String>,
    /// Plain `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// `so3`, `so5` or `so3xso3`.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub cutoff: Option<u64>,
    /// Family mode: `transversal`, `minimal` or `two-torsion`.
    #[arg(long)]
    pub mode: Option<String>,
    /// Kostant operation: `round-trip` or `reduce`.
    #[arg(long)]
    pub op: Option<String>,
    /// Density method: `fibered`, `brute` or `sampled`.
    #[arg(long)]
    pub method: Option<String>,
}
