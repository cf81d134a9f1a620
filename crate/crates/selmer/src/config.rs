//! Experiment configuration: flags over a `key = value` file over defaults.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::cli::Opts;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Subcommand {
    Census,
    Density,
    LiftCheck,
    Family,
    McRegular,
    Mass,
    Kostant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Odd,
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub subcommand: Subcommand,
    pub model: Model,
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub d: usize,
    pub budget: u64,
    pub samples: u64,
    pub seed: u64,
    #[serde(rename = "trunc_B")]
    pub trunc_b: usize,
    pub group: String,
    pub cutoff: u64,
    pub mode: String,
    pub op: String,
    pub method: String,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: usize,
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
        let key = k.trim().replace('_', "-").to_ascii_lowercase();
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

const KEYS: &[&str] = &[
    "model", "chapter", "n", "m", "q", "d", "budget", "samples", "seed", "trunc-b", "jobs", "out", "format", "group",
    "cutoff", "mode", "op", "method",
];

fn default_samples(sub: Subcommand) -> u64 {
    match sub {
        Subcommand::LiftCheck => 10,
        Subcommand::Kostant => 1000,
        Subcommand::Density => 2000,
        _ => 10_000,
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

struct Layer<'a> {
    file: &'a BTreeMap<String, String>,
}

impl Layer<'_> {
    fn get<T: FromStr>(&self, flag: Option<T>, keys: &[&str]) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        for k in keys {
            if let Some(v) = self.file.get(*k) {
                return v
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Usage(format!("config key `{k}`: cannot parse `{v}`")));
            }
        }
        Ok(None)
    }
}

impl ExperimentConfig {
    pub fn resolve(sub: Subcommand, o: &Opts) -> Result<Self, CliError> {
        let file = match &o.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        if let Some(k) = file.keys().find(|k| !KEYS.contains(&k.as_str())) {
            return Err(CliError::Usage(format!("unknown config key `{k}`")));
        }
        let l = Layer { file: &file };
        let model = match l.get(o.model.clone(), &["model", "chapter"])?.as_deref() {
            None | Some("odd") => Model::Odd,
            Some("pair") => Model::Pair,
            Some(x) => return Err(CliError::Usage(format!("unknown model `{x}`"))),
        };
        let format = match l.get(o.format.clone(), &["format"])?.as_deref() {
            None | Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some(x) => return Err(CliError::Usage(format!("unknown format `{x}`"))),
        };
        let cfg = ExperimentConfig {
            subcommand: sub,
            model,
            n: l.get(o.n, &["n"])?.unwrap_or(1),
            m: l.get(o.m, &["m"])?.unwrap_or(1),
            q: l.get(o.q, &["q"])?.unwrap_or(5),
            d: l.get(o.d, &["d"])?.unwrap_or(1),
            budget: l.get(o.budget, &["budget"])?.unwrap_or(100_000_000),
            samples: l.get(o.samples, &["samples"])?.unwrap_or(default_samples(sub)),
            seed: l.get(o.seed, &["seed"])?.unwrap_or(0),
            trunc_b: l.get(o.trunc_b, &["trunc-b"])?.unwrap_or(4),
            group: l.get(o.group.clone(), &["group"])?.unwrap_or_else(|| "so3".into()),
            cutoff: l.get(o.cutoff, &["cutoff"])?.unwrap_or(60),
            mode: l.get(o.mode.clone(), &["mode"])?.unwrap_or_else(|| "transversal".into()),
            op: l.get(o.op.clone(), &["op"])?.unwrap_or_else(|| "round-trip".into()),
            method: l.get(o.method.clone(), &["method"])?.unwrap_or_else(|| "fibered".into()),
            format,
            out: l.get(o.out.clone(), &["out"])?,
            jobs: l.get(o.jobs, &["jobs"])?.unwrap_or_else(default_jobs),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.budget == 0 {
            return Err(CliError::Usage("budget must be positive".into()));
        }
        if self.jobs == 0 {
            return Err(CliError::Usage("jobs must be positive".into()));
        }
        if self.samples == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        Ok(())
    }

    /// `n` for the odd model, `m` for the pair model.
    pub fn rank(&self) -> usize {
        match self.model {
            Model::Odd => self.n,
            Model::Pair => self.m,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}
