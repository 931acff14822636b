//! Batch front end for `complement-geometry`: builds a chart from a TOML
//! config, runs one command, and reports in text or JSON.
//!
//! Exit codes: 0 when the command succeeds and every checked property holds,
//! 1 when a property is violated (the report says which), 2 for usage,
//! configuration and input errors.

mod commands;
mod config;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

use complement_geometry::algebra::ScalarDomain;

pub use config::{RunConfig, Settings};

#[derive(Parser, Debug)]
#[command(name = "cgeom", version, about = "Exact geometry of the complements of a subspace")]
pub struct Cli {
    /// TOML file with `field`, `n`, `k` and optional `seed`, `w_basis`, `u_basis`
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for sampled scalars (overrides the config)
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List every complement of W by its chart coordinate
    Enumerate,
    /// Classify the lines through U as regular or cones
    ClassifyLines,
    /// The regulus through W and two complementary complements
    Regulus {
        /// Two coordinate matrices as JSON, e.g. '[[0,0],[0,0]]' '[[1,0],[0,1]]'
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        through: Vec<String>,
        /// Also write the transversal set to this file
        #[arg(long)]
        transversals_out: Option<PathBuf>,
    },
    /// Recover a regulus from its set of transversals
    Reconstruct {
        #[arg(long)]
        transversals: PathBuf,
    },
    /// Check both dual-spread conditions for a candidate file
    CheckDualSpread { file: PathBuf },
    /// Build a dual spread from a *-transversal family file
    BuildDualSpread {
        family: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract a *-transversal family from a dual spread (0-based index)
    ExtractFamily {
        file: PathBuf,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("invalid config: {0}")]
    Config(#[from] toml::de::Error),
    #[error(transparent)]
    Core(#[from] complement_geometry::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Self::Pass => 0,
            Self::Fail => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "fail",
        }
    }

    fn from_holds(holds: bool) -> Self {
        if holds { Self::Pass } else { Self::Fail }
    }
}

/// A finished run: the report in both forms plus files to write.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub json: Value,
    pub text: String,
    pub files: Vec<(PathBuf, Value)>,
}

impl Outcome {
    /// The report as printed for the chosen format.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let settings = Settings::load(cli.config.as_deref(), cli.seed)?;
    match settings.domain.clone() {
        ScalarDomain::Finite(f) => commands::run(f, &settings, &cli.command),
        ScalarDomain::Quaternion(q) => commands::run(q, &settings, &cli.command),
    }
}

/// Writes the outcome's files as pretty JSON.
pub fn write_files(outcome: &Outcome) -> Result<(), CliError> {
    for (path, value) in &outcome.files {
        let mut s = serde_json::to_string_pretty(value).expect("serializable");
        s.push('\n');
        std::fs::write(path, s).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(())
}
