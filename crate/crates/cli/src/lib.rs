//! Library side of the `gnatfam` command: file formats, commands and the
//! argument parser.

pub mod commands;
pub mod files;

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

pub use commands::{EnumerateArgs, MathFailure, Options, Report, Which};
pub use files::{family_from_json, family_to_json, FanSpec, InstanceFile};

pub const MAX_CATALOG_ENV: &str = "GNATFAM_MAX_CATALOG";

#[derive(Debug, Parser)]
#[command(
    name = "gnatfam",
    version,
    about = "Enumerate gnat-families on toric resolutions of C^n/G"
)]
pub struct Cli {
    /// Worker threads for per-ray computations (default: available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fan and list its rays with their kinds.
    Validate {
        /// Instance file, or - for stdin.
        instance: PathBuf,
    },
    /// Print the canonical, maximal-shift or minimal-shift family.
    Families { which: Which, instance: PathBuf },
    /// Count, and optionally write out, every normalised reductor set.
    Enumerate {
        instance: PathBuf,
        /// Only count (the default when neither --materialize nor --orbits is given).
        #[arg(long, conflicts_with_all = ["materialize", "orbits"])]
        count_only: bool,
        /// Write one family file per catalog member into DIR.
        #[arg(long, value_name = "DIR")]
        materialize: Option<PathBuf>,
        /// Partition the catalog into symmetry orbits.
        #[arg(long)]
        orbits: bool,
    },
    /// Check a family file against the reductor condition.
    Check {
        instance: PathBuf,
        #[arg(long = "set", value_name = "FILE")]
        set: PathBuf,
    },
    /// Decide linear equivalence of two family files.
    Equiv {
        instance: PathBuf,
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
    },
}

/// Reads the materialization cap from the environment.
pub fn max_catalog_from_env() -> Result<u128> {
    match std::env::var(MAX_CATALOG_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{MAX_CATALOG_ENV}={v:?} is not a non-negative integer")),
        Err(std::env::VarError::NotPresent) => Ok(gnatfam_core::DEFAULT_MAX_CATALOG),
        Err(e) => bail!("{MAX_CATALOG_ENV}: {e}"),
    }
}

pub fn run(cli: &Cli) -> Result<Report> {
    let opts = Options {
        jobs: cli.jobs.map(|j| j as usize),
        max_catalog: max_catalog_from_env()?,
    };
    match &cli.command {
        Command::Validate { instance } => commands::validate(instance),
        Command::Families { which, instance } => commands::families(instance, *which, &opts),
        Command::Enumerate {
            instance,
            materialize,
            orbits,
            ..
        } => {
            let args = EnumerateArgs {
                materialize: materialize.clone(),
                orbits: *orbits,
            };
            commands::enumerate(instance, &args, &opts)
        }
        Command::Check { instance, set } => commands::check(instance, set, &opts),
        Command::Equiv { instance, a, b } => commands::equiv(instance, a, b, &opts),
    }
}

/// Maps an error to its exit code: 2 for mathematical failures, 1 otherwise.
pub fn error_exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<MathFailure>().is_some() {
        2
    } else {
        1
    }
}
