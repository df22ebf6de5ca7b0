//! Command-line front end.
//!
//! Exit codes: `0` when every check passes, `1` when a restriction, a
//! threshold or an inapplicable symmetry fails, `2` for config and I/O
//! errors, including unknown figure ids.

pub mod commands;
pub mod config;
pub mod figure;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
pub use config::{EngineKind, FamilyConfig, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "tumour-bvp", version, about = "Exact solutions of a tumour-growth moving-boundary problem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive a family's constants and check its parameter restrictions.
    Validate(Common),
    /// Governing, boundary, reduced and orbit residuals of a family.
    Verify(Common),
    /// Surface data for one of the five figures.
    Figure {
        #[command(flatten)]
        common: Common,
        /// Figure number, 1 to 5; overrides `[figure] id`.
        #[arg(long)]
        id: Option<u8>,
    },
    /// Residuals along the symmetry orbits listed under `[orbit]`.
    Orbit(Common),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `[output] dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Multiplies every residual threshold.
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,
    /// Grid size of figure surfaces.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Overrides `[engine] kind`.
    #[arg(long, value_enum)]
    pub engine: Option<EngineKind>,
}

/// Result of a subcommand that ran to completion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    /// Human-readable summary.
    pub text: String,
}

/// Exit code for an error: `2` for config and I/O problems, `1` otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

pub(crate) fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

fn load(common: &Common, required: bool) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None if required => return Err(Error::Config("--config is required".into())),
        None => RunConfig::default(),
    };
    if let Some(kind) = common.engine {
        cfg.engine.kind = kind;
    }
    if !(common.tol_scale > 0.0) {
        return Err(Error::Config(format!("--tol-scale must be positive, got {}", common.tol_scale)));
    }
    Ok(cfg)
}

fn out_dir(common: &Common, cfg: &RunConfig) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .unwrap_or_else(|| PathBuf::from("tumour-bvp-out"))
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Validate(c) => {
            let cfg = load(c, true)?;
            commands::validate(&cfg, &out_dir(c, &cfg))
        }
        Command::Verify(c) => {
            let cfg = load(c, true)?;
            commands::verify(&cfg, &out_dir(c, &cfg), c.tol_scale)
        }
        Command::Orbit(c) => {
            let cfg = load(c, true)?;
            commands::orbit(&cfg, &out_dir(c, &cfg))
        }
        Command::Figure { common, id } => {
            let cfg = load(common, false)?;
            let fig = cfg.figure.unwrap_or_default();
            let id = id
                .or(fig.id)
                .ok_or_else(|| Error::Config("no figure id: pass --id or set [figure] id".into()))?;
            let grid = common.grid.or(fig.grid).unwrap_or(figure::DEFAULT_GRID);
            let r_min = fig.r_min_fraction.unwrap_or_else(figure::default_r_min_fraction);
            figure::figure(id, grid, r_min, &out_dir(common, &cfg))
        }
    }
}

/// Parses `args`, runs the command, prints its summary and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
