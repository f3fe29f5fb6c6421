//! Command-line arguments and their accepted ranges.
//!
//! Numeric defaults come from [`annulus_core::defaults`]. Values outside the
//! ranges below are rejected with code `out_of_range` before any compute.
//!
//! | parameter                  | range              |
//! |----------------------------|--------------------|
//! | `rho`, `r`, `R`            | (0, 1)             |
//! | `num_modes`                | 1 ..= 1024         |
//! | `reparam_degree`           | 0 ..= 128          |
//! | `tol`                      | (0, 1)             |
//! | `max_iter`                 | 1 ..= 100000       |
//! | `multistart`               | 0 ..= 64           |
//! | `charges`                  | 4 ..= 2048         |
//! | `collocation`              | charges ..= 8192   |
//! | `--res` (each side)        | 2 ..= 4096         |
//! | `alpha`                    | (0, 1)             |
//! | `ANNULUS_THREADS`          | 1 ..= 1024         |

use std::path::PathBuf;
use std::str::FromStr;

use annulus_core::defaults;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{CliError, CliResult};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "ANNULUS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "annulus", version, about = "Energy-minimizing harmonic maps between annuli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Minimize Dirichlet energy onto the domain between two curves.
    Minimize(MinimizeArgs),
    /// Conformal modulus of the domain between two curves.
    Modulus(ModulusArgs),
    /// Hopf constant, sign classification and bound audits of a map.
    Hopf(HopfArgs),
    /// Minimal-surface lift of a map, exported as OBJ.
    Lift(LiftArgs),
    /// Consolidated Hopf, energy, null and regularity audit of a map.
    Verify(VerifyArgs),
    /// Closed-form minimizer between two round annuli.
    #[command(name = "annulus-exact")]
    AnnulusExact(ExactArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Minimize(_) => "minimize",
            Command::Modulus(_) => "modulus",
            Command::Hopf(_) => "hopf",
            Command::Lift(_) => "lift",
            Command::Verify(_) => "verify",
            Command::AnnulusExact(_) => "annulus-exact",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MinimizeArgs {
    /// Problem JSON.
    #[arg(long)]
    pub config: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Send the unit circle to the inner curve and the ρ-circle to the outer one.
    #[arg(long)]
    pub swap_curves: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModulusArgs {
    #[arg(long)]
    pub outer: PathBuf,
    #[arg(long)]
    pub inner: PathBuf,
    #[arg(long, default_value_t = defaults::CHARGES_PER_CURVE)]
    pub charges: usize,
    #[arg(long, default_value_t = defaults::COLLOCATION_PER_CURVE)]
    pub collocation: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HopfArgs {
    /// Map JSON, or any report embedding one.
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LiftArgs {
    #[arg(long)]
    pub map: PathBuf,
    /// Hopf constant; must agree in sign with the map.
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    /// OBJ destination.
    #[arg(long)]
    pub out: PathBuf,
    /// Radial x angular resolution.
    #[arg(long, default_value = "64x256")]
    pub res: Resolution,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Hopf constant; fitted from the map when absent.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = defaults::ALPHA)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExactArgs {
    /// Source inner radius.
    #[arg(long)]
    pub r: f64,
    /// Target inner radius.
    #[arg(long = "R")]
    #[serde(rename = "R")]
    pub big_r: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub radial: usize,
    pub angular: usize,
}

impl FromStr for Resolution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected RADIALxANGULAR, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Resolution { radial: parse(a)?, angular: parse(b)? })
    }
}

pub fn check_unit_interval(name: &'static str, v: f64) -> CliResult<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(CliError::OutOfRange { name, value: v.to_string(), range: "(0, 1)" })
    }
}

pub fn check_count(name: &'static str, v: usize, lo: usize, hi: usize, range: &'static str) -> CliResult<()> {
    if (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(CliError::OutOfRange { name, value: v.to_string(), range })
    }
}

/// Reads the thread count from [`THREADS_ENV`], if set.
pub fn thread_count() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => {
            let n = raw.trim().parse::<usize>().map_err(|_| CliError::OutOfRange {
                name: THREADS_ENV,
                value: raw.clone(),
                range: "1 ..= 1024",
            })?;
            check_count(THREADS_ENV, n, 1, 1024, "1 ..= 1024")?;
            Ok(Some(n))
        }
    }
}
