use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use parityprobe::{ProbeConfig, SearchBounds};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "parityprobe",
    version,
    about = "Phase estimation with heralded parity-definite probe states"
)]
pub struct Cli {
    /// Worker threads for grid evaluations.
    #[arg(long, global = true, env = "PARITYPROBE_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form metrology report at one configuration.
    Report {
        #[command(flatten)]
        probe: ProbeArgs,
        /// Detector efficiency in (0, 1]; adds the first-order detector model.
        #[arg(long, allow_negative_numbers = true)]
        eta: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reports along a phase grid at fixed (S, B).
    Scan {
        #[command(flatten)]
        probe: ProbeArgs,
        #[command(flatten)]
        grid: PhaseGridArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Minimize the Cramér–Rao bound over (S, B), at one phase or along a grid.
    Optimize {
        #[command(flatten)]
        probe: ProbeArgs,
        /// Optimize at every point of the phase grid instead of at --phi.
        #[arg(long)]
        curve: bool,
        #[command(flatten)]
        grid: PhaseGridArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Optimized precision against mean photon number as phi approaches a landmark.
    Fig5 {
        #[arg(long)]
        k: usize,
        #[arg(long = "s2-db", default_value_t = 0.3)]
        s2_db: f64,
        /// Landmark phase as a multiple of pi; defaults to 2 for odd k and 1 for even k.
        #[arg(long = "phi-star-pi")]
        phi_star_pi: Option<f64>,
        /// Offsets below the landmark, strictly descending.
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.03, 0.01, 0.003, 0.001])]
        deltas: Vec<f64>,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Optimized table of minimal uncertainties for k = 1..4.
    Table1 {
        #[arg(long = "s2-db", default_value_t = 0.3)]
        s2_db: f64,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the closed forms with the Fock-space simulation.
    OracleCheck {
        /// Use the reduced grid.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// JSON file with any of s_db, s2_db, big_b, k, phi; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Photons detected in the measurement mode.
    #[arg(long)]
    pub k: Option<usize>,
    /// Reference squeezing in dB.
    #[arg(long = "s-db", allow_negative_numbers = true)]
    pub s_db: Option<f64>,
    /// Auxiliary squeezing in dB.
    #[arg(long = "s2-db", allow_negative_numbers = true)]
    pub s2_db: Option<f64>,
    /// Beam-splitter parameter B = R/T.
    #[arg(long = "B", allow_negative_numbers = true)]
    pub big_b: Option<f64>,
    /// Phase in radians.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "phi_pi")]
    pub phi: Option<f64>,
    /// Phase as a multiple of pi.
    #[arg(long = "phi-pi", allow_negative_numbers = true)]
    pub phi_pi: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PhaseGridArgs {
    /// First phase of the grid, radians.
    #[arg(long = "phi-min", default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi_min: f64,
    /// Last phase of the grid, radians.
    #[arg(long = "phi-max", default_value_t = 4.0 * PI, allow_negative_numbers = true)]
    pub phi_max: f64,
    #[arg(long, default_value_t = 401)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "s-min", default_value_t = 0.05)]
    pub s_min: f64,
    #[arg(long = "s-max", default_value_t = 2.0)]
    pub s_max: f64,
    #[arg(long = "b-min", default_value_t = 0.1)]
    pub b_min: f64,
    #[arg(long = "b-max", default_value_t = 20.0)]
    pub b_max: f64,
    /// Coarse-grid points per axis.
    #[arg(long, default_value_t = 48)]
    pub grid: usize,
}

impl BoundsArgs {
    pub fn resolve(&self) -> Result<SearchBounds, CliError> {
        Ok(SearchBounds::new(
            (self.s_min, self.s_max),
            (self.b_min, self.b_max),
            self.grid,
        )?)
    }
}

impl PhaseGridArgs {
    pub fn resolve(&self) -> Result<Vec<f64>, CliError> {
        if self.points < 2 {
            return Err(CliError::Invalid(format!(
                "--points must be at least 2, got {}",
                self.points
            )));
        }
        if !(self.phi_min.is_finite() && self.phi_max.is_finite() && self.phi_min < self.phi_max) {
            return Err(CliError::Invalid(format!(
                "phase range needs finite --phi-min < --phi-max, got [{}, {}]",
                self.phi_min, self.phi_max
            )));
        }
        let n = self.points - 1;
        Ok((0..=n)
            .map(|i| {
                if i == n {
                    self.phi_max
                } else {
                    self.phi_min + (self.phi_max - self.phi_min) * i as f64 / n as f64
                }
            })
            .collect())
    }
}

/// Config-file contents; every key optional so flags can fill the rest.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialSettings {
    s_db: Option<f64>,
    s2_db: Option<f64>,
    big_b: Option<f64>,
    k: Option<usize>,
    phi: Option<f64>,
}

fn read_config(path: &Path) -> Result<PartialSettings, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigIo {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::ConfigParse {
        path: path.to_owned(),
        source,
    })
}

/// Probe fields after merging the config file with the flags.
#[derive(Debug, Clone, Copy)]
pub struct Merged {
    pub s_db: Option<f64>,
    pub s2_db: Option<f64>,
    pub big_b: Option<f64>,
    pub k: Option<usize>,
    pub phi: Option<f64>,
}

fn need<T>(v: Option<T>, flag: &str, key: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("missing {flag} (or `{key}` in --config)")))
}

impl Merged {
    pub fn k(&self) -> Result<usize, CliError> {
        need(self.k, "--k", "k")
    }

    pub fn s_db(&self) -> Result<f64, CliError> {
        need(self.s_db, "--s-db", "s_db")
    }

    pub fn s2_db(&self) -> Result<f64, CliError> {
        need(self.s2_db, "--s2-db", "s2_db")
    }

    pub fn big_b(&self) -> Result<f64, CliError> {
        need(self.big_b, "--B", "big_b")
    }

    pub fn phi(&self) -> Result<f64, CliError> {
        need(self.phi, "--phi or --phi-pi", "phi")
    }

    pub fn config(&self) -> Result<ProbeConfig, CliError> {
        Ok(ProbeConfig::from_db(
            self.s_db()?,
            self.s2_db()?,
            self.big_b()?,
            self.k()?,
            self.phi()?,
        )?)
    }
}

impl ProbeArgs {
    pub fn merge(&self) -> Result<Merged, CliError> {
        let file = match &self.config {
            Some(path) => read_config(path)?,
            None => PartialSettings::default(),
        };
        let phi = self.phi.or(self.phi_pi.map(|m| m * PI)).or(file.phi);
        Ok(Merged {
            s_db: self.s_db.or(file.s_db),
            s2_db: self.s2_db.or(file.s2_db),
            big_b: self.big_b.or(file.big_b),
            k: self.k.or(file.k),
            phi,
        })
    }
}
