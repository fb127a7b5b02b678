use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "acstark",
    version,
    about = "Dynamic polarizability, ac-Stark shift and Rayleigh scattering amplitude of hydrogen 1s"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format; verification prints a readable report unless this is given.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Quadrature tolerance (absolute and relative).
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Smallest admissible recurrence denominator before a point is treated as a pole.
    #[arg(long, global = true)]
    pub guard: Option<f64>,

    /// Denominator below which results are flagged as near resonance.
    #[arg(long = "warn-band", global = true)]
    pub warn_band: Option<f64>,

    /// Half-width of the excluded band around the ionization threshold.
    #[arg(long = "threshold-guard", global = true)]
    pub threshold_guard: Option<f64>,

    /// Drop scan points inside the near-resonance band instead of flagging them.
    #[arg(long = "skip-resonances", global = true)]
    pub skip_resonances: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// key=value file with defaults for the options above; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Obs {
    Tau2,
    Kh,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the observables at one frequency.
    Eval {
        /// Photon frequency in atomic units.
        #[arg(long)]
        omega: f64,
        #[arg(long, value_enum, default_value = "all")]
        obs: Obs,
    },
    /// Evaluate the observables on a frequency grid.
    Scan {
        #[arg(long)]
        start: f64,
        #[arg(long)]
        end: f64,
        /// Number of grid points, endpoints included.
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "linear")]
        spacing: SpacingArg,
        #[arg(long, value_enum, default_value = "all")]
        obs: Obs,
    },
    /// Recompute the embedded reference tables and compare at printed precision.
    Verify {
        /// Tables to check (TableI, TableII, TableIII); all when omitted.
        tables: Vec<String>,
        /// Accepted deviation in units of the last printed digit.
        #[arg(long, conflicts_with = "rel")]
        units: Option<f64>,
        /// Accept a relative deviation instead.
        #[arg(long)]
        rel: Option<f64>,
    },
    /// List the intermediate resonance frequencies.
    Resonances {
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: u32,
    },
    /// Elastic scattering cross section relative to the free-electron value.
    #[command(group(ArgGroup::new("geometry").required(true).args(["theta", "eps_dot"])))]
    Xsection {
        #[arg(long)]
        omega: f64,
        /// Scattering angle in radians, unpolarized incident light.
        #[arg(long)]
        theta: Option<f64>,
        /// Polarization overlap eps . eps'.
        #[arg(long = "eps-dot")]
        eps_dot: Option<f64>,
    },
}
