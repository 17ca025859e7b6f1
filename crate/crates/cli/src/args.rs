use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use univalence_core::certify::FamilyParams;
use univalence_core::oracle::{OracleConfig, OracleMethod};
use univalence_core::polycore::{rational_to_f64, text::parse_real};

#[derive(Debug, Parser)]
#[command(name = "univalence-lab", version, about = "Certify univalence of quartics q((z+a)^2) in the unit disc")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write the JSON report to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub json_out: Option<PathBuf>,

    /// Seed for the oracles' jittered sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Tolerance for floating-point decomposition.
    #[arg(long, global = true, default_value_t = univalence_core::decompose::DEFAULT_DECOMPOSE_TOL)]
    pub tol: f64,

    /// Comma-separated sampling radii for the oracles, each in (0, 1).
    #[arg(long, global = true, value_delimiter = ',', value_name = "LIST")]
    pub radii: Option<Vec<f64>>,

    /// Run the collision oracle in sweeps.
    #[arg(long, global = true)]
    pub with_oracle: bool,

    /// Reject input that is not of degree four.
    #[arg(long, global = true)]
    pub require_quartic: bool,
}

impl GlobalOpts {
    pub fn oracle_config(&self, base: OracleConfig) -> OracleConfig {
        OracleConfig {
            seed: self.seed,
            radii: self.radii.clone().unwrap_or(base.radii.clone()),
            ..base
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose, certify and oracle-check one polynomial.
    Analyze(InputArgs),
    /// Certificate (and optionally oracle) verdicts over an (a, C) grid.
    Sweep(SweepArgs),
    /// Emit SVG or CSV for roots, boundary images or the hyperbola region.
    Plot(PlotArgs),
    /// Recover (a, q) with p(z) = q((z + a)^2).
    Decompose {
        /// Coefficients, constant term first, e.g. "0, 1, 7/6, 2/3, 1/6".
        poly: String,
    },
    /// Run the structure-blind oracles only.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Coefficients, constant term first, e.g. "0, 1, 7/6, 2/3, 1/6".
    pub poly: Option<String>,

    /// Family parameters: a=<..> C=<..> [alpha=1] [gamma=0].
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
    pub family: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: Source,

    /// Oracles to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "collision,boundary,winding")]
    pub methods: Vec<MethodArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Collision,
    Boundary,
    Winding,
}

impl From<MethodArg> for OracleMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Collision => OracleMethod::CollisionScan,
            MethodArg::Boundary => OracleMethod::BoundarySimplicity,
            MethodArg::Winding => OracleMethod::WindingScan,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Range of a as MIN:MAX.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub a: (f64, f64),

    /// Range of C as MIN:MAX.
    #[arg(long = "c", alias = "C", allow_hyphen_values = true, value_parser = parse_range)]
    pub c: (f64, f64),

    /// Grid step for both axes.
    #[arg(long)]
    pub step: f64,

    /// Write the CSV to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// One of: roots, boundary-image, region.
    pub kind: String,

    /// Coefficients for roots and boundary-image plots (defaults to f4).
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,

    /// Family parameters for roots and boundary-image plots.
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE", conflicts_with = "poly")]
    pub family: Option<Vec<String>>,

    /// Circle radius for boundary-image.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,

    /// Sample count for boundary-image.
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,

    /// Shift a for the region plot.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    pub a: f64,

    /// Threshold t for the region plot, (x + a)^2 - y^2 = t.
    #[arg(long, allow_hyphen_values = true, default_value_t = -0.5)]
    pub t: f64,

    /// svg or csv.
    #[arg(long, default_value = "svg")]
    pub format: String,

    /// Write to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn parse_number(s: &str) -> Result<f64> {
    parse_real(s.trim())
        .map(|r| rational_to_f64(&r))
        .ok_or_else(|| anyhow!("`{s}` is not a real number"))
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got `{s}`"))?;
    let lo = parse_number(lo).map_err(|e| e.to_string())?;
    let hi = parse_number(hi).map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

/// `a=<..> C=<..> [alpha=<..>] [gamma=<..>]`; `c` is accepted for `C`.
pub fn parse_family(items: &[String]) -> Result<FamilyParams> {
    let (mut a, mut c, mut alpha, mut gamma) = (None, None, 1.0, 0.0);
    for item in items {
        for part in item.split(|ch: char| ch == ',' || ch.is_whitespace()).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .with_context(|| format!("expected KEY=VALUE, got `{part}`"))?;
            let v = parse_number(value)?;
            match key {
                "a" => a = Some(v),
                "C" | "c" => c = Some(v),
                "alpha" => alpha = v,
                "gamma" => gamma = v,
                other => bail!("unknown family key `{other}` (expected a, C, alpha, gamma)"),
            }
        }
    }
    let a = a.context("--family needs a=<value>")?;
    let c = c.context("--family needs C=<value>")?;
    Ok(FamilyParams::new(a, alpha, c, gamma)?)
}
