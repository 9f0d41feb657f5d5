use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::measures::SpectralMeasure;
use crate::simulator::{EntryDist, FeatureMixing, LambdaRule, SampleMixing, REFERENCE_SIZE};

#[derive(Debug, Parser)]
#[command(
    name = "depridge",
    version,
    about = "Asymptotic and simulated estimation error of ridge regression with dependent covariates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the fixed point at one setting and print the risk decomposition.
    #[command(args_override_self = true)]
    Solve(SolveArgs),
    /// Asymptotic risk along a grid of gamma, lambda or omega.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Monte Carlo risk along a grid.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Compare entry distributions of Z on common random numbers.
    #[command(args_override_self = true)]
    Universality(UniversalityArgs),
    /// Print the risk-minimizing lambda and check it on a grid.
    #[command(args_override_self = true)]
    OptimalLambda(OptimalArgs),
    /// Eigenvalues of AᵀA or a Stieltjes transform comparison.
    #[command(args_override_self = true)]
    Spectrum(SpectrumArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Sweep(_) => "sweep",
            Command::Simulate(_) => "simulate",
            Command::Universality(_) => "universality",
            Command::OptimalLambda(_) => "optimal-lambda",
            Command::Spectrum(_) => "spectrum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    Gamma,
    Lambda,
    Omega,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::Lambda => "lambda",
            Axis::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scale {
    Lin,
    Log,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    /// Signal scale: β⋆ has i.i.d. entries of variance α²/d.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Noise standard deviation.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Limiting spectrum of AᵀA (identity, atoms:w:v,..., szego:c,...[@N], file:PATH).
    #[arg(long = "mu-a", default_value = "identity", value_parser = parse_measure)]
    pub mu_a: SpectralMeasure,
    /// Limiting spectrum of BᵀB.
    #[arg(long = "mu-b", default_value = "identity", value_parser = parse_measure)]
    pub mu_b: SpectralMeasure,
    /// Take μ_A from a mixing model (identity, ar:..., redundancy:ω, diag:...) instead.
    #[arg(long = "model-a", value_parser = parse_sample_mixing, conflicts_with = "mu_a")]
    pub model_a: Option<SampleMixing>,
    /// Size at which the Redundancy spectrum is sampled.
    #[arg(long = "ref-n", default_value_t = REFERENCE_SIZE)]
    pub ref_n: usize,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_enum)]
    pub axis: Axis,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "values"
    )]
    pub start: Option<f64>,
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "values"
    )]
    pub stop: Option<f64>,
    #[arg(long, required_unless_present = "values")]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = Scale::Lin)]
    pub scale: Scale,
    /// Explicit increasing list of axis values, instead of start/stop/steps.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["start", "stop", "steps"])]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub gamma: f64,
    /// A number, `track-gamma` or `optimal`.
    #[arg(long, allow_negative_numbers = true, value_parser = parse_lambda)]
    pub lambda: LambdaRule,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub measures: MeasureArgs,
    /// Also write the record as a one-row CSV.
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_lambda)]
    pub lambda: Option<LambdaRule>,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub measures: MeasureArgs,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Sample mixing A: identity, ar:w0,..., redundancy:ω, diag:v1,...
    #[arg(long = "model-a", default_value = "identity", value_parser = parse_sample_mixing)]
    pub model_a: SampleMixing,
    /// Feature mixing B: identity or diag:v1,...
    #[arg(long = "model-b", default_value = "identity", value_parser = parse_feature_mixing)]
    pub model_b: FeatureMixing,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Base seed; every random draw derives from it.
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_lambda)]
    pub lambda: Option<LambdaRule>,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Entry distribution of Z.
    #[arg(long, default_value = "gaussian", value_parser = parse_dist)]
    pub dist: EntryDist,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct UniversalityArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, allow_negative_numbers = true, value_parser = parse_lambda)]
    pub lambda: LambdaRule,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    #[arg(long)]
    pub gamma: f64,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub measures: MeasureArgs,
    /// Points of the log-spaced check grid.
    #[arg(long = "grid-points", default_value_t = 400)]
    pub grid_points: usize,
    /// Grid spans [λ⋆/span, λ⋆·span].
    #[arg(long, default_value_t = 100.0)]
    pub span: f64,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "model-a", default_value = "identity", value_parser = parse_sample_mixing)]
    pub model_a: SampleMixing,
    #[arg(long)]
    pub n: usize,
    /// Print the eigenvalues instead of the Stieltjes comparison.
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub output: Option<String>,
}

fn parse_measure(s: &str) -> Result<SpectralMeasure> {
    s.parse()
}

fn parse_sample_mixing(s: &str) -> Result<SampleMixing> {
    s.parse()
}

fn parse_feature_mixing(s: &str) -> Result<FeatureMixing> {
    s.parse()
}

fn parse_dist(s: &str) -> Result<EntryDist> {
    s.parse()
}

fn parse_lambda(s: &str) -> Result<LambdaRule> {
    s.parse()
}

impl FromStr for LambdaRule {
    type Err = Error;

    /// A number, `track-gamma` (λ = γ) or `optimal` (λ = σ²γ/α²).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "track-gamma" => Ok(LambdaRule::TrackGamma),
            "optimal" => Ok(LambdaRule::Optimal),
            other => other
                .parse::<f64>()
                .map(LambdaRule::Fixed)
                .map_err(|_| Error::Parse(format!("bad lambda '{other}'"))),
        }
    }
}
