//! Command-line surface: subcommands, flags, metric choices.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "emcor",
    about = "Earth mover's dependence measures for metric-space samples",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full dependence report: eCov, eVar, eCor, bounds, baselines.
    Ecor(SampleArgs),
    /// Distance covariance/correlation and Pearson baselines only.
    Dcor(SampleArgs),
    /// 1-d Wasserstein distance between two real-valued columns.
    Wasserstein(SampleArgs),
    /// Solve a balanced transportation problem from a JSON file.
    Transport(TransportArgs),
    /// Permutation independence test with the eCov statistic.
    TestIndependence(TestArgs),
    /// Seeded self-checks: closed forms, bounds, Monte Carlo suites.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// CSV file with a header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Column names of the X margin (comma separated for multi-d points).
    #[arg(long = "x-cols", value_delimiter = ',', required = true)]
    pub x_cols: Vec<String>,
    /// Column names of the Y margin.
    #[arg(long = "y-cols", value_delimiter = ',', required = true)]
    pub y_cols: Vec<String>,
    /// Optional third margin.
    #[arg(long = "z-cols", value_delimiter = ',')]
    pub z_cols: Vec<String>,
    /// euclidean | manhattan | discrete | matrix:<path>
    #[arg(long = "metric-x", default_value = "euclidean")]
    pub metric_x: MetricChoice,
    #[arg(long = "metric-y", default_value = "euclidean")]
    pub metric_y: MetricChoice,
    #[arg(long = "metric-z", default_value = "euclidean")]
    pub metric_z: MetricChoice,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    /// JSON file {"supplies": [...], "demands": [...], "costs": [[...]], "scale": number}.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Args, Debug)]
pub struct TestArgs {
    #[command(flatten)]
    pub sample: SampleArgs,
    /// Number of Y-margin permutations (at least 19).
    #[arg(long, default_value_t = 199)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo vs quadrature agreement tolerance for the cube checks.
    #[arg(long = "mc-tolerance", default_value_t = 0.003)]
    pub mc_tolerance: f64,
    /// Slack around the Gaussian eCor bound corridor.
    #[arg(long = "bound-slack", default_value_t = 0.15)]
    pub bound_slack: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    pub format: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Plain,
}

/// Metric selection per margin.
#[derive(Clone, Debug)]
pub enum MetricChoice {
    Euclidean,
    Manhattan,
    Discrete,
    /// Precomputed distance matrix; points are row indices.
    Matrix(PathBuf),
}

impl FromStr for MetricChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euclidean" => Ok(MetricChoice::Euclidean),
            "manhattan" => Ok(MetricChoice::Manhattan),
            "discrete" => Ok(MetricChoice::Discrete),
            other => match other.strip_prefix("matrix:") {
                Some(path) if !path.is_empty() => Ok(MetricChoice::Matrix(PathBuf::from(path))),
                _ => Err(format!(
                    "unknown metric '{other}' (use euclidean | manhattan | discrete | matrix:<path>)"
                )),
            },
        }
    }
}
