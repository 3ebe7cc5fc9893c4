//! Subcommand implementations.

use serde::{Deserialize, Serialize};

use emcor::baselines::{distance_correlation, distance_covariance, pearson_correlation};
use emcor::inference::permutation_test_ecov;
use emcor::report::{dependence_report, DependenceReport};
use emcor::transport::{solve_transport, TransportProblem};
use emcor::univariate::wasserstein_1d;
use emcor::Matrix;

use crate::config::{OutputFormat, SampleArgs, TestArgs, TransportArgs};
use crate::dataset::parse_dataset;
use crate::error::CliError;
use crate::output::{plain_line, to_json};

fn emit(text: String) {
    println!("{text}");
}

fn opt_line(key: &str, v: Option<f64>) -> String {
    match v {
        Some(v) => plain_line(key, v),
        None => format!("{key} = n/a"),
    }
}

pub fn run_ecor(args: &SampleArgs) -> Result<(), CliError> {
    let sample = parse_dataset(args)?;
    let report = dependence_report(&sample)?;
    eprintln!(
        "solved {} x {} atoms ({} arcs) in {:.3} s",
        report.solver.supply_nodes,
        report.solver.demand_nodes,
        report.solver.arcs,
        report.solver.solve_seconds
    );
    match args.format {
        OutputFormat::Json => emit(to_json(&report).map_err(emcor::Error::from)?),
        OutputFormat::Plain => emit(plain_report(&report)),
    }
    Ok(())
}

fn plain_report(r: &DependenceReport) -> String {
    let mut lines = vec![
        format!("n = {}", r.n),
        plain_line("ecov", r.ecov),
        plain_line("evar_x", r.evar_x),
        plain_line("evar_y", r.evar_y),
        plain_line("ecor", r.ecor),
        opt_line("ecov_lower_bound", r.ecov_lower_bound),
        plain_line("ecov_upper_bound", r.ecov_upper_bound),
        opt_line("conditional_upper_bound", r.conditional_upper_bound),
        opt_line("dcor", r.dcor),
        opt_line("pearson", r.pearson),
    ];
    if let Some(t) = &r.trivariate {
        lines.push(plain_line("trivariate_ecov", t.ecov));
        lines.push(plain_line("trivariate_ecor", t.ecor));
    }
    lines.join("\n")
}

#[derive(Serialize)]
struct DcorPayload {
    n: usize,
    dcov: f64,
    dcor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pearson: Option<f64>,
}

pub fn run_dcor(args: &SampleArgs) -> Result<(), CliError> {
    if !args.z_cols.is_empty() {
        return Err(CliError::Usage(
            "dcor is bivariate; drop --z-cols".into(),
        ));
    }
    let sample = parse_dataset(args)?;
    let payload = DcorPayload {
        n: sample.len(),
        dcov: distance_covariance(&sample)?,
        dcor: distance_correlation(&sample)?,
        pearson: match (
            sample.x().points().scalars(),
            sample.y().points().scalars(),
        ) {
            (Ok(xs), Ok(ys)) => pearson_correlation(xs, ys).ok(),
            _ => None,
        },
    };
    match args.format {
        OutputFormat::Json => emit(to_json(&payload).map_err(emcor::Error::from)?),
        OutputFormat::Plain => emit(
            [
                format!("n = {}", payload.n),
                plain_line("dcov", payload.dcov),
                plain_line("dcor", payload.dcor),
                opt_line("pearson", payload.pearson),
            ]
            .join("\n"),
        ),
    }
    Ok(())
}

#[derive(Serialize)]
struct WassersteinPayload {
    n_x: usize,
    n_y: usize,
    distance: f64,
}

pub fn run_wasserstein(args: &SampleArgs) -> Result<(), CliError> {
    if !args.z_cols.is_empty() {
        return Err(CliError::Usage(
            "wasserstein compares two margins; drop --z-cols".into(),
        ));
    }
    let sample = parse_dataset(args)?;
    let xs = sample.x().points().scalars().map_err(|_| {
        CliError::Usage("wasserstein needs a single real-valued x column".into())
    })?;
    let ys = sample.y().points().scalars().map_err(|_| {
        CliError::Usage("wasserstein needs a single real-valued y column".into())
    })?;
    let payload = WassersteinPayload {
        n_x: xs.len(),
        n_y: ys.len(),
        distance: wasserstein_1d(xs, ys)?,
    };
    match args.format {
        OutputFormat::Json => emit(to_json(&payload).map_err(emcor::Error::from)?),
        OutputFormat::Plain => emit(plain_line("distance", payload.distance)),
    }
    Ok(())
}

#[derive(Deserialize)]
struct TransportFile {
    supplies: Vec<u64>,
    demands: Vec<u64>,
    costs: Vec<Vec<f64>>,
    #[serde(default = "default_scale")]
    scale: f64,
}

fn default_scale() -> f64 {
    1.0
}

#[derive(Serialize)]
struct TransportPayload {
    cost: f64,
    flows: Vec<(usize, usize, u64)>,
}

pub fn run_transport(args: &TransportArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", args.input.display())))?;
    let file: TransportFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad problem file: {e}")))?;
    let problem = TransportProblem::new(
        file.supplies,
        file.demands,
        Matrix::from_rows(file.costs)?,
        file.scale,
    )?;
    let plan = solve_transport(&problem)?;
    let payload = TransportPayload {
        cost: plan.total_cost,
        flows: plan
            .flows
            .iter()
            .map(|(&(s, d), &units)| (s, d, units))
            .collect(),
    };
    match args.format {
        OutputFormat::Json => emit(to_json(&payload).map_err(emcor::Error::from)?),
        OutputFormat::Plain => {
            let mut lines = vec![plain_line("cost", payload.cost)];
            for (s, d, units) in &payload.flows {
                lines.push(format!("flow {s} -> {d}: {units}"));
            }
            emit(lines.join("\n"));
        }
    }
    Ok(())
}

pub fn run_test_independence(args: &TestArgs) -> Result<(), CliError> {
    let sample = parse_dataset(&args.sample)?;
    let result = permutation_test_ecov(&sample, args.permutations, args.seed)?;
    match args.sample.format {
        OutputFormat::Json => emit(to_json(&result).map_err(emcor::Error::from)?),
        OutputFormat::Plain => emit(
            [
                plain_line("observed_statistic", result.observed_statistic),
                format!("permutations = {}", result.permutations),
                plain_line("p_value", result.p_value),
                format!("seed = {}", result.seed),
            ]
            .join("\n"),
        ),
    }
    Ok(())
}

pub use crate::validate::run_validate;
