//! Aggregated dependence report: the earth mover's quantities, their
//! sandwich bounds, the baselines, and solver diagnostics, in one
//! serializable struct consumed by the command-line frontend.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baselines::{distance_correlation, pearson_correlation};
use crate::dependence::{
    build_product_measure, conditional_coupling_ecov, ecov_lower_bound, empirical_evar,
    trivariate_ecor, trivariate_ecov, PairedSample,
};
use crate::error::{Error, Result};
use crate::transport::solve_transport;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolverStats {
    pub supply_nodes: usize,
    pub demand_nodes: usize,
    pub arcs: usize,
    /// Wall-clock solve time. Not serialized: report output stays
    /// byte-identical across runs of the same config and seed.
    #[serde(skip, default)]
    pub solve_seconds: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DependenceReport {
    pub n: usize,
    pub ecov: f64,
    pub evar_x: f64,
    pub evar_y: f64,
    pub ecor: f64,
    /// Triangle-inequality lower bound |mean d(x_i,y_i) - mean d(x_i,y_j)|;
    /// present only when both margins share one metric space.
    pub ecov_lower_bound: Option<f64>,
    /// min(eVar_x, eVar_y); eCov never exceeds it.
    pub ecov_upper_bound: f64,
    /// Conditional-quantile coupling bound; present when Y is real-valued.
    pub conditional_upper_bound: Option<f64>,
    pub dcor: Option<f64>,
    pub pearson: Option<f64>,
    /// Present when the sample carries a third margin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivariate: Option<TrivariateReport>,
    pub solver: SolverStats,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TrivariateReport {
    pub ecov: f64,
    /// eCov / min of the three margin eVars; may exceed 1.
    pub ecor: f64,
}

/// Computes the full report for a bivariate sample. Degenerate margins make
/// eCor undefined and are reported as an error, never as zero.
pub fn dependence_report(s: &PairedSample) -> Result<DependenceReport> {
    let evar_x = empirical_evar(s.x().points(), s.x().metric())?;
    let evar_y = empirical_evar(s.y().points(), s.y().metric())?;
    let denom = evar_x.min(evar_y);
    if denom <= 0.0 {
        return Err(Error::UndefinedECor);
    }
    let pm = build_product_measure(s)?;
    let start = Instant::now();
    let plan = solve_transport(&pm.problem)?;
    let solve_seconds = start.elapsed().as_secs_f64();
    let ecov = plan.total_cost;

    let lower = ecov_lower_bound(s).ok();
    let conditional = conditional_coupling_ecov(s).ok();
    let dcor = distance_correlation(s).ok();
    let pearson = match (s.x().points().scalars(), s.y().points().scalars()) {
        (Ok(xs), Ok(ys)) => pearson_correlation(xs, ys).ok(),
        _ => None,
    };
    let trivariate = match s.z() {
        Some(_) => Some(TrivariateReport {
            ecov: trivariate_ecov(s)?,
            ecor: trivariate_ecor(s)?,
        }),
        None => None,
    };

    Ok(DependenceReport {
        n: s.len(),
        ecov,
        evar_x,
        evar_y,
        ecor: ecov / denom,
        ecov_lower_bound: lower,
        ecov_upper_bound: denom,
        conditional_upper_bound: conditional,
        dcor,
        pearson,
        trivariate,
        solver: SolverStats {
            supply_nodes: pm.problem.num_supplies(),
            demand_nodes: pm.problem.num_demands(),
            arcs: pm.problem.num_arcs(),
            solve_seconds,
        },
    })
}

impl DependenceReport {
    /// The bound sandwich every report must satisfy (up to solver
    /// tolerance); exposed for tests and the validation harness.
    pub fn bounds_consistent(&self, tol: f64) -> bool {
        let lower_ok = self
            .ecov_lower_bound
            .is_none_or(|lb| lb - tol <= self.ecov);
        let cond_ok = self
            .conditional_upper_bound
            .is_none_or(|ub| self.ecov <= ub + tol);
        lower_ok && cond_ok && self.ecov <= self.ecov_upper_bound + tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_report() {
        let s = PairedSample::from_reals(&[1.0, 2.0, 3.0, 4.0], &[4.0, 2.0, 3.0, 1.0]).unwrap();
        let r = dependence_report(&s).unwrap();
        assert!((r.ecov - 1.0).abs() <= 1e-9);
        assert!((r.evar_x - 1.25).abs() <= 1e-12);
        assert!((r.evar_y - 1.25).abs() <= 1e-12);
        assert!((r.ecor - 0.8).abs() <= 1e-9);
        assert_eq!(r.solver.supply_nodes, 4);
        assert_eq!(r.solver.demand_nodes, 16);
        assert_eq!(r.solver.arcs, 64);
        assert!(r.bounds_consistent(1e-9));
        assert!(r.pearson.is_some());
        assert!(r.dcor.is_some());
    }

    #[test]
    fn degenerate_margin_is_an_error() {
        let s = PairedSample::from_reals(&[1.0, 2.0, 3.0], &[5.0, 5.0, 5.0]).unwrap();
        assert!(matches!(dependence_report(&s), Err(Error::UndefinedECor)));
    }

    #[test]
    fn report_roundtrips_through_json() {
        let s = PairedSample::from_reals(&[1.0, 2.0, 3.0, 4.0], &[4.0, 2.0, 3.0, 1.0]).unwrap();
        let r = dependence_report(&s).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: DependenceReport = serde_json::from_str(&json).unwrap();
        // solve_seconds is deliberately skipped; everything else must match
        assert_eq!(back.ecov, r.ecov);
        assert_eq!(back.ecor, r.ecor);
        assert_eq!(back.ecov_lower_bound, r.ecov_lower_bound);
        assert_eq!(back.conditional_upper_bound, r.conditional_upper_bound);
        assert_eq!(back.dcor, r.dcor);
        assert_eq!(back.pearson, r.pearson);
        assert_eq!(back.solver.arcs, r.solver.arcs);
        assert_eq!(back.solver.solve_seconds, 0.0);
    }
}
