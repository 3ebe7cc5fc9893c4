//! Permutation-based independence test with the empirical earth mover's
//! covariance as the statistic, plus seeded Monte Carlo harnesses that check
//! the Gaussian eCor bounds and the unit-cube mean distance against their
//! closed forms.
//!
//! Every replicate draws from its own counter-derived RNG stream, so results
//! do not depend on evaluation order or the degree of parallelism.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::dependence::{empirical_ecor, empirical_ecov, empirical_evar, PairedSample};
use crate::error::{Error, Result};
use crate::univariate::cube_evar_erf_integral;

/// Smallest permutation count accepted by the test.
pub const MIN_PERMUTATIONS: usize = 19;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TestResult {
    pub observed_statistic: f64,
    pub permutations: usize,
    /// Add-one estimate (1 + #{permuted >= observed}) / (B + 1), valid at
    /// any finite B.
    pub p_value: f64,
    pub seed: u64,
    pub replicate_statistics: Option<Vec<f64>>,
}

fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// Statistic of one permutation replicate; exposed so callers can verify
/// order-independence by recomputing any replicate in isolation.
pub fn permutation_replicate_statistic(
    s: &PairedSample,
    seed: u64,
    replicate: usize,
) -> Result<f64> {
    let mut rng = replicate_rng(seed, replicate as u64 + 1);
    let mut perm: Vec<usize> = (0..s.len()).collect();
    perm.shuffle(&mut rng);
    empirical_ecov(&s.with_permuted_y(&perm)?)
}

/// Independence test: permutes the Y margin B times and compares the
/// permuted eCov statistics against the observed one.
pub fn permutation_test_ecov(s: &PairedSample, permutations: usize, seed: u64) -> Result<TestResult> {
    if s.len() < 4 {
        return Err(Error::InvalidArgument(
            "permutation test needs at least 4 pairs".into(),
        ));
    }
    if permutations < MIN_PERMUTATIONS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_PERMUTATIONS} permutations"
        )));
    }
    // Degenerate margins make the statistic identically zero; refuse them.
    if empirical_evar(s.x().points(), s.x().metric())? <= 0.0
        || empirical_evar(s.y().points(), s.y().metric())? <= 0.0
    {
        return Err(Error::UndefinedECor);
    }
    let observed = empirical_ecov(s)?;
    let mut replicates = Vec::with_capacity(permutations);
    for r in 0..permutations {
        replicates.push(permutation_replicate_statistic(s, seed, r)?);
    }
    let exceed = replicates.iter().filter(|&&v| v >= observed).count();
    let p_value = (1 + exceed) as f64 / (permutations + 1) as f64;
    Ok(TestResult {
        observed_statistic: observed,
        permutations,
        p_value,
        seed,
        replicate_statistics: Some(replicates),
    })
}

/// Summary of a Gaussian Monte Carlo run against the eCor bounds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaussianValidation {
    pub rho: f64,
    pub sample_size: usize,
    pub replicates: usize,
    pub seed: u64,
    pub mean_ecor: f64,
    pub min_ecor: f64,
    pub max_ecor: f64,
    /// 25%, 50%, 75% quantiles of the replicate eCor values.
    pub quartiles: [f64; 3],
    /// sqrt(1 - sqrt(1 - rho^2)).
    pub upper_bound: f64,
    /// |1 - sqrt(1 - rho)| (margins share one variance here).
    pub lower_bound: f64,
}

/// Simulates standard bivariate normal pairs with correlation `rho` and
/// summarizes the empirical eCor across seeded replicates.
pub fn mc_validate_gaussian(
    rho: f64,
    n: usize,
    replicates: usize,
    seed: u64,
) -> Result<GaussianValidation> {
    if !(rho.is_finite() && rho.abs() < 1.0) {
        return Err(Error::InvalidArgument(
            "correlation must lie strictly inside (-1, 1)".into(),
        ));
    }
    if n < 10 {
        return Err(Error::InvalidArgument("need at least 10 pairs".into()));
    }
    if replicates == 0 {
        return Err(Error::InvalidArgument("need at least 1 replicate".into()));
    }
    let cross = (1.0 - rho * rho).sqrt();
    let mut values = Vec::with_capacity(replicates);
    for r in 0..replicates {
        let mut rng = replicate_rng(seed, r as u64 + 1);
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for _ in 0..n {
            let z1: f64 = rng.sample(StandardNormal);
            let z2: f64 = rng.sample(StandardNormal);
            xs.push(z1);
            ys.push(rho * z1 + cross * z2);
        }
        values.push(empirical_ecor(&PairedSample::from_reals(&xs, &ys)?)?);
    }
    values.sort_by(f64::total_cmp);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let quartile = |q: f64| values[((values.len() - 1) as f64 * q).round() as usize];
    let (upper, lower) = crate::dependence::gaussian_ecor_bounds(rho, 1.0, 1.0)?;
    Ok(GaussianValidation {
        rho,
        sample_size: n,
        replicates,
        seed,
        mean_ecor: mean,
        min_ecor: values[0],
        max_ecor: *values.last().unwrap(),
        quartiles: [quartile(0.25), quartile(0.5), quartile(0.75)],
        upper_bound: upper,
        lower_bound: lower,
    })
}

/// Monte Carlo estimate of the mean distance between independent uniform
/// points of the unit cube, with its quadrature and bound companions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeValidation {
    pub dim: usize,
    pub draws: usize,
    pub seed: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub quadrature: f64,
    /// sqrt(dim)/3.
    pub lower_bound: f64,
    /// sqrt(dim/6).
    pub upper_bound: f64,
}

pub fn mc_validate_cube(dim: usize, draws: usize, seed: u64) -> Result<CubeValidation> {
    if dim < 1 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if draws < 10_000 {
        return Err(Error::InvalidArgument(
            "need at least 10000 draws for a stable estimate".into(),
        ));
    }
    let mut rng = replicate_rng(seed, 1);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..draws {
        let mut d2 = 0.0;
        for _ in 0..dim {
            let a: f64 = rng.random();
            let b: f64 = rng.random();
            d2 += (a - b) * (a - b);
        }
        let d = d2.sqrt();
        sum += d;
        sum_sq += d * d;
    }
    let nf = draws as f64;
    let mean = sum / nf;
    let variance = (sum_sq / nf - mean * mean).max(0.0);
    let std_error = (variance / nf).sqrt();
    let df = dim as f64;
    Ok(CubeValidation {
        dim,
        draws,
        seed,
        estimate: mean,
        std_error,
        quadrature: cube_evar_erf_integral(dim)?,
        lower_bound: df.sqrt() / 3.0,
        upper_bound: (df / 6.0).sqrt(),
    })
}
