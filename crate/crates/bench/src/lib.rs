//! Shared input generators for the benchmark targets.

use emcor::dependence::PairedSample;
use emcor::transport::TransportProblem;
use emcor::Matrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Correlated real-valued pairs, the bread-and-butter eCov input.
pub fn correlated_sample(n: usize, seed: u64) -> PairedSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
    let ys: Vec<f64> = (0..n)
        .map(|i| 0.5 * xs[i] + rng.random_range(-2.0..2.0))
        .collect();
    PairedSample::from_reals(&xs, &ys).unwrap()
}

/// Dense random transportation instance with unit demands.
pub fn random_transport(supplies: usize, demands: usize, seed: u64) -> TransportProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per_supply = (demands / supplies) as u64;
    let mut supply_masses = vec![per_supply; supplies];
    let leftover = demands as u64 - per_supply * supplies as u64;
    supply_masses[0] += leftover;
    let mut costs = Matrix::zeros(supplies, demands);
    for i in 0..supplies {
        for j in 0..demands {
            costs[(i, j)] = rng.random_range(0.0..10.0);
        }
    }
    TransportProblem::new(supply_masses, vec![1; demands], costs, 1.0).unwrap()
}

/// Uniform reals for the univariate closed forms.
pub fn real_sample(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-100.0..100.0)).collect()
}
