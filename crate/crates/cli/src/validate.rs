//! Seeded self-check harness behind `emcor validate`: reruns the closed
//! forms, identities, bounds, and Monte Carlo suites and prints a pass/fail
//! table. Deterministic for a fixed seed.

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use emcor::dependence::{
    bernoulli_ecov_closed_form, conditional_coupling_ecov, discrete_ecov_exact, ecov_lower_bound,
    empirical_ecor, empirical_ecov, empirical_evar, BernoulliPair, DiscreteJoint, PairedSample,
};
use emcor::inference::{mc_validate_cube, mc_validate_gaussian, permutation_test_ecov};
use emcor::univariate::{
    cube_evar_erf_integral, evar_cdf_integral, gini_mean_difference, gini_mean_difference_pairwise,
};

use crate::config::{OutputFormat, ValidateArgs};
use crate::error::CliError;
use crate::output::to_json;

#[derive(Serialize)]
struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct ValidatePayload {
    seed: u64,
    checks: Vec<Check>,
    all_pass: bool,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail,
    }
}

fn four_point_check() -> Check {
    let s = PairedSample::from_reals(&[1.0, 2.0, 3.0, 4.0], &[4.0, 2.0, 3.0, 1.0]).unwrap();
    let ecov = empirical_ecov(&s).unwrap();
    let ecor = empirical_ecor(&s).unwrap();
    let pass = (ecov - 1.0).abs() <= 1e-9 && (ecor - 0.8).abs() <= 1e-9;
    check(
        "four-point sample",
        pass,
        format!("eCov {ecov:.12}, eCor {ecor:.12}"),
    )
}

fn indicator_check() -> Check {
    let mut worst: f64 = 0.0;
    for px_num in 1..4i64 {
        for py_num in 1..5i64 {
            let px = Rational64::new(px_num, 4);
            let py = Rational64::new(py_num, 5);
            let lo = Rational64::zero().max(px + py - Rational64::one());
            let hi = px.min(py);
            for k in 0..=3i64 {
                let pxy = lo + (hi - lo) * Rational64::new(k, 3);
                let b = BernoulliPair::new(px, py, pxy).unwrap();
                let joint = DiscreteJoint::bernoulli(&b).unwrap();
                let solver = discrete_ecov_exact(&joint).unwrap();
                let formula = bernoulli_ecov_closed_form(&b).to_f64().unwrap();
                worst = worst.max((solver - formula).abs());
            }
        }
    }
    check(
        "indicator closed form",
        worst <= 1e-9,
        format!("worst |solver - formula| = {worst:.2e}"),
    )
}

fn gini_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.random_range(1..=150usize);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let a = gini_mean_difference(&xs).unwrap();
        let b = gini_mean_difference_pairwise(&xs).unwrap();
        let c = evar_cdf_integral(&xs).unwrap();
        worst = worst.max((a - b).abs()).max((a - c).abs());
    }
    check(
        "gini identities",
        worst <= 1e-10,
        format!("worst spread = {worst:.2e}"),
    )
}

fn sandwich_check(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut pass = true;
    let mut detail = String::from("bounds held on 30 samples");
    for case in 0..30 {
        let n = rng.random_range(2..=15usize);
        let xs: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
        let s = PairedSample::from_reals(&xs, &ys).unwrap();
        let ecov = empirical_ecov(&s).unwrap();
        let evx = empirical_evar(s.x().points(), s.x().metric()).unwrap();
        let evy = empirical_evar(s.y().points(), s.y().metric()).unwrap();
        let lb = ecov_lower_bound(&s).unwrap();
        let ub = conditional_coupling_ecov(&s).unwrap();
        if ecov > evx.min(evy) + 1e-9 || lb > ecov + 1e-9 || ecov > ub + 1e-9 {
            pass = false;
            detail = format!("violated on case {case}");
            break;
        }
    }
    check("cbs and sandwich bounds", pass, detail)
}

fn cube_check(seed: u64, mc_tolerance: f64) -> Check {
    let q1 = cube_evar_erf_integral(1).unwrap();
    let mut pass = (q1 - 1.0 / 3.0).abs() <= 1e-6;
    let mut details = vec![format!("dim 1: quadrature {q1:.9}")];
    for dim in [2usize, 3] {
        let v = mc_validate_cube(dim, 1_000_000, seed.wrapping_add(dim as u64)).unwrap();
        let ok = (v.quadrature - v.estimate).abs() <= mc_tolerance
            && v.quadrature >= v.lower_bound - 1e-9
            && v.quadrature <= v.upper_bound + 1e-9;
        pass &= ok;
        details.push(format!(
            "dim {dim}: quadrature {:.6} vs mc {:.6}",
            v.quadrature, v.estimate
        ));
    }
    check("cube mean distance", pass, details.join("; "))
}

fn gaussian_check(seed: u64, slack: f64) -> Check {
    let mut pass = true;
    let mut details = Vec::new();
    for rho in [0.6, 0.9] {
        let v = mc_validate_gaussian(rho, 30, 20, seed.wrapping_add((rho * 100.0) as u64)).unwrap();
        let ok = v.mean_ecor <= v.upper_bound + slack && v.mean_ecor >= v.lower_bound - slack;
        pass &= ok;
        details.push(format!("rho {rho}: mean eCor {:.4}", v.mean_ecor));
    }
    check("gaussian bound corridor", pass, details.join("; "))
}

fn permutation_check(seed: u64) -> Check {
    let xs: Vec<f64> = (0..20).map(|i| i as f64).collect();
    let s = PairedSample::from_reals(&xs, &xs).unwrap();
    let res = permutation_test_ecov(&s, 199, seed).unwrap();
    check(
        "permutation test on y = x",
        res.p_value <= 0.01,
        format!("p = {:.6}", res.p_value),
    )
}

pub fn run_validate(args: &ValidateArgs) -> Result<(), CliError> {
    let seed = args.seed;
    let checks = vec![
        four_point_check(),
        indicator_check(),
        gini_check(seed),
        sandwich_check(seed),
        cube_check(seed, args.mc_tolerance),
        gaussian_check(seed, args.bound_slack),
        permutation_check(seed),
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    match args.format {
        OutputFormat::Json => {
            let payload = ValidatePayload {
                seed,
                checks,
                all_pass,
            };
            println!("{}", to_json(&payload).map_err(emcor::Error::from)?);
        }
        OutputFormat::Plain => {
            for c in &checks {
                println!(
                    "{} {:<28} {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Usage("validation checks failed".into()))
    }
}
