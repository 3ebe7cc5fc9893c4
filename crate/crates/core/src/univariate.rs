//! Closed forms for real-valued samples: empirical quantile inverses, the
//! 1-d Wasserstein distance, Gini's mean difference and its CDF-integral
//! identity, the mean-distance integral for uniform points in the unit
//! cube, and the earth mover's distance between equal-length sequences.

use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metric::{MetricSpec, PointBuffer};
use crate::transport::{solve_transport, TransportProblem};

fn check_sample(xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::EmptySample);
    }
    if xs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn sorted_copy(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Generalized inverse of the empirical CDF: sup { t : F(t) <= u }.
///
/// The sample must already be sorted ascending.
pub fn quantile_inverse(sorted: &[f64], u: f64) -> Result<f64> {
    check_sample(sorted)?;
    if sorted.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("sample is not sorted".into()));
    }
    if !(0.0..1.0).contains(&u) {
        return Err(Error::InvalidArgument(format!(
            "quantile level {u} outside [0, 1)"
        )));
    }
    let n = sorted.len();
    // F(t) <= u iff #{x_i <= t} <= floor(u n); the supremum is the next
    // order statistic.
    let m = ((u * n as f64).floor() as usize).min(n - 1);
    Ok(sorted[m])
}

/// 1-d Wasserstein distance between two empirical distributions.
///
/// Equal sizes reduce to the mean absolute difference of sorted samples;
/// unequal sizes use the exact piecewise-constant integral of |F - G|.
pub fn wasserstein_1d(xs: &[f64], ys: &[f64]) -> Result<f64> {
    check_sample(xs)?;
    check_sample(ys)?;
    let a = sorted_copy(xs);
    let b = sorted_copy(ys);
    if a.len() == b.len() {
        let n = a.len() as f64;
        return Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum::<f64>() / n);
    }
    let mut grid: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mut total = 0.0;
    let (mut ia, mut ib) = (0usize, 0usize);
    for w in grid.windows(2) {
        while ia < a.len() && a[ia] <= w[0] {
            ia += 1;
        }
        while ib < b.len() && b[ib] <= w[0] {
            ib += 1;
        }
        let f = ia as f64 / a.len() as f64;
        let g = ib as f64 / b.len() as f64;
        total += (f - g).abs() * (w[1] - w[0]);
    }
    Ok(total)
}

/// Gini's mean difference, (1/n^2) sum |x_i - x_j| over all ordered pairs,
/// computed in O(n log n) via the sorted identity
/// (2/n^2) sum_i (2i - n - 1) x_(i).
pub fn gini_mean_difference(xs: &[f64]) -> Result<f64> {
    check_sample(xs)?;
    if xs.windows(2).all(|w| w[0] == w[1]) {
        return Ok(0.0);
    }
    let sorted = sorted_copy(xs);
    let n = sorted.len();
    let sum: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (2.0 * (i + 1) as f64 - n as f64 - 1.0) * x)
        .sum();
    Ok(2.0 * sum / (n as f64 * n as f64))
}

/// The O(n^2) pairwise average; kept as an independent route for checks.
pub fn gini_mean_difference_pairwise(xs: &[f64]) -> Result<f64> {
    check_sample(xs)?;
    let n = xs.len() as f64;
    let mut sum = 0.0;
    for &a in xs {
        for &b in xs {
            sum += (a - b).abs();
        }
    }
    Ok(sum / (n * n))
}

/// Gini's mean difference via the identity 2 * integral of F(1-F) over the
/// line; exact for the piecewise-constant empirical CDF.
pub fn evar_cdf_integral(xs: &[f64]) -> Result<f64> {
    check_sample(xs)?;
    let sorted = sorted_copy(xs);
    let n = sorted.len() as f64;
    let mut total = 0.0;
    for (i, w) in sorted.windows(2).enumerate() {
        let f = (i + 1) as f64 / n;
        total += 2.0 * f * (1.0 - f) * (w[1] - w[0]);
    }
    Ok(total)
}

/// Mean euclidean distance of two independent uniform points in the unit
/// n-cube, via numerical quadrature of
/// (1/sqrt(pi)) * integral_0^inf {1 - (sqrt(pi) erf(u)/u - (1-e^{-u^2})/u^2)^n} du/u^2.
///
/// The integrand extends continuously to n/6 at u = 0; the tail is folded
/// onto a finite interval with u = 1/w so no cutoff error remains. The
/// result satisfies sqrt(n)/3 <= value <= sqrt(n/6).
pub fn cube_evar_erf_integral(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    let nf = n as f64;
    let sqrt_pi = std::f64::consts::PI.sqrt();

    // 1 - g(u) with cancellation kept under control: a series for small u
    // (the direct form loses ~1e-16/u^2 of absolute accuracy there),
    // expm1/ln_1p forms elsewhere. At the switch point the series truncation
    // sits around 2e-17, below the quadrature tolerance.
    let one_minus_g = |u: f64| -> f64 {
        if u < 0.08 {
            let u2 = u * u;
            let u4 = u2 * u2;
            u2 / 6.0 - u4 / 30.0 + u4 * u2 / 168.0 - u4 * u4 / 1080.0
        } else {
            let a = sqrt_pi * erf(u) / u;
            let b = -(-u * u).exp_m1() / (u * u);
            1.0 - (a - b)
        }
    };
    // 1 - g^n without losing precision when g is close to 1.
    let bracket = |u: f64| -> f64 {
        let omg = one_minus_g(u);
        if omg >= 1.0 {
            1.0
        } else {
            -(nf * (-omg).ln_1p()).exp_m1()
        }
    };

    let split = 2.0;
    let head = |u: f64| -> f64 {
        if u == 0.0 {
            nf / 6.0
        } else {
            bracket(u) / (u * u)
        }
    };
    // Substituting u = 1/w maps the tail onto (0, 1/split].
    let tail = |w: f64| -> f64 {
        if w == 0.0 {
            1.0
        } else {
            bracket(1.0 / w)
        }
    };

    let tol = 2e-11 * (1.0 + nf.sqrt());
    let head_val = adaptive_simpson(&head, 0.0, split, tol)?;
    let tail_val = adaptive_simpson(&tail, 0.0, 1.0 / split, tol)?;
    Ok((head_val + tail_val) / sqrt_pi)
}

/// Earth mover's distance between two equal-length point sequences:
/// min over permutations of sum_i d(x_i, y_pi(i)).
///
/// Real-valued sequences sort both sides; the general case solves the
/// unit-mass assignment through the transport solver.
pub fn sequence_emd(xs: &PointBuffer, ys: &PointBuffer, m: &MetricSpec) -> Result<f64> {
    m.check_buffer(xs)?;
    m.check_buffer(ys)?;
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if m.is_real_line() {
        let a = sorted_copy(xs.scalars()?);
        let b = sorted_copy(ys.scalars()?);
        return Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).sum());
    }
    let n = xs.len();
    let mut costs = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            costs[(i, j)] = m.distance(xs.point(i), ys.point(j))?;
        }
    }
    let problem = TransportProblem::new(vec![1; n], vec![1; n], costs, 1.0)?;
    Ok(solve_transport(&problem)?.total_cost)
}

/// Adaptive Simpson quadrature with an absolute tolerance.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
        h / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        // Roundoff floor: once the refinement is at machine precision of the
        // local value, further splitting cannot help.
        let floor = f64::EPSILON * (left.abs() + right.abs());
        if delta.abs() <= 15.0 * tol.max(floor) {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureFailure);
        }
        let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}
