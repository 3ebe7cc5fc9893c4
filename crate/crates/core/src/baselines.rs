//! Baseline dependence measures reported alongside the earth mover's
//! quantities: the V-statistic sample distance covariance/correlation built
//! from double-centered pairwise distance matrices, and Pearson's
//! product-moment correlation.

use crate::dependence::PairedSample;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metric::{pairwise_matrix, MetricSpec, PointBuffer};

/// Double-centered distance matrix: every row mean and column mean is zero.
#[derive(Clone, Debug)]
pub struct CenteredMatrix(Matrix);

impl CenteredMatrix {
    pub fn entries(&self) -> &Matrix {
        &self.0
    }
}

/// A_ij = d_ij - rowmean_i - colmean_j + grandmean.
pub fn double_center(d: &Matrix) -> Result<CenteredMatrix> {
    if !d.is_square() {
        return Err(Error::LengthMismatch {
            left: d.rows(),
            right: d.cols(),
        });
    }
    let n = d.rows();
    let nf = n as f64;
    let mut row_means = vec![0.0; n];
    let mut col_means = vec![0.0; n];
    let mut grand = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = d[(i, j)];
            row_means[i] += v;
            col_means[j] += v;
            grand += v;
        }
    }
    for m in row_means.iter_mut().chain(col_means.iter_mut()) {
        *m /= nf;
    }
    grand /= nf * nf;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = d[(i, j)] - row_means[i] - col_means[j] + grand;
        }
    }
    Ok(CenteredMatrix(out))
}

fn centered_product_mean(a: &CenteredMatrix, b: &CenteredMatrix) -> f64 {
    let n = a.0.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            sum += a.0[(i, j)] * b.0[(i, j)];
        }
    }
    sum / (n * n) as f64
}

/// Sample distance covariance: square root of the V-statistic
/// (1/n^2) sum A_ij B_ij, clamped at zero before the root.
pub fn distance_covariance(s: &PairedSample) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 pairs".into()));
    }
    let a = double_center(&pairwise_matrix(s.x().metric(), s.x().points())?)?;
    let b = double_center(&pairwise_matrix(s.y().metric(), s.y().points())?)?;
    Ok(centered_product_mean(&a, &b).max(0.0).sqrt())
}

/// Distance variance of a single margin.
pub fn distance_variance(pts: &PointBuffer, m: &MetricSpec) -> Result<f64> {
    if pts.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 points".into()));
    }
    let a = double_center(&pairwise_matrix(m, pts)?)?;
    Ok(centered_product_mean(&a, &a).max(0.0).sqrt())
}

/// Sample distance correlation dCov / sqrt(dVar_x dVar_y); an error when
/// either distance variance vanishes.
pub fn distance_correlation(s: &PairedSample) -> Result<f64> {
    let dvx = distance_variance(s.x().points(), s.x().metric())?;
    let dvy = distance_variance(s.y().points(), s.y().metric())?;
    if dvx <= 0.0 || dvy <= 0.0 {
        return Err(Error::UndefinedDCor);
    }
    Ok(distance_covariance(s)? / (dvx * dvy).sqrt())
}

/// Pearson's product-moment correlation of two real samples.
pub fn pearson_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::InvalidArgument("need at least 2 values".into()));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(sxy / (sxx * syy).sqrt())
}
