//! Cross-module workflows: the pieces composed the way a user would.

use emcor::baselines::distance_correlation;
use emcor::dependence::{empirical_ecor, Margin, PairedSample};
use emcor::metric::{hilbert_cube_embed_self, DistanceMatrix, MetricSpec, PointBuffer};
use emcor::report::dependence_report;
use emcor::univariate::sequence_emd;

/// A small metric space given only by a distance table: a path graph
/// 0 - 1 - 2 - 3 with unit edges.
fn path_metric(n: usize) -> MetricSpec {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (i as f64 - j as f64).abs()).collect())
        .collect();
    MetricSpec::precomputed(DistanceMatrix::new(rows).unwrap())
}

#[test]
fn report_on_precomputed_metric_margins() {
    let metric = path_metric(4);
    // strongly dependent: y walks with x along the path
    let x = PointBuffer::from_indices(vec![0, 1, 2, 3, 0, 1, 2, 3]).unwrap();
    let y = PointBuffer::from_indices(vec![0, 1, 2, 3, 0, 1, 2, 3]).unwrap();
    let s = PairedSample::new(
        Margin::new(x, metric.clone()).unwrap(),
        Margin::new(y, metric.clone()).unwrap(),
    )
    .unwrap();
    let r = dependence_report(&s).unwrap();
    assert!((r.ecor - 1.0).abs() <= 1e-9, "identical margins: {}", r.ecor);
    assert!(r.bounds_consistent(1e-9));
    // identity-of-margins also makes the triangle lower bound tight at 0 diag
    assert!(r.ecov_lower_bound.is_some());
    // indices have no coordinates, so no pearson
    assert!(r.pearson.is_none());
}

#[test]
fn hilbert_embedding_feeds_distance_correlation() {
    // margins live in a precomputed space where dCor is not directly
    // defined over coordinates; embed them into a euclidean cube first
    let metric = path_metric(5);
    let x = PointBuffer::from_indices(vec![0, 1, 2, 3, 4, 0, 1, 2, 3, 4]).unwrap();
    let y = PointBuffer::from_indices(vec![4, 3, 2, 1, 0, 4, 3, 2, 1, 0]).unwrap();
    let ex = hilbert_cube_embed_self(&metric, &x).unwrap();
    let ey = hilbert_cube_embed_self(&metric, &y).unwrap();
    let dim = ex.dim().unwrap();
    let s = PairedSample::new(
        Margin::new(ex, MetricSpec::euclidean(dim).unwrap()).unwrap(),
        Margin::new(ey, MetricSpec::euclidean(dim).unwrap()).unwrap(),
    )
    .unwrap();
    // y is a deterministic function of x, the embedded dCor picks it up
    let d = distance_correlation(&s).unwrap();
    assert!(d > 0.9, "embedded dCor = {d}");
}

#[test]
fn embedding_distorts_but_ecor_on_original_space_does_not() {
    // eCor works directly on the precomputed metric, no embedding needed
    let metric = path_metric(5);
    let x = PointBuffer::from_indices(vec![0, 1, 2, 3, 4, 2, 3, 1]).unwrap();
    let y = PointBuffer::from_indices(vec![4, 3, 2, 1, 0, 2, 1, 3]).unwrap();
    let s = PairedSample::new(
        Margin::new(x, metric.clone()).unwrap(),
        Margin::new(y, metric).unwrap(),
    )
    .unwrap();
    // reversal is a similarity of the path graph, so eCor is exactly 1
    let e = empirical_ecor(&s).unwrap();
    assert!((e - 1.0).abs() <= 1e-9, "{e}");
}

#[test]
fn sequence_distance_through_a_precomputed_metric() {
    let metric = path_metric(4);
    // same multiset: zero
    let a = PointBuffer::from_indices(vec![0, 3, 1]).unwrap();
    let b = PointBuffer::from_indices(vec![1, 0, 3]).unwrap();
    assert_eq!(sequence_emd(&a, &b, &metric).unwrap(), 0.0);
    // multisets {0,1,3} vs {0,2,3}: only the 1 -> 2 move is needed
    let b = PointBuffer::from_indices(vec![2, 0, 3]).unwrap();
    assert_eq!(sequence_emd(&a, &b, &metric).unwrap(), 1.0);
}
