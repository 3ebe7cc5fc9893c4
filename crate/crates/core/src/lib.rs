//! Dependence measures for metric-space-valued samples built on exact
//! optimal transport.
//!
//! The central quantity is the earth mover's covariance: the transportation
//! distance between the joint distribution of a paired sample and the
//! product of its marginals, under the sum metric on pairs. From it follow
//! the earth mover's variance (Gini's mean difference) and the earth
//! mover's correlation eCov / min(eVar). The crate also carries the
//! one-dimensional Wasserstein closed forms, distance correlation and
//! Pearson baselines, closed forms and bounds for indicator and Gaussian
//! pairs, and a seeded permutation independence test.

pub mod baselines;
pub mod dependence;
pub mod error;
pub mod inference;
pub mod matrix;
pub mod metric;
pub mod report;
pub mod transport;
pub mod univariate;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use metric::{DistanceMatrix, MetricSpec, Point, PointBuffer, Similarity};
