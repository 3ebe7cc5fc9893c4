//! Metric abstraction: built-in coordinate metrics, precomputed distance
//! matrices, the sum metric on product spaces, similarity transforms, and a
//! Hilbert-cube embedding utility.
//!
//! Points are either coordinate vectors (euclidean, manhattan, discrete
//! metrics) or indices into a validated precomputed distance matrix.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Tolerance used when validating precomputed matrices and orthogonal parts.
pub const MATRIX_TOL: f64 = 1e-12;

/// A validated n x n distance table: symmetric (symmetrized on load), zero
/// diagonal, nonnegative, triangle inequality within `MATRIX_TOL`.
///
/// Validation is eager and O(n^3); callers downstream may then rely on
/// metric structure without rechecking.
#[derive(Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDistanceMatrix("empty matrix".into()));
        }
        let mut d = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "non-finite entry at ({i}, {j})"
                    )));
                }
                d[i * n + j] = v;
            }
        }
        for i in 0..n {
            if d[i * n + i].abs() > MATRIX_TOL {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "nonzero diagonal at {i}: {}",
                    d[i * n + i]
                )));
            }
            d[i * n + i] = 0.0;
            for j in 0..i {
                let a = d[i * n + j];
                let b = d[j * n + i];
                if (a - b).abs() > MATRIX_TOL {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
                let sym = 0.5 * (a + b);
                if sym < 0.0 {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "negative entry at ({i}, {j}): {sym}"
                    )));
                }
                d[i * n + j] = sym;
                d[j * n + i] = sym;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let dij = d[i * n + j];
                for k in 0..n {
                    if dij > d[i * n + k] + d[k * n + j] + MATRIX_TOL {
                        return Err(Error::InvalidDistanceMatrix(format!(
                            "triangle inequality violated for ({i}, {j}) via {k}"
                        )));
                    }
                }
            }
        }
        Ok(DistanceMatrix { n, d })
    }

    /// Square numeric grid, no header.
    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .from_path(path)?;
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidDistanceMatrix(format!("non-numeric cell '{cell}'"))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        DistanceMatrix::new(rows)
    }

    /// JSON object `{"n": int, "d": [[...]]}`.
    pub fn from_json_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        #[derive(Deserialize)]
        struct MatrixFile {
            n: usize,
            d: Vec<Vec<f64>>,
        }
        let text = std::fs::read_to_string(path)?;
        let file: MatrixFile = serde_json::from_str(&text)?;
        if file.d.len() != file.n {
            return Err(Error::InvalidDistanceMatrix(format!(
                "declared n={} but {} rows present",
                file.n,
                file.d.len()
            )));
        }
        DistanceMatrix::new(file.d)
    }

    /// Dispatches on the `.json` extension, defaulting to CSV.
    pub fn load<P: AsRef<Path>>(path: P) -> Result<Self> {
        if path.as_ref().extension().is_some_and(|e| e == "json") {
            Self::from_json_path(path)
        } else {
            Self::from_csv_path(path)
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// How to compute the distance between two points of a margin.
#[derive(Clone, Debug)]
pub enum MetricSpec {
    Euclidean { dim: usize },
    Manhattan { dim: usize },
    /// 0 iff the points are identical, else 1.
    Discrete { dim: usize },
    /// Points are indices into the shared table.
    Precomputed(Arc<DistanceMatrix>),
}

impl PartialEq for MetricSpec {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (MetricSpec::Euclidean { dim: a }, MetricSpec::Euclidean { dim: b }) => a == b,
            (MetricSpec::Manhattan { dim: a }, MetricSpec::Manhattan { dim: b }) => a == b,
            (MetricSpec::Discrete { dim: a }, MetricSpec::Discrete { dim: b }) => a == b,
            (MetricSpec::Precomputed(a), MetricSpec::Precomputed(b)) => {
                Arc::ptr_eq(a, b) || a == b
            }
            _ => false,
        }
    }
}

impl MetricSpec {
    pub fn euclidean(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(MetricSpec::Euclidean { dim })
    }

    pub fn manhattan(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(MetricSpec::Manhattan { dim })
    }

    pub fn discrete(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(MetricSpec::Discrete { dim })
    }

    pub fn precomputed(matrix: DistanceMatrix) -> Self {
        MetricSpec::Precomputed(Arc::new(matrix))
    }

    /// Coordinate dimension, or `None` for the precomputed metric.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            MetricSpec::Euclidean { dim }
            | MetricSpec::Manhattan { dim }
            | MetricSpec::Discrete { dim } => Some(*dim),
            MetricSpec::Precomputed(_) => None,
        }
    }

    pub fn is_coordinate(&self) -> bool {
        self.dimension().is_some()
    }

    /// True for 1-d coordinate metrics whose distance is |x - y|.
    pub fn is_real_line(&self) -> bool {
        matches!(
            self,
            MetricSpec::Euclidean { dim: 1 } | MetricSpec::Manhattan { dim: 1 }
        )
    }

    pub fn check_point(&self, p: Point<'_>) -> Result<()> {
        match (self, p) {
            (MetricSpec::Precomputed(m), Point::Index(i)) => {
                if i < m.len() {
                    Ok(())
                } else {
                    Err(Error::IndexOutOfRange {
                        index: i,
                        len: m.len(),
                    })
                }
            }
            (MetricSpec::Precomputed(_), Point::Coords(_)) => Err(Error::MetricMismatch),
            (_, Point::Index(_)) => Err(Error::MetricMismatch),
            (_, Point::Coords(c)) => {
                let dim = self.dimension().unwrap();
                if c.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: c.len(),
                    });
                }
                Ok(())
            }
        }
    }

    pub fn check_buffer(&self, pts: &PointBuffer) -> Result<()> {
        match (self, pts) {
            (MetricSpec::Precomputed(m), PointBuffer::Indices(ix)) => {
                for &i in ix {
                    if i >= m.len() {
                        return Err(Error::IndexOutOfRange {
                            index: i,
                            len: m.len(),
                        });
                    }
                }
                Ok(())
            }
            (MetricSpec::Precomputed(_), PointBuffer::Coords { .. }) => Err(Error::MetricMismatch),
            (_, PointBuffer::Indices(_)) => Err(Error::MetricMismatch),
            (_, PointBuffer::Coords { dim, .. }) => {
                let want = self.dimension().unwrap();
                if *dim != want {
                    return Err(Error::DimensionMismatch {
                        expected: want,
                        got: *dim,
                    });
                }
                Ok(())
            }
        }
    }

    pub fn distance(&self, a: Point<'_>, b: Point<'_>) -> Result<f64> {
        self.check_point(a)?;
        self.check_point(b)?;
        Ok(match (self, a, b) {
            (MetricSpec::Euclidean { .. }, Point::Coords(x), Point::Coords(y)) => x
                .iter()
                .zip(y)
                .map(|(u, v)| (u - v) * (u - v))
                .sum::<f64>()
                .sqrt(),
            (MetricSpec::Manhattan { .. }, Point::Coords(x), Point::Coords(y)) => {
                x.iter().zip(y).map(|(u, v)| (u - v).abs()).sum()
            }
            (MetricSpec::Discrete { .. }, Point::Coords(x), Point::Coords(y)) => {
                if x == y {
                    0.0
                } else {
                    1.0
                }
            }
            (MetricSpec::Precomputed(m), Point::Index(i), Point::Index(j)) => m.get(i, j),
            _ => unreachable!("check_point rules out mixed representations"),
        })
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidArgument(
            "metric dimension must be positive".into(),
        ))
    } else {
        Ok(())
    }
}

/// Borrowed view of a single point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point<'a> {
    Coords(&'a [f64]),
    Index(usize),
}

/// Ordered collection of points, all conforming to one metric.
#[derive(Clone, Debug, PartialEq)]
pub enum PointBuffer {
    /// Row-major coordinates, `len * dim` values.
    Coords { dim: usize, data: Vec<f64> },
    Indices(Vec<usize>),
}

impl PointBuffer {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySample);
        }
        let dim = rows[0].len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(rows.len() * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::NonFinite);
                }
                data.push(v);
            }
        }
        Ok(PointBuffer::Coords { dim, data })
    }

    pub fn from_scalars(xs: &[f64]) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::EmptySample);
        }
        if xs.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointBuffer::Coords {
            dim: 1,
            data: xs.to_vec(),
        })
    }

    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if data.is_empty() || !data.len().is_multiple_of(dim) {
            return Err(Error::LengthMismatch {
                left: data.len(),
                right: dim,
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(PointBuffer::Coords { dim, data })
    }

    pub fn from_indices(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(PointBuffer::Indices(indices))
    }

    pub fn len(&self) -> usize {
        match self {
            PointBuffer::Coords { dim, data } => data.len() / dim,
            PointBuffer::Indices(ix) => ix.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            PointBuffer::Coords { dim, .. } => Some(*dim),
            PointBuffer::Indices(_) => None,
        }
    }

    pub fn point(&self, i: usize) -> Point<'_> {
        match self {
            PointBuffer::Coords { dim, data } => Point::Coords(&data[i * dim..(i + 1) * dim]),
            PointBuffer::Indices(ix) => Point::Index(ix[i]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Point<'_>> {
        (0..self.len()).map(move |i| self.point(i))
    }

    /// Selects a subset of points, in the given order.
    pub fn select(&self, order: &[usize]) -> Result<Self> {
        for &i in order {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
        }
        Ok(match self {
            PointBuffer::Coords { dim, data } => {
                let mut out = Vec::with_capacity(order.len() * dim);
                for &i in order {
                    out.extend_from_slice(&data[i * dim..(i + 1) * dim]);
                }
                PointBuffer::Coords {
                    dim: *dim,
                    data: out,
                }
            }
            PointBuffer::Indices(ix) => PointBuffer::Indices(order.iter().map(|&i| ix[i]).collect()),
        })
    }

    /// Scalar values of a 1-d coordinate buffer.
    pub fn scalars(&self) -> Result<&[f64]> {
        match self {
            PointBuffer::Coords { dim: 1, data } => Ok(data),
            _ => Err(Error::InvalidArgument(
                "expected a 1-d coordinate buffer".into(),
            )),
        }
    }
}

/// Hashable identity key for a point, using exact bitwise coordinate
/// equality. Used for deduplicating coincident atoms; no tolerance merging.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointKey {
    Coords(Vec<u64>),
    Index(usize),
}

pub fn point_key(p: Point<'_>) -> PointKey {
    match p {
        Point::Coords(c) => PointKey::Coords(c.iter().map(|v| v.to_bits()).collect()),
        Point::Index(i) => PointKey::Index(i),
    }
}

/// Groups equal points by first occurrence: returns (representative sample
/// indices in order, multiplicity per group, group id per sample index).
pub fn group_points(pts: &PointBuffer) -> (Vec<usize>, Vec<u64>, Vec<usize>) {
    let mut seen: HashMap<PointKey, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut group_of = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        let key = point_key(pts.point(i));
        let g = *seen.entry(key).or_insert_with(|| {
            reps.push(i);
            counts.push(0);
            reps.len() - 1
        });
        counts[g] += 1;
        group_of.push(g);
    }
    (reps, counts, group_of)
}

/// Evaluates the metric; thin wrapper kept for discoverability.
pub fn distance(m: &MetricSpec, a: Point<'_>, b: Point<'_>) -> Result<f64> {
    m.distance(a, b)
}

/// Sum metric on the product space:
/// d[(x,y),(u,v)] = dx(x,u) + dy(y,v).
pub fn pair_metric(
    mx: &MetricSpec,
    my: &MetricSpec,
    a: (Point<'_>, Point<'_>),
    b: (Point<'_>, Point<'_>),
) -> Result<f64> {
    Ok(mx.distance(a.0, b.0)? + my.distance(a.1, b.1)?)
}

/// Full pairwise distance table of a buffer.
pub fn pairwise_matrix(m: &MetricSpec, pts: &PointBuffer) -> Result<Matrix> {
    m.check_buffer(pts)?;
    let n = pts.len();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = m.distance(pts.point(i), pts.point(j))?;
            out[(i, j)] = d;
            out[(j, i)] = d;
        }
    }
    Ok(out)
}

/// Rectangular distance table between two buffers under one metric.
pub fn cross_distance_matrix(m: &MetricSpec, a: &PointBuffer, b: &PointBuffer) -> Result<Matrix> {
    m.check_buffer(a)?;
    m.check_buffer(b)?;
    let mut out = Matrix::zeros(a.len(), b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[(i, j)] = m.distance(a.point(i), b.point(j))?;
        }
    }
    Ok(out)
}

/// Affine map x -> scale * Q * x + translation with orthogonal Q; multiplies
/// all euclidean pairwise distances by exactly `scale`. Reflections allowed.
#[derive(Clone, Debug)]
pub struct Similarity {
    scale: f64,
    orthogonal: Matrix,
    translation: Vec<f64>,
}

impl Similarity {
    pub fn new(scale: f64, orthogonal: Matrix, translation: Vec<f64>) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidArgument(
                "similarity scale must be positive".into(),
            ));
        }
        if !orthogonal.is_square() || orthogonal.rows() != translation.len() {
            return Err(Error::DimensionMismatch {
                expected: orthogonal.rows(),
                got: translation.len(),
            });
        }
        let d = orthogonal.rows();
        // Q^T Q = I within a tight tolerance.
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d)
                    .map(|k| orthogonal[(k, i)] * orthogonal[(k, j)])
                    .sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot - want).abs() > 1e-10 {
                    return Err(Error::InvalidArgument(
                        "similarity matrix is not orthogonal".into(),
                    ));
                }
            }
        }
        if translation.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Similarity {
            scale,
            orthogonal,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut q = Matrix::zeros(dim, dim);
        for i in 0..dim {
            q[(i, i)] = 1.0;
        }
        Similarity {
            scale: 1.0,
            orthogonal: q,
            translation: vec![0.0; dim],
        }
    }

    /// 1-d map x -> a*x + b with a != 0 (scale |a|, reflection when a < 0).
    pub fn affine_1d(slope: f64, intercept: f64) -> Result<Self> {
        if !(slope.is_finite() && slope != 0.0) {
            return Err(Error::InvalidArgument(
                "1-d similarity slope must be nonzero".into(),
            ));
        }
        let mut q = Matrix::zeros(1, 1);
        q[(0, 0)] = slope.signum();
        Similarity::new(slope.abs(), q, vec![intercept])
    }

    /// 2-d rotation by `angle`, then scaling and translation.
    pub fn rotation_2d(angle: f64, scale: f64, translation: [f64; 2]) -> Result<Self> {
        let (s, c) = angle.sin_cos();
        let q = Matrix::from_rows(vec![vec![c, -s], vec![s, c]])?;
        Similarity::new(scale, q, translation.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn apply_point(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let rotated: f64 = (0..d).map(|j| self.orthogonal[(i, j)] * x[j]).sum();
                self.scale * rotated + self.translation[i]
            })
            .collect()
    }

    pub fn apply(&self, pts: &PointBuffer) -> Result<PointBuffer> {
        match pts {
            PointBuffer::Indices(_) => Err(Error::InvalidArgument(
                "similarity needs a coordinate representation".into(),
            )),
            PointBuffer::Coords { dim, data } => {
                if *dim != self.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim(),
                        got: *dim,
                    });
                }
                let mut out = Vec::with_capacity(data.len());
                for chunk in data.chunks(*dim) {
                    out.extend(self.apply_point(chunk));
                }
                Ok(PointBuffer::Coords {
                    dim: *dim,
                    data: out,
                })
            }
        }
    }
}

pub fn apply_similarity(s: &Similarity, pts: &PointBuffer) -> Result<PointBuffer> {
    s.apply(pts)
}

/// Maps each point x to the euclidean vector (d'(x, a_j) / j) for the anchor
/// sequence a_1..a_k, with d' = d/(d+1); coordinate j lies in [0, 1/j].
///
/// The anchor sequence defaults to the sample itself in callers; how many
/// coordinates suffice is left to the caller, no approximation guarantee is
/// claimed.
pub fn hilbert_cube_embed(
    m: &MetricSpec,
    pts: &PointBuffer,
    anchors: &PointBuffer,
) -> Result<PointBuffer> {
    m.check_buffer(pts)?;
    m.check_buffer(anchors)?;
    if anchors.is_empty() {
        return Err(Error::EmptySample);
    }
    let k = anchors.len();
    let mut data = Vec::with_capacity(pts.len() * k);
    for i in 0..pts.len() {
        for j in 0..k {
            let d = m.distance(pts.point(i), anchors.point(j))?;
            data.push(d / (d + 1.0) / (j + 1) as f64);
        }
    }
    Ok(PointBuffer::Coords { dim: k, data })
}

/// Embedding with the default anchor choice: the sample itself (dense in
/// itself, one coordinate per point).
pub fn hilbert_cube_embed_self(m: &MetricSpec, pts: &PointBuffer) -> Result<PointBuffer> {
    hilbert_cube_embed(m, pts, pts)
}
