//! Earth mover's dependence measures: the empirical and exact-discrete
//! covariance eCov (transport distance between the joint law and the product
//! of its marginals, under the sum metric on pairs), the variance
//! eVar = eCov(X, X) (Gini's mean difference), the correlation
//! eCor = eCov / min(eVar), closed forms for indicator pairs, bounds for
//! Gaussian pairs, lower/upper sandwich bounds, and the three-variate
//! extension.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::metric::{group_points, MetricSpec, PointBuffer};
use crate::transport::{solve_transport, TransportProblem};

/// One margin of a paired sample: points plus the metric they live in.
#[derive(Clone, Debug)]
pub struct Margin {
    points: PointBuffer,
    metric: MetricSpec,
}

impl Margin {
    pub fn new(points: PointBuffer, metric: MetricSpec) -> Result<Self> {
        metric.check_buffer(&points)?;
        Ok(Margin { points, metric })
    }

    pub fn points(&self) -> &PointBuffer {
        &self.points
    }

    pub fn metric(&self) -> &MetricSpec {
        &self.metric
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Aligned tuples (x_i, y_i[, z_i]); every margin carries its own metric.
#[derive(Clone, Debug)]
pub struct PairedSample {
    x: Margin,
    y: Margin,
    z: Option<Margin>,
}

impl PairedSample {
    pub fn new(x: Margin, y: Margin) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        Ok(PairedSample { x, y, z: None })
    }

    pub fn with_z(x: Margin, y: Margin, z: Margin) -> Result<Self> {
        if x.len() != y.len() || x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: y.len().max(z.len()),
            });
        }
        Ok(PairedSample { x, y, z: Some(z) })
    }

    /// Convenience constructor for two real-valued margins under |x - y|.
    pub fn from_reals(xs: &[f64], ys: &[f64]) -> Result<Self> {
        let m = MetricSpec::euclidean(1)?;
        PairedSample::new(
            Margin::new(PointBuffer::from_scalars(xs)?, m.clone())?,
            Margin::new(PointBuffer::from_scalars(ys)?, m)?,
        )
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &Margin {
        &self.x
    }

    pub fn y(&self) -> &Margin {
        &self.y
    }

    pub fn z(&self) -> Option<&Margin> {
        self.z.as_ref()
    }

    /// Same pairs with the X and Y roles exchanged.
    pub fn swapped(&self) -> PairedSample {
        PairedSample {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
        }
    }

    /// Reorders the pairs; dependence estimators are invariant under this.
    pub fn reordered(&self, order: &[usize]) -> Result<PairedSample> {
        if order.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: order.len(),
                right: self.len(),
            });
        }
        Ok(PairedSample {
            x: Margin {
                points: self.x.points.select(order)?,
                metric: self.x.metric.clone(),
            },
            y: Margin {
                points: self.y.points.select(order)?,
                metric: self.y.metric.clone(),
            },
            z: match &self.z {
                Some(m) => Some(Margin {
                    points: m.points.select(order)?,
                    metric: m.metric.clone(),
                }),
                None => None,
            },
        })
    }

    /// Keeps the X margin fixed and permutes the Y margin; the permutation
    /// test statistic is computed on such samples.
    pub fn with_permuted_y(&self, perm: &[usize]) -> Result<PairedSample> {
        if perm.len() != self.len() {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: self.len(),
            });
        }
        Ok(PairedSample {
            x: self.x.clone(),
            y: Margin {
                points: self.y.points.select(perm)?,
                metric: self.y.metric.clone(),
            },
            z: None,
        })
    }
}

/// The joint-versus-product transportation problem of a bivariate sample:
/// distinct joint atoms (mass = multiplicity x n, in units of 1/n^2) against
/// the deduplicated marginal grid (mass = x-multiplicity * y-multiplicity).
#[derive(Debug)]
pub struct ProductMeasure {
    pub problem: TransportProblem,
    /// Sample index representing each supply atom, first-occurrence order.
    pub joint_reps: Vec<usize>,
    /// (x sample index, y sample index) representing each demand atom.
    pub grid_reps: Vec<(usize, usize)>,
}

pub fn build_product_measure(s: &PairedSample) -> Result<ProductMeasure> {
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 pairs to compare joint and product measures".into(),
        ));
    }
    let (x_reps, x_counts, x_group_of) = group_points(s.x.points());
    let (y_reps, y_counts, y_group_of) = group_points(s.y.points());

    let mut joint_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut joint_reps: Vec<usize> = Vec::new();
    let mut joint_counts: Vec<u64> = Vec::new();
    for i in 0..n {
        let key = (x_group_of[i], y_group_of[i]);
        let g = *joint_index.entry(key).or_insert_with(|| {
            joint_reps.push(i);
            joint_counts.push(0);
            joint_reps.len() - 1
        });
        joint_counts[g] += 1;
    }

    let nu = x_reps.len();
    let nv = y_reps.len();
    let nw = joint_reps.len();
    let arcs = nw as u64 * nu as u64 * nv as u64;
    if arcs > crate::transport::ARC_LIMIT {
        return Err(Error::TooLarge {
            arcs,
            limit: crate::transport::ARC_LIMIT,
        });
    }

    // Distances from each joint atom to each distinct marginal value.
    let mut ax = Matrix::zeros(nw, nu);
    let mut ay = Matrix::zeros(nw, nv);
    for (w, &rep) in joint_reps.iter().enumerate() {
        for (u, &xu) in x_reps.iter().enumerate() {
            ax[(w, u)] = s
                .x
                .metric
                .distance(s.x.points().point(rep), s.x.points().point(xu))?;
        }
        for (v, &yv) in y_reps.iter().enumerate() {
            ay[(w, v)] = s
                .y
                .metric
                .distance(s.y.points().point(rep), s.y.points().point(yv))?;
        }
    }

    let supplies: Vec<u64> = joint_counts.iter().map(|&c| c * n as u64).collect();
    let mut demands = Vec::with_capacity(nu * nv);
    let mut grid_reps = Vec::with_capacity(nu * nv);
    for u in 0..nu {
        for v in 0..nv {
            demands.push(x_counts[u] * y_counts[v]);
            grid_reps.push((x_reps[u], y_reps[v]));
        }
    }
    let mut costs = Matrix::zeros(nw, nu * nv);
    for w in 0..nw {
        for u in 0..nu {
            let dxu = ax[(w, u)];
            for v in 0..nv {
                costs[(w, u * nv + v)] = dxu + ay[(w, v)];
            }
        }
    }
    let scale = (n * n) as f64;
    let problem = TransportProblem::new(supplies, demands, costs, scale)?;
    Ok(ProductMeasure {
        problem,
        joint_reps,
        grid_reps,
    })
}

/// Empirical earth mover's covariance: the minimum transportation cost from
/// the joint empirical measure to the product of its marginals, costs given
/// by the sum metric on pairs. Zero iff the two measures coincide.
pub fn empirical_ecov(s: &PairedSample) -> Result<f64> {
    let pm = build_product_measure(s)?;
    Ok(solve_transport(&pm.problem)?.total_cost)
}

/// Empirical earth mover's variance: (1/n^2) sum of all pairwise distances.
/// Equal to `empirical_ecov` on the self-paired sample (x_i, x_i).
pub fn empirical_evar(pts: &PointBuffer, m: &MetricSpec) -> Result<f64> {
    m.check_buffer(pts)?;
    let n = pts.len();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "need at least 2 points for the earth mover's variance".into(),
        ));
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += m.distance(pts.point(i), pts.point(j))?;
        }
    }
    Ok(2.0 * sum / (n * n) as f64)
}

/// Empirical earth mover's correlation eCov / min(eVar_x, eVar_y).
/// Undefined (an error, never silently zero) when a margin is degenerate.
pub fn empirical_ecor(s: &PairedSample) -> Result<f64> {
    let evx = empirical_evar(s.x.points(), s.x.metric())?;
    let evy = empirical_evar(s.y.points(), s.y.metric())?;
    let denom = evx.min(evy);
    if denom <= 0.0 {
        return Err(Error::UndefinedECor);
    }
    Ok(empirical_ecov(s)? / denom)
}

/// Finite-support joint distribution with exact rational atom masses.
#[derive(Clone, Debug)]
pub struct DiscreteJoint {
    x_points: PointBuffer,
    y_points: PointBuffer,
    masses: Vec<Rational64>,
    x_metric: MetricSpec,
    y_metric: MetricSpec,
}

impl DiscreteJoint {
    pub fn new(
        x_points: PointBuffer,
        y_points: PointBuffer,
        masses: Vec<Rational64>,
        x_metric: MetricSpec,
        y_metric: MetricSpec,
    ) -> Result<Self> {
        if x_points.len() != y_points.len() || x_points.len() != masses.len() {
            return Err(Error::LengthMismatch {
                left: x_points.len(),
                right: masses.len(),
            });
        }
        x_metric.check_buffer(&x_points)?;
        y_metric.check_buffer(&y_points)?;
        if masses.iter().any(|m| *m <= Rational64::zero()) {
            return Err(Error::BadJointMasses);
        }
        let total: Rational64 = masses.iter().sum();
        if total != Rational64::one() {
            return Err(Error::BadJointMasses);
        }
        Ok(DiscreteJoint {
            x_points,
            y_points,
            masses,
            x_metric,
            y_metric,
        })
    }

    /// Indicator pair on the real line: atoms of (X, Y) in {0,1}^2 with the
    /// probabilities implied by (p_x, p_y, p_xy); zero-mass atoms dropped.
    pub fn bernoulli(b: &BernoulliPair) -> Result<DiscreteJoint> {
        let one = Rational64::one();
        let table = [
            (1.0, 1.0, b.p_xy),
            (1.0, 0.0, b.p_x - b.p_xy),
            (0.0, 1.0, b.p_y - b.p_xy),
            (0.0, 0.0, one - b.p_x - b.p_y + b.p_xy),
        ];
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut masses = Vec::new();
        for (x, y, m) in table {
            if m > Rational64::zero() {
                xs.push(x);
                ys.push(y);
                masses.push(m);
            }
        }
        let metric = MetricSpec::euclidean(1)?;
        DiscreteJoint::new(
            PointBuffer::from_scalars(&xs)?,
            PointBuffer::from_scalars(&ys)?,
            masses,
            metric.clone(),
            metric,
        )
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn x_points(&self) -> &PointBuffer {
        &self.x_points
    }

    pub fn y_points(&self) -> &PointBuffer {
        &self.y_points
    }

    pub fn masses(&self) -> &[Rational64] {
        &self.masses
    }
}

fn rational_units(mass: Rational64, scale: i64) -> Result<u64> {
    // mass * scale as an exact nonnegative integer
    let denom = *mass.denom();
    if scale % denom != 0 {
        return Err(Error::Internal("scale does not clear denominator".into()));
    }
    let units = mass
        .numer()
        .checked_mul(scale / denom)
        .ok_or_else(|| Error::InvalidArgument("atom masses need too fine a grid".into()))?;
    Ok(units as u64)
}

/// Exact earth mover's covariance of a finite-support joint distribution:
/// rational masses are scaled by the squared common denominator so the
/// transportation problem is solved with exact integer masses.
pub fn discrete_ecov_exact(j: &DiscreteJoint) -> Result<f64> {
    let n = j.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let (x_reps, _, x_group_of) = group_points(&j.x_points);
    let (y_reps, _, y_group_of) = group_points(&j.y_points);

    // Merge coincident atoms and accumulate marginal masses.
    let mut joint_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut joint_reps: Vec<usize> = Vec::new();
    let mut joint_mass: Vec<Rational64> = Vec::new();
    let mut x_mass = vec![Rational64::zero(); x_reps.len()];
    let mut y_mass = vec![Rational64::zero(); y_reps.len()];
    for i in 0..n {
        let key = (x_group_of[i], y_group_of[i]);
        let g = *joint_index.entry(key).or_insert_with(|| {
            joint_reps.push(i);
            joint_mass.push(Rational64::zero());
            joint_reps.len() - 1
        });
        joint_mass[g] += j.masses[i];
        x_mass[x_group_of[i]] += j.masses[i];
        y_mass[y_group_of[i]] += j.masses[i];
    }

    let mut lcm: i64 = 1;
    for m in joint_mass.iter().chain(x_mass.iter()).chain(y_mass.iter()) {
        lcm = lcm.lcm(m.denom());
        if lcm > 3_000_000_000 {
            return Err(Error::InvalidArgument(
                "atom masses need too fine a grid".into(),
            ));
        }
    }
    let scale = lcm
        .checked_mul(lcm)
        .ok_or_else(|| Error::InvalidArgument("atom masses need too fine a grid".into()))?;

    let supplies: Vec<u64> = joint_mass
        .iter()
        .map(|&m| rational_units(m, scale))
        .collect::<Result<_>>()?;
    let nu = x_reps.len();
    let nv = y_reps.len();
    let mut demands = Vec::with_capacity(nu * nv);
    for mx in &x_mass {
        for my in &y_mass {
            demands.push(rational_units(mx * my, scale)?);
        }
    }
    let mut costs = Matrix::zeros(joint_reps.len(), nu * nv);
    for (w, &rep) in joint_reps.iter().enumerate() {
        for (u, &xu) in x_reps.iter().enumerate() {
            let dx = j
                .x_metric
                .distance(j.x_points.point(rep), j.x_points.point(xu))?;
            for (v, &yv) in y_reps.iter().enumerate() {
                let dy = j
                    .y_metric
                    .distance(j.y_points.point(rep), j.y_points.point(yv))?;
                costs[(w, u * nv + v)] = dx + dy;
            }
        }
    }
    let problem = TransportProblem::new(supplies, demands, costs, scale as f64)?;
    Ok(solve_transport(&problem)?.total_cost)
}

/// Indicator margins with exact rational probabilities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliPair {
    pub p_x: Rational64,
    pub p_y: Rational64,
    pub p_xy: Rational64,
}

impl BernoulliPair {
    pub fn new(p_x: Rational64, p_y: Rational64, p_xy: Rational64) -> Result<Self> {
        let zero = Rational64::zero();
        let one = Rational64::one();
        for p in [p_x, p_y, p_xy] {
            if p < zero || p > one {
                return Err(Error::InvalidArgument(
                    "probabilities must lie in [0, 1]".into(),
                ));
            }
        }
        let lower = zero.max(p_x + p_y - one);
        let upper = p_x.min(p_y);
        if p_xy < lower || p_xy > upper {
            return Err(Error::FrechetViolation);
        }
        Ok(BernoulliPair { p_x, p_y, p_xy })
    }
}

/// eCov(X, Y) = 2 |p_xy - p_x p_y| for indicator margins; always defined.
pub fn bernoulli_ecov_closed_form(b: &BernoulliPair) -> Rational64 {
    let two = Rational64::from_integer(2);
    two * (b.p_xy - b.p_x * b.p_y).abs()
}

/// Exact rational (eCov, eCor) for indicator margins:
/// eCor = |p_xy - p_x p_y| / min(p_x (1 - p_x), p_y (1 - p_y)).
/// Errors when a margin is degenerate.
pub fn bernoulli_ecor_closed_form(b: &BernoulliPair) -> Result<(Rational64, Rational64)> {
    let one = Rational64::one();
    let vx = b.p_x * (one - b.p_x);
    let vy = b.p_y * (one - b.p_y);
    let denom = vx.min(vy);
    if denom.is_zero() {
        return Err(Error::UndefinedECor);
    }
    let ecov = bernoulli_ecov_closed_form(b);
    let ecor = (b.p_xy - b.p_x * b.p_y).abs() / denom;
    Ok((ecov, ecor))
}

/// Lower bound from the triangle inequality in the base space:
/// eCov >= | mean_i d(x_i, y_i) - mean_{i,j} d(x_i, y_j) |.
/// Requires both margins to live in the same metric space.
pub fn ecov_lower_bound(s: &PairedSample) -> Result<f64> {
    if s.x.metric() != s.y.metric() {
        return Err(Error::MetricMismatch);
    }
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 pairs".into()));
    }
    let m = s.x.metric();
    let mut diag = 0.0;
    let mut grid = 0.0;
    for i in 0..n {
        diag += m.distance(s.x.points().point(i), s.y.points().point(i))?;
        for k in 0..n {
            grid += m.distance(s.x.points().point(i), s.y.points().point(k))?;
        }
    }
    Ok((diag / n as f64 - grid / (n * n) as f64).abs())
}

/// Groups: (group weight, values (y, mass within the group, summing to 1)).
/// Computes sum_g w_g * integral |G(y|g) - G(y)| dy exactly for step CDFs.
fn conditional_cdf_integral(groups: &[(f64, Vec<(f64, f64)>)]) -> f64 {
    let mut bps: Vec<f64> = groups
        .iter()
        .flat_map(|(_, vs)| vs.iter().map(|p| p.0))
        .collect();
    bps.sort_by(f64::total_cmp);
    bps.dedup();
    if bps.len() < 2 {
        return 0.0;
    }
    let mut marginal = vec![0.0; bps.len()];
    for (w, vs) in groups {
        for &(y, m) in vs {
            let idx = bps.binary_search_by(|p| p.total_cmp(&y)).unwrap();
            marginal[idx] += w * m;
        }
    }
    let mut total = 0.0;
    for (w, vs) in groups {
        let mut sorted = vs.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut cond_cum = 0.0;
        let mut marg_cum = 0.0;
        let mut vi = 0;
        let mut integral = 0.0;
        for (k, win) in bps.windows(2).enumerate() {
            marg_cum += marginal[k];
            while vi < sorted.len() && sorted[vi].0 <= win[0] {
                cond_cum += sorted[vi].1;
                vi += 1;
            }
            integral += (cond_cum - marg_cum).abs() * (win[1] - win[0]);
        }
        total += w * integral;
    }
    total
}

/// Upper bound on eCov from the coupling that keeps X = X' and matches Y by
/// conditional quantiles: integral of |G(y|x) - G(y)| dF(x) dy, exact for
/// the empirical step CDFs. Requires a real-valued Y margin; X is grouped by
/// exact value. Reported as a diagnostic bound, never assumed tight.
pub fn conditional_coupling_ecov(s: &PairedSample) -> Result<f64> {
    if !s.y.metric().is_real_line() {
        return Err(Error::InvalidArgument(
            "conditional coupling bound needs a real-valued Y margin".into(),
        ));
    }
    let n = s.len();
    let ys = s.y.points().scalars()?;
    let (_, _, x_group_of) = group_points(s.x.points());
    let groups_count = x_group_of.iter().max().map_or(0, |&g| g + 1);
    let mut grouped: Vec<Vec<f64>> = vec![Vec::new(); groups_count];
    for i in 0..n {
        grouped[x_group_of[i]].push(ys[i]);
    }
    let groups: Vec<(f64, Vec<(f64, f64)>)> = grouped
        .into_iter()
        .map(|vals| {
            let w = vals.len() as f64 / n as f64;
            let unit = 1.0 / vals.len() as f64;
            (w, vals.into_iter().map(|y| (y, unit)).collect())
        })
        .collect();
    Ok(conditional_cdf_integral(&groups))
}

/// The same conditional-quantile bound for a finite-support joint
/// distribution with rational masses.
pub fn conditional_coupling_ecov_joint(j: &DiscreteJoint) -> Result<f64> {
    if !j.y_metric.is_real_line() {
        return Err(Error::InvalidArgument(
            "conditional coupling bound needs a real-valued Y margin".into(),
        ));
    }
    let ys = j.y_points.scalars()?;
    let (_, _, x_group_of) = group_points(&j.x_points);
    let groups_count = x_group_of.iter().max().map_or(0, |&g| g + 1);
    let mut grouped: Vec<Vec<(f64, Rational64)>> = vec![Vec::new(); groups_count];
    for i in 0..j.len() {
        grouped[x_group_of[i]].push((ys[i], j.masses[i]));
    }
    let groups: Vec<(f64, Vec<(f64, f64)>)> = grouped
        .into_iter()
        .map(|vals| {
            let total: Rational64 = vals.iter().map(|v| v.1).sum();
            let w = total.to_f64().unwrap_or(0.0);
            (
                w,
                vals.into_iter()
                    .map(|(y, m)| (y, (m / total).to_f64().unwrap_or(0.0)))
                    .collect(),
            )
        })
        .collect();
    Ok(conditional_cdf_integral(&groups))
}

/// Bounds for eCor of a bivariate normal pair with correlation rho:
/// upper sqrt(1 - sqrt(1 - rho^2)) always; lower |1 - sqrt(1 - rho)| in the
/// equal-variance case (0 otherwise, no bound stated).
pub fn gaussian_ecor_bounds(rho: f64, sigma_x: f64, sigma_y: f64) -> Result<(f64, f64)> {
    if !(rho.is_finite() && rho.abs() <= 1.0) {
        return Err(Error::InvalidArgument(
            "correlation must lie in [-1, 1]".into(),
        ));
    }
    if !(sigma_x > 0.0 && sigma_y > 0.0) {
        return Err(Error::InvalidArgument(
            "standard deviations must be positive".into(),
        ));
    }
    let upper = (1.0 - (1.0 - rho * rho).sqrt()).sqrt();
    let lower = if sigma_x == sigma_y {
        (1.0 - (1.0 - rho).sqrt()).abs()
    } else {
        0.0
    };
    Ok((upper, lower))
}

/// eVar of a normal margin with standard deviation sigma: 2 sigma / sqrt(pi).
pub fn normal_evar(sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument(
            "standard deviation must be positive".into(),
        ));
    }
    Ok(2.0 * sigma / std::f64::consts::PI.sqrt())
}

/// Three-variate earth mover's covariance: transport from the joint atoms
/// (mass n^2 each, scale n^3) to the deduplicated product grid, coordinate
/// costs summed.
pub fn trivariate_ecov(s: &PairedSample) -> Result<f64> {
    let z = s
        .z()
        .ok_or_else(|| Error::InvalidArgument("trivariate sample required".into()))?;
    let n = s.len();
    if n < 2 {
        return Err(Error::InvalidArgument("need at least 2 triples".into()));
    }
    let (x_reps, x_counts, x_group_of) = group_points(s.x.points());
    let (y_reps, y_counts, y_group_of) = group_points(s.y.points());
    let (z_reps, z_counts, z_group_of) = group_points(z.points());

    let mut joint_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut joint_reps: Vec<usize> = Vec::new();
    let mut joint_counts: Vec<u64> = Vec::new();
    for i in 0..n {
        let key = (x_group_of[i], y_group_of[i], z_group_of[i]);
        let g = *joint_index.entry(key).or_insert_with(|| {
            joint_reps.push(i);
            joint_counts.push(0);
            joint_reps.len() - 1
        });
        joint_counts[g] += 1;
    }

    let (nu, nv, nwz) = (x_reps.len(), y_reps.len(), z_reps.len());
    let nj = joint_reps.len();
    let arcs = nj as u64 * nu as u64 * nv as u64 * nwz as u64;
    if arcs > crate::transport::ARC_LIMIT {
        return Err(Error::TooLarge {
            arcs,
            limit: crate::transport::ARC_LIMIT,
        });
    }
    let supplies: Vec<u64> = joint_counts
        .iter()
        .map(|&c| c * (n * n) as u64)
        .collect();
    let mut demands = Vec::with_capacity(nu * nv * nwz);
    for &cx in &x_counts {
        for &cy in &y_counts {
            for &cz in &z_counts {
                demands.push(cx * cy * cz);
            }
        }
    }
    let mut ax = Matrix::zeros(nj, nu);
    let mut ay = Matrix::zeros(nj, nv);
    let mut az = Matrix::zeros(nj, nwz);
    for (g, &rep) in joint_reps.iter().enumerate() {
        for (u, &xu) in x_reps.iter().enumerate() {
            ax[(g, u)] = s
                .x
                .metric
                .distance(s.x.points().point(rep), s.x.points().point(xu))?;
        }
        for (v, &yv) in y_reps.iter().enumerate() {
            ay[(g, v)] = s
                .y
                .metric
                .distance(s.y.points().point(rep), s.y.points().point(yv))?;
        }
        for (w, &zw) in z_reps.iter().enumerate() {
            az[(g, w)] = z
                .metric
                .distance(z.points().point(rep), z.points().point(zw))?;
        }
    }
    let mut costs = Matrix::zeros(nj, nu * nv * nwz);
    for g in 0..nj {
        let mut col = 0;
        for u in 0..nu {
            for v in 0..nv {
                let dxy = ax[(g, u)] + ay[(g, v)];
                for w in 0..nwz {
                    costs[(g, col)] = dxy + az[(g, w)];
                    col += 1;
                }
            }
        }
    }
    let scale = (n * n * n) as f64;
    let problem = TransportProblem::new(supplies, demands, costs, scale)?;
    Ok(solve_transport(&problem)?.total_cost)
}

/// Three-variate eCor: eCov(X,Y,Z) / min of the three margin eVars. The
/// value is reported exactly as defined; it is not bounded by 1.
pub fn trivariate_ecor(s: &PairedSample) -> Result<f64> {
    let z = s
        .z()
        .ok_or_else(|| Error::InvalidArgument("trivariate sample required".into()))?;
    let evx = empirical_evar(s.x.points(), s.x.metric())?;
    let evy = empirical_evar(s.y.points(), s.y.metric())?;
    let evz = empirical_evar(z.points(), z.metric())?;
    let denom = evx.min(evy).min(evz);
    if denom <= 0.0 {
        return Err(Error::UndefinedECor);
    }
    Ok(trivariate_ecov(s)? / denom)
}
