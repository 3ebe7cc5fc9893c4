//! Exact solver for the balanced transportation problem with integer masses
//! and real costs.
//!
//! The primary algorithm is successive shortest augmenting paths with node
//! potentials: Dijkstra over reduced costs (kept nonnegative throughout),
//! pushing the full bottleneck per augmentation, with lowest-node-index
//! tie-breaking for determinism. A naive cycle-canceling implementation is
//! kept as an independent cross-check, and an exhaustive enumerator serves
//! as a test oracle on tiny instances.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Size guard: supplies x demands may not exceed this many arcs.
pub const ARC_LIMIT: u64 = 10_000_000;

/// Total-mass ceiling for the exhaustive oracle.
pub const BRUTE_FORCE_MASS_LIMIT: u64 = 10;

/// Complementary-slackness tolerance, relative to 1 + |cost|.
pub const SLACK_TOL: f64 = 1e-9;

/// Balanced problem: positive integer supplies and demands, nonnegative
/// finite costs. `scale` de-normalizes costs back to original mass units
/// (callers integerize masses and pass the factor here).
#[derive(Clone, Debug)]
pub struct TransportProblem {
    supplies: Vec<u64>,
    demands: Vec<u64>,
    costs: Matrix,
    scale: f64,
}

impl TransportProblem {
    pub fn new(supplies: Vec<u64>, demands: Vec<u64>, costs: Matrix, scale: f64) -> Result<Self> {
        if supplies.is_empty() || demands.is_empty() {
            return Err(Error::EmptySample);
        }
        if supplies.contains(&0) || demands.contains(&0) {
            return Err(Error::InvalidArgument(
                "supplies and demands must be positive".into(),
            ));
        }
        if costs.rows() != supplies.len() || costs.cols() != demands.len() {
            return Err(Error::LengthMismatch {
                left: costs.rows() * costs.cols(),
                right: supplies.len() * demands.len(),
            });
        }
        let total_supply: u64 = supplies.iter().sum();
        let total_demand: u64 = demands.iter().sum();
        if total_supply != total_demand {
            return Err(Error::Unbalanced {
                supply: total_supply,
                demand: total_demand,
            });
        }
        let arcs = supplies.len() as u64 * demands.len() as u64;
        if arcs > ARC_LIMIT {
            return Err(Error::TooLarge {
                arcs,
                limit: ARC_LIMIT,
            });
        }
        if costs.data().iter().any(|&c| !c.is_finite() || c < 0.0) {
            return Err(Error::InvalidCost);
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidArgument("scale must be positive".into()));
        }
        Ok(TransportProblem {
            supplies,
            demands,
            costs,
            scale,
        })
    }

    pub fn num_supplies(&self) -> usize {
        self.supplies.len()
    }

    pub fn num_demands(&self) -> usize {
        self.demands.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.supplies.len() * self.demands.len()
    }

    pub fn supplies(&self) -> &[u64] {
        &self.supplies
    }

    pub fn demands(&self) -> &[u64] {
        &self.demands
    }

    pub fn costs(&self) -> &Matrix {
        &self.costs
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn total_mass(&self) -> u64 {
        self.supplies.iter().sum()
    }
}

/// Optimal integral flow with its dual certificate.
///
/// `total_cost` is in original mass units (raw cost divided by the scale).
/// For every arc, `cost - u_i - v_j >= -tol`, and equality holds on arcs
/// carrying flow; `verify_optimality` checks exactly this.
#[derive(Clone, Debug)]
pub struct TransportPlan {
    pub flows: BTreeMap<(usize, usize), u64>,
    pub total_cost: f64,
    pub supply_duals: Vec<f64>,
    pub demand_duals: Vec<f64>,
}

/// Result of the certificate check.
#[derive(Clone, Copy, Debug)]
pub struct OptimalityCheck {
    pub ok: bool,
    pub max_violation: f64,
}

const NO_PARENT: u32 = u32::MAX;

/// Min-heap entry ordered by (distance, node index); the index order makes
/// shortest-path tie-breaking deterministic across platforms.
#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    node: u32,
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.node.cmp(&other.node))
    }
}

/// Internal state. The problem is solved in whichever orientation has the
/// larger node count on the source side: single-source Dijkstra then scans
/// short rows and typically terminates after a handful of pops, which is
/// what makes the n^2-demand-atom instances from the dependence estimators
/// tractable.
struct SspSolver {
    ns: usize,
    nd: usize,
    cost: Vec<f64>, // ns x nd, row-major in the internal orientation
    res_src: Vec<u64>,
    res_snk: Vec<u64>,
    u: Vec<f64>,
    v: Vec<f64>,
    flow_by_snk: Vec<BTreeMap<u32, u64>>,
    dist: Vec<f64>,
    parent: Vec<u32>,
    finalized: Vec<bool>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<HeapEntry>>,
}

impl SspSolver {
    fn new(supplies: &[u64], demands: &[u64], cost: Vec<f64>) -> Self {
        let ns = supplies.len();
        let nd = demands.len();
        SspSolver {
            ns,
            nd,
            cost,
            res_src: supplies.to_vec(),
            res_snk: demands.to_vec(),
            u: vec![0.0; ns],
            v: vec![0.0; nd],
            flow_by_snk: vec![BTreeMap::new(); nd],
            dist: vec![f64::INFINITY; ns + nd],
            parent: vec![NO_PARENT; ns + nd],
            finalized: vec![false; ns + nd],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn reset_search(&mut self) {
        for &w in &self.touched {
            self.dist[w as usize] = f64::INFINITY;
            self.parent[w as usize] = NO_PARENT;
            self.finalized[w as usize] = false;
        }
        self.touched.clear();
        self.heap.clear();
    }

    fn relax(&mut self, node: u32, nd: f64, parent: u32) {
        if nd < self.dist[node as usize] {
            if self.dist[node as usize].is_infinite() {
                self.touched.push(node);
            }
            self.dist[node as usize] = nd;
            self.parent[node as usize] = parent;
            self.heap.push(Reverse(HeapEntry { dist: nd, node }));
        }
    }

    /// Shortest augmenting path from `s0` to the nearest sink with residual
    /// capacity, on reduced costs. Returns the target sink and its distance.
    fn dijkstra(&mut self, s0: u32) -> Option<(u32, f64)> {
        self.reset_search();
        self.dist[s0 as usize] = 0.0;
        self.touched.push(s0);
        self.heap.push(Reverse(HeapEntry {
            dist: 0.0,
            node: s0,
        }));
        while let Some(Reverse(entry)) = self.heap.pop() {
            let w = entry.node as usize;
            if self.finalized[w] {
                continue;
            }
            self.finalized[w] = true;
            let d = self.dist[w];
            if w >= self.ns {
                let k = w - self.ns;
                if self.res_snk[k] > 0 {
                    return Some((k as u32, d));
                }
                // Full sink: step back along arcs that carry flow. These have
                // zero reduced cost by complementary slackness; float drift is
                // absorbed here and checked by the certificate afterwards.
                let sources: Vec<u32> = self.flow_by_snk[k].keys().copied().collect();
                for s in sources {
                    if !self.finalized[s as usize] {
                        self.relax(s, d, w as u32);
                    }
                }
            } else {
                let us = self.u[w];
                let row_start = w * self.nd;
                for k in 0..self.nd {
                    let node = (self.ns + k) as u32;
                    if self.finalized[node as usize] {
                        continue;
                    }
                    let rc = (self.cost[row_start + k] - us - self.v[k]).max(0.0);
                    self.relax(node, d + rc, w as u32);
                }
            }
        }
        None
    }

    fn update_potentials(&mut self, dstar: f64) {
        for &w in &self.touched {
            let w = w as usize;
            if !self.finalized[w] {
                continue;
            }
            let delta = dstar - self.dist[w];
            if w < self.ns {
                self.u[w] += delta;
            } else {
                self.v[w - self.ns] -= delta;
            }
        }
    }

    /// Pushes the full bottleneck along the parent path ending at sink `t`.
    /// The path alternates source -> sink forward arcs with sink -> source
    /// reverse arcs and terminates at the Dijkstra root `s0`.
    fn augment(&mut self, s0: u32, t: u32) -> Result<()> {
        let t_node = self.ns as u32 + t;
        // First pass: bottleneck.
        let mut delta = self.res_src[s0 as usize].min(self.res_snk[t as usize]);
        let mut node = t_node;
        while self.parent[node as usize] != NO_PARENT {
            let p = self.parent[node as usize];
            if (node as usize) < self.ns {
                // source reached via the reverse arc from sink p
                let k = (p as usize) - self.ns;
                let f = *self
                    .flow_by_snk[k]
                    .get(&node)
                    .ok_or_else(|| Error::Internal("reverse arc without flow".into()))?;
                delta = delta.min(f);
            }
            node = p;
        }
        if node != s0 {
            return Err(Error::Internal("augmenting path does not reach root".into()));
        }
        if delta == 0 {
            return Err(Error::Internal("zero bottleneck".into()));
        }
        // Second pass: apply.
        let mut node = t_node;
        while self.parent[node as usize] != NO_PARENT {
            let p = self.parent[node as usize];
            if (node as usize) >= self.ns {
                let k = (node as usize) - self.ns;
                *self.flow_by_snk[k].entry(p).or_insert(0) += delta;
            } else {
                let k = (p as usize) - self.ns;
                let f = self.flow_by_snk[k].get_mut(&node).unwrap();
                *f -= delta;
                if *f == 0 {
                    self.flow_by_snk[k].remove(&node);
                }
            }
            node = p;
        }
        self.res_src[s0 as usize] -= delta;
        self.res_snk[t as usize] -= delta;
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        for s0 in 0..self.ns as u32 {
            while self.res_src[s0 as usize] > 0 {
                let (t, dstar) = self
                    .dijkstra(s0)
                    .ok_or_else(|| Error::Internal("no augmenting path found".into()))?;
                self.update_potentials(dstar);
                self.augment(s0, t)?;
            }
        }
        Ok(())
    }
}

/// Minimum-cost integral plan via successive shortest paths with potentials.
pub fn solve_transport(problem: &TransportProblem) -> Result<TransportPlan> {
    let ns = problem.num_supplies();
    let nd = problem.num_demands();
    // Solve with the larger side as sources (row scans stay short).
    let transposed = ns < nd;
    let mut solver = if transposed {
        SspSolver::new(
            problem.demands(),
            problem.supplies(),
            problem.costs.transposed().data().to_vec(),
        )
    } else {
        SspSolver::new(
            problem.supplies(),
            problem.demands(),
            problem.costs.data().to_vec(),
        )
    };
    solver.run()?;

    let mut flows: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (k, by_src) in solver.flow_by_snk.iter().enumerate() {
        for (&s, &units) in by_src {
            let (i, j) = if transposed {
                (k, s as usize)
            } else {
                (s as usize, k)
            };
            flows.insert((i, j), units);
        }
    }
    let raw_cost: f64 = flows
        .iter()
        .map(|(&(i, j), &units)| units as f64 * problem.costs[(i, j)])
        .sum();
    let (supply_duals, demand_duals) = if transposed {
        (solver.v, solver.u)
    } else {
        (solver.u, solver.v)
    };
    Ok(TransportPlan {
        flows,
        total_cost: raw_cost / problem.scale,
        supply_duals,
        demand_duals,
    })
}

/// Checks flow conservation (exact, integer) and complementary slackness
/// (within `SLACK_TOL` relative to 1 + |cost|); reports the worst violation.
pub fn verify_optimality(problem: &TransportProblem, plan: &TransportPlan) -> Result<OptimalityCheck> {
    let ns = problem.num_supplies();
    let nd = problem.num_demands();
    if plan.supply_duals.len() != ns || plan.demand_duals.len() != nd {
        return Err(Error::LengthMismatch {
            left: plan.supply_duals.len() + plan.demand_duals.len(),
            right: ns + nd,
        });
    }
    let mut row_sums = vec![0u64; ns];
    let mut col_sums = vec![0u64; nd];
    for (&(i, j), &units) in &plan.flows {
        if i >= ns || j >= nd {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                len: ns.max(nd),
            });
        }
        row_sums[i] += units;
        col_sums[j] += units;
    }
    let mut max_violation: f64 = 0.0;
    for (got, want) in row_sums.iter().zip(&problem.supplies) {
        max_violation = max_violation.max(got.abs_diff(*want) as f64);
    }
    for (got, want) in col_sums.iter().zip(&problem.demands) {
        max_violation = max_violation.max(got.abs_diff(*want) as f64);
    }
    for i in 0..ns {
        for j in 0..nd {
            let c = problem.costs[(i, j)];
            let rc = c - plan.supply_duals[i] - plan.demand_duals[j];
            let norm = 1.0 + c.abs();
            // all arcs: rc >= -tol
            max_violation = max_violation.max((-rc).max(0.0) / norm);
            if plan.flows.get(&(i, j)).copied().unwrap_or(0) > 0 {
                // flow arcs: |rc| <= tol
                max_violation = max_violation.max(rc.abs() / norm);
            }
        }
    }
    Ok(OptimalityCheck {
        ok: max_violation <= SLACK_TOL,
        max_violation,
    })
}

/// Exact minimum over all integral feasible flows; exhaustive enumeration,
/// usable only when the total mass is at most `BRUTE_FORCE_MASS_LIMIT`.
pub fn brute_force_transport(problem: &TransportProblem) -> Result<f64> {
    let total = problem.total_mass();
    if total > BRUTE_FORCE_MASS_LIMIT {
        return Err(Error::BruteForceLimit {
            limit: BRUTE_FORCE_MASS_LIMIT,
        });
    }
    let mut res_dem: Vec<u64> = problem.demands.clone();
    let mut best = f64::INFINITY;

    fn recurse(
        problem: &TransportProblem,
        i: usize,
        j: usize,
        row_left: u64,
        res_dem: &mut [u64],
        acc: f64,
        best: &mut f64,
    ) {
        let ns = problem.num_supplies();
        let nd = problem.num_demands();
        if i == ns {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        let c = problem.costs[(i, j)];
        let max_here = row_left.min(res_dem[j]);
        // Remaining cells of this row must be able to absorb the rest.
        let rest_capacity: u64 = res_dem[j + 1..].iter().sum();
        for f in 0..=max_here {
            let left = row_left - f;
            if left > rest_capacity {
                continue;
            }
            res_dem[j] -= f;
            if j + 1 == nd {
                if left == 0 {
                    let next_supply = if i + 1 < ns { problem.supplies[i + 1] } else { 0 };
                    recurse(problem, i + 1, 0, next_supply, res_dem, acc + f as f64 * c, best);
                }
            } else {
                recurse(problem, i, j + 1, left, res_dem, acc + f as f64 * c, best);
            }
            res_dem[j] += f;
        }
    }

    recurse(
        problem,
        0,
        0,
        problem.supplies[0],
        &mut res_dem,
        0.0,
        &mut best,
    );
    if !best.is_finite() {
        return Err(Error::Internal("no feasible allocation enumerated".into()));
    }
    Ok(best / problem.scale)
}

/// Naive reference: start from the northwest-corner plan and cancel negative
/// residual cycles (Bellman-Ford) until none remain. Exists solely to
/// cross-check the primary solver; quadratic-ish and only for small inputs.
pub fn solve_transport_cycle_canceling(problem: &TransportProblem) -> Result<TransportPlan> {
    let ns = problem.num_supplies();
    let nd = problem.num_demands();
    let mut flow = vec![0u64; ns * nd];

    // Northwest corner start.
    {
        let mut supply_left: Vec<u64> = problem.supplies.clone();
        let mut demand_left: Vec<u64> = problem.demands.clone();
        let (mut i, mut j) = (0usize, 0usize);
        while i < ns && j < nd {
            let f = supply_left[i].min(demand_left[j]);
            flow[i * nd + j] += f;
            supply_left[i] -= f;
            demand_left[j] -= f;
            if supply_left[i] == 0 {
                i += 1;
            } else {
                j += 1;
            }
        }
    }

    let nodes = ns + nd;
    let cost_scale: f64 = 1.0
        + problem
            .costs
            .data()
            .iter()
            .fold(0.0f64, |m, &c| m.max(c.abs()));
    let improvement_eps = 1e-12 * cost_scale;
    let max_rounds = 200_000;

    let mut dist = vec![0.0f64; nodes];
    let mut pred = vec![usize::MAX; nodes];

    for _round in 0..max_rounds {
        // Bellman-Ford from an implicit super-source (dist 0 everywhere).
        dist.fill(0.0);
        pred.fill(usize::MAX);
        let mut cycle_node = None;
        for pass in 0..nodes {
            let mut changed = false;
            for i in 0..ns {
                for j in 0..nd {
                    let c = problem.costs[(i, j)];
                    // forward arc i -> ns + j
                    if dist[i] + c < dist[ns + j] - improvement_eps {
                        dist[ns + j] = dist[i] + c;
                        pred[ns + j] = i;
                        changed = true;
                        if pass == nodes - 1 {
                            cycle_node = Some(ns + j);
                        }
                    }
                    // backward arc ns + j -> i when flow present
                    if flow[i * nd + j] > 0 && dist[ns + j] - c < dist[i] - improvement_eps {
                        dist[i] = dist[ns + j] - c;
                        pred[i] = ns + j;
                        changed = true;
                        if pass == nodes - 1 {
                            cycle_node = Some(i);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let Some(start) = cycle_node else {
            break; // no negative cycle: optimal
        };
        // Walk predecessors into the cycle.
        let mut node = start;
        for _ in 0..nodes {
            node = pred[node];
        }
        let mut cycle = vec![node];
        let mut cur = pred[node];
        while cur != node {
            cycle.push(cur);
            cur = pred[cur];
        }
        cycle.reverse();
        // Bottleneck over backward arcs in the cycle.
        let mut delta = u64::MAX;
        let m = cycle.len();
        for t in 0..m {
            let from = cycle[t];
            let to = cycle[(t + 1) % m];
            if from >= ns {
                // backward arc (demand -> supply) consumes flow(to, from-ns)
                delta = delta.min(flow[to * nd + (from - ns)]);
            }
        }
        if delta == 0 || delta == u64::MAX {
            return Err(Error::Internal("degenerate cycle in reference solver".into()));
        }
        for t in 0..m {
            let from = cycle[t];
            let to = cycle[(t + 1) % m];
            if from < ns {
                flow[from * nd + (to - ns)] += delta;
            } else {
                flow[to * nd + (from - ns)] -= delta;
            }
        }
    }

    // Duals: shortest distances in the final residual graph (no negative
    // cycles left), so reduced costs are nonnegative and vanish on flow arcs.
    dist.fill(0.0);
    for _ in 0..nodes {
        let mut changed = false;
        for i in 0..ns {
            for j in 0..nd {
                let c = problem.costs[(i, j)];
                if dist[i] + c < dist[ns + j] {
                    dist[ns + j] = dist[i] + c;
                    changed = true;
                }
                if flow[i * nd + j] > 0 && dist[ns + j] - c < dist[i] {
                    dist[i] = dist[ns + j] - c;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let supply_duals: Vec<f64> = (0..ns).map(|i| -dist[i]).collect();
    let demand_duals: Vec<f64> = (0..nd).map(|j| dist[ns + j]).collect();

    let mut flows = BTreeMap::new();
    for i in 0..ns {
        for j in 0..nd {
            if flow[i * nd + j] > 0 {
                flows.insert((i, j), flow[i * nd + j]);
            }
        }
    }
    let raw_cost: f64 = flows
        .iter()
        .map(|(&(i, j), &units)| units as f64 * problem.costs[(i, j)])
        .sum();
    Ok(TransportPlan {
        flows,
        total_cost: raw_cost / problem.scale,
        supply_duals,
        demand_duals,
    })
}
