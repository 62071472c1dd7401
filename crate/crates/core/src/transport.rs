//! Integer transportation and capacitated bipartite matching.
//!
//! Both solvers run on a small residual [`FlowNetwork`]. Transport uses
//! successive shortest paths with Dijkstra over reduced costs, so every
//! returned flow is integral by construction. Perfect matchings in a
//! blown-up bipartite graph are found by max-flow on the base graph, with
//! the blow-up multiplicities as source and sink capacities.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("unbalanced instance: supply {supply} != demand {demand}")]
    Unbalanced { supply: u64, demand: u64 },
    #[error("cost matrix is {rows}x{cols}, expected {supply}x{demand}")]
    Shape { rows: usize, cols: usize, supply: usize, demand: usize },
    #[error("edge ({0}, {1}) refers to a missing site")]
    SiteOutOfRange(usize, usize),
    #[error("instance has {0} left sites; subset search is limited to {MAX_HALL_SITES}")]
    TooLarge(usize),
}

/// Largest number of left sites for which [`hall_violation`] enumerates
/// subsets.
pub const MAX_HALL_SITES: usize = 20;

/// A balanced transportation problem with nonnegative integer data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportInstance {
    supply: Vec<u64>,
    demand: Vec<u64>,
    cost: Vec<Vec<u64>>,
}

impl TransportInstance {
    pub fn new(supply: Vec<u64>, demand: Vec<u64>, cost: Vec<Vec<u64>>) -> Result<Self, TransportError> {
        let shape_ok = cost.len() == supply.len() && cost.iter().all(|r| r.len() == demand.len());
        if !shape_ok {
            return Err(TransportError::Shape {
                rows: cost.len(),
                cols: cost.first().map_or(0, Vec::len),
                supply: supply.len(),
                demand: demand.len(),
            });
        }
        let (s, d) = (supply.iter().sum::<u64>(), demand.iter().sum::<u64>());
        if s != d {
            return Err(TransportError::Unbalanced { supply: s, demand: d });
        }
        Ok(Self { supply, demand, cost })
    }

    pub fn supply(&self) -> &[u64] {
        &self.supply
    }

    pub fn demand(&self) -> &[u64] {
        &self.demand
    }

    pub fn cost(&self, i: usize, j: usize) -> u64 {
        self.cost[i][j]
    }

    pub fn total_mass(&self) -> u64 {
        self.supply.iter().sum()
    }

    /// The same instance with every mass multiplied by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        Self {
            supply: self.supply.iter().map(|m| m * k).collect(),
            demand: self.demand.iter().map(|m| m * k).collect(),
            cost: self.cost.clone(),
        }
    }
}

/// An integral coupling with its total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerCoupling {
    pub flow: Vec<Vec<u64>>,
    pub cost: u64,
}

impl IntegerCoupling {
    /// Positive entries as `(row, column, amount)`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.flow
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|(_, &f)| f > 0).map(move |(j, &f)| (i, j, f)))
    }

    /// True when the flow has the instance's marginals and its stated cost.
    pub fn is_coupling_for(&self, inst: &TransportInstance) -> bool {
        if self.flow.len() != inst.supply.len() || self.flow.iter().any(|r| r.len() != inst.demand.len()) {
            return false;
        }
        let rows_ok = self.flow.iter().zip(&inst.supply).all(|(r, &s)| r.iter().sum::<u64>() == s);
        let cols_ok = (0..inst.demand.len()).all(|j| self.flow.iter().map(|r| r[j]).sum::<u64>() == inst.demand[j]);
        let cost: u64 = self.entries().map(|(i, j, f)| f * inst.cost[i][j]).sum();
        rows_ok && cols_ok && cost == self.cost
    }
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u64,
    cost: i64,
}

/// Residual network; arc `k ^ 1` is the reverse of arc `k`.
#[derive(Debug, Clone, Default)]
struct FlowNetwork {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn with_nodes(n: usize) -> Self {
        Self { arcs: Vec::new(), adj: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u64, cost: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    fn flow_on(&self, arc: usize) -> u64 {
        self.arcs[arc ^ 1].cap
    }

    /// Successive shortest paths from `s` to `t`. Initial potentials are zero,
    /// which is valid because all arc costs start nonnegative.
    fn min_cost_flow(&mut self, s: usize, t: usize, limit: u64) -> (u64, i64) {
        let n = self.adj.len();
        let mut potential = vec![0i64; n];
        let (mut flow, mut cost) = (0u64, 0i64);
        while flow < limit {
            let mut dist = vec![i64::MAX; n];
            let mut parent = vec![usize::MAX; n];
            let mut done = vec![false; n];
            let mut heap = BinaryHeap::new();
            dist[s] = 0;
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if done[u] {
                    continue;
                }
                done[u] = true;
                if u == t {
                    break;
                }
                for &a in &self.adj[u] {
                    let arc = &self.arcs[a];
                    if arc.cap == 0 || done[arc.to] {
                        continue;
                    }
                    let reduced = arc.cost + potential[u] - potential[arc.to];
                    debug_assert!(reduced >= 0, "negative reduced cost {reduced}");
                    let nd = d + reduced;
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        parent[arc.to] = a;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if !done[t] {
                break;
            }
            // Nodes not finalised are treated as lying at distance dist[t].
            for v in 0..n {
                if done[v] {
                    potential[v] += dist[v] - dist[t];
                }
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let a = parent[v];
                push = push.min(self.arcs[a].cap);
                v = self.arcs[a ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                cost += push as i64 * self.arcs[a].cost;
                v = self.arcs[a ^ 1].to;
            }
            flow += push;
        }
        (flow, cost)
    }

    /// Edmonds-Karp max-flow, scanning arcs in insertion order.
    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut parent = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let to = self.arcs[a].to;
                    if self.arcs[a].cap > 0 && !seen[to] {
                        seen[to] = true;
                        parent[to] = a;
                        queue.push_back(to);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = u64::MAX;
            let mut v = t;
            while v != s {
                push = push.min(self.arcs[parent[v]].cap);
                v = self.arcs[parent[v] ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.arcs[a].cap -= push;
                self.arcs[a ^ 1].cap += push;
                v = self.arcs[a ^ 1].to;
            }
            total += push;
        }
    }
}

/// Minimum-cost integral coupling of a balanced instance.
pub fn min_cost_transport(inst: &TransportInstance) -> Result<IntegerCoupling, TransportError> {
    let (m, k) = (inst.supply.len(), inst.demand.len());
    let total = inst.total_mass();
    let (s, t) = (m + k, m + k + 1);
    let mut net = FlowNetwork::with_nodes(m + k + 2);
    for (i, &mass) in inst.supply.iter().enumerate() {
        if mass > 0 {
            net.add_arc(s, i, mass, 0);
        }
    }
    let mut cells = vec![vec![usize::MAX; k]; m];
    for i in (0..m).filter(|&i| inst.supply[i] > 0) {
        for j in (0..k).filter(|&j| inst.demand[j] > 0) {
            cells[i][j] = net.add_arc(i, m + j, total, inst.cost[i][j] as i64);
        }
    }
    for (j, &mass) in inst.demand.iter().enumerate() {
        if mass > 0 {
            net.add_arc(m + j, t, mass, 0);
        }
    }
    let (flow, cost) = net.min_cost_flow(s, t, total);
    debug_assert_eq!(flow, total, "balanced complete bipartite instance must saturate");
    let flow_matrix = cells
        .iter()
        .map(|row| row.iter().map(|&a| if a == usize::MAX { 0 } else { net.flow_on(a) }).collect())
        .collect();
    Ok(IntegerCoupling { flow: flow_matrix, cost: cost as u64 })
}

/// Optimality certificate: a coupling is optimal iff its residual graph has
/// no negative-cost cycle (checked with Bellman-Ford).
pub fn is_optimal(inst: &TransportInstance, coupling: &IntegerCoupling) -> bool {
    if !coupling.is_coupling_for(inst) {
        return false;
    }
    let (m, k) = (inst.supply.len(), inst.demand.len());
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in 0..k {
            let c = inst.cost[i][j] as i64;
            arcs.push((i, m + j, c));
            if coupling.flow[i][j] > 0 {
                arcs.push((m + j, i, -c));
            }
        }
    }
    let n = m + k;
    let mut dist = vec![0i64; n];
    for _ in 0..=n {
        let mut changed = false;
        for &(u, v, c) in &arcs {
            if dist[u] + c < dist[v] {
                dist[v] = dist[u] + c;
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

fn check_bipartite(left: &[u64], right: &[u64], edges: &[(usize, usize)]) -> Result<(), TransportError> {
    let (l, r) = (left.iter().sum::<u64>(), right.iter().sum::<u64>());
    if l != r {
        return Err(TransportError::Unbalanced { supply: l, demand: r });
    }
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= left.len() || b >= right.len()) {
        return Err(TransportError::SiteOutOfRange(a, b));
    }
    Ok(())
}

/// Decides whether the blow-up of a bipartite base graph has a perfect
/// matching, where left site `i` stands for `left_sizes[i]` copies and right
/// site `j` for `right_sizes[j]` copies. Returns the saturating integer flow
/// over the base edges as witness.
pub fn has_perfect_matching(
    left_sizes: &[u64],
    right_sizes: &[u64],
    unit_edges: &[(usize, usize)],
) -> Result<Option<Vec<Vec<u64>>>, TransportError> {
    check_bipartite(left_sizes, right_sizes, unit_edges)?;
    let (m, k) = (left_sizes.len(), right_sizes.len());
    let total: u64 = left_sizes.iter().sum();
    let (s, t) = (m + k, m + k + 1);
    let mut net = FlowNetwork::with_nodes(m + k + 2);
    for (i, &c) in left_sizes.iter().enumerate() {
        net.add_arc(s, i, c, 0);
    }
    let arcs: Vec<_> = unit_edges.iter().map(|&(a, b)| (a, b, net.add_arc(a, m + b, total, 0))).collect();
    for (j, &c) in right_sizes.iter().enumerate() {
        net.add_arc(m + j, t, c, 0);
    }
    if net.max_flow(s, t) < total {
        return Ok(None);
    }
    let mut flow = vec![vec![0; k]; m];
    for (a, b, arc) in arcs {
        flow[a][b] += net.flow_on(arc);
    }
    Ok(Some(flow))
}

/// Exhaustive Hall search on the blown-up bipartite graph: returns a set of
/// left sites whose total size exceeds that of their neighbourhood, or
/// `None` when Hall's condition holds everywhere.
pub fn hall_violation(
    left_sizes: &[u64],
    right_sizes: &[u64],
    unit_edges: &[(usize, usize)],
) -> Result<Option<Vec<usize>>, TransportError> {
    check_bipartite(left_sizes, right_sizes, unit_edges)?;
    let active: Vec<usize> = (0..left_sizes.len()).filter(|&i| left_sizes[i] > 0).collect();
    if active.len() > MAX_HALL_SITES {
        return Err(TransportError::TooLarge(active.len()));
    }
    let words = right_sizes.len().div_ceil(64).max(1);
    let neighbourhood: Vec<Vec<u64>> = active
        .iter()
        .map(|&i| {
            let mut bits = vec![0u64; words];
            for &(_, b) in unit_edges.iter().filter(|e| e.0 == i) {
                bits[b / 64] |= 1 << (b % 64);
            }
            bits
        })
        .collect();
    for mask in 1u32..(1u32 << active.len()) {
        let mut union = vec![0u64; words];
        let mut need = 0;
        for (bit, &site) in active.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                need += left_sizes[site];
                for (w, nb) in union.iter_mut().zip(&neighbourhood[bit]) {
                    *w |= nb;
                }
            }
        }
        let have: u64 = (0..right_sizes.len())
            .filter(|&j| union[j / 64] >> (j % 64) & 1 == 1)
            .map(|j| right_sizes[j])
            .sum();
        if need > have {
            return Ok(Some(active.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &s)| s).collect()));
        }
    }
    Ok(None)
}
