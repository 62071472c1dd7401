//! Lin-Lu-Yau curvature of edges.
//!
//! For an edge `xy` with `d_x <= d_y`, let `l = lcm(d_x, d_y) = c_x d_x =
//! c_y d_y`. The source distribution puts `c_x - c_y` on every vertex of
//! `N(x) ∩ N[y]` and `c_x` on `N(x) \ N[y]`; the target puts `c_y` on
//! `N(y) \ N[x]`. With `C` the cost of an optimal integer coupling under the
//! graph metric,
//!
//! ```text
//! kappa(x, y) = 1 + 1/d_y - C / l
//! ```
//!
//! The lazy-walk transport ([`lazy_lp_curvature`]) and the Lipschitz dual
//! search ([`lipschitz_curvature`]) compute the same value by different
//! routes and are used as oracles.

mod certificates;
mod oracles;

pub use certificates::{slackness_check, star_coupling_of, StarCoupling};
pub use oracles::{lazy_lp_curvature, lipschitz_curvature, LipschitzWitness, MAX_LIPSCHITZ_SUPPORT};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rational::{lcm, ratio, Rational};
use crate::transport::{
    hall_violation, has_perfect_matching, min_cost_transport, IntegerCoupling, TransportError,
    TransportInstance,
};

/// Distances inside `N[x] ∪ N[y]` across an edge never exceed this.
pub(crate) const LOCAL_RADIUS: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error(
        "vertices {0} and {1} are not adjacent; curvature is only computed on edges \
         (a lower bound on all edges already bounds every pair)"
    )]
    NotAnEdge(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transport(#[from] TransportError),
    #[error("idleness {0} is outside [0, 1)")]
    AlphaOutOfRange(Rational),
    #[error("neighbourhood support has {size} vertices; the Lipschitz search is limited to {limit}")]
    SupportTooLarge { size: usize, limit: usize },
    #[error("coupling does not match the instance marginals")]
    MalformedCoupling,
    #[error("star coupling violates condition {condition}: {detail}")]
    StarCondition { condition: u8, detail: String },
}

/// The local transport problem at an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupInstance {
    /// Lower-degree endpoint.
    pub x: usize,
    pub y: usize,
    pub dx: u64,
    pub dy: u64,
    pub lcm: u64,
    pub cx: u64,
    pub cy: u64,
    /// `N(x) ∩ N(y)`.
    pub common: Vec<usize>,
    /// Support of the source masses, in vertex order.
    pub sources: Vec<usize>,
    /// `N(y) \ N[x]`, in vertex order.
    pub sinks: Vec<usize>,
    pub transport: TransportInstance,
}

impl BlowupInstance {
    /// Source masses as `(vertex, mass)`.
    pub fn mu_x(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.sources.iter().copied().zip(self.transport.supply().iter().copied())
    }

    /// Target masses as `(vertex, mass)`.
    pub fn mu_y(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.sinks.iter().copied().zip(self.transport.demand().iter().copied())
    }

    /// True for sources in `N(x) ∩ N[y]`.
    pub fn is_shared(&self, source: usize) -> bool {
        let v = self.sources[source];
        v == self.y || self.common.binary_search(&v).is_ok()
    }

    /// Base edges of the unit-cost bipartite graph `H_1`, as
    /// `(source index, sink index)`.
    pub fn unit_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.sources.len() {
            for j in 0..self.sinks.len() {
                if self.transport.cost(i, j) == 1 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Total blown-up size `|X| = |Y|`.
    pub fn blowup_size(&self) -> u64 {
        self.transport.total_mass()
    }
}

fn require_edge(g: &Graph, x: usize, y: usize) -> Result<(), CurvatureError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if g.has_edge(x, y) {
        Ok(())
    } else {
        Err(CurvatureError::NotAnEdge(x, y))
    }
}

/// Builds the local instance, swapping the endpoints if `d_x > d_y`.
pub fn blowup_instance(g: &Graph, x: usize, y: usize) -> Result<BlowupInstance, CurvatureError> {
    require_edge(g, x, y)?;
    Ok(build_instance(g, x, y))
}

pub(crate) fn build_instance(g: &Graph, x: usize, y: usize) -> BlowupInstance {
    let (x, y) = if g.degree(x) > g.degree(y) { (y, x) } else { (x, y) };
    let (dx, dy) = (g.degree(x) as u64, g.degree(y) as u64);
    let l = lcm(dx, dy);
    let (cx, cy) = (l / dx, l / dy);
    let common = g.common_neighbors(x, y);

    let mut sources = Vec::new();
    let mut supply = Vec::new();
    for &u in g.neighbors(x) {
        let mass = if u == y || g.has_edge(u, y) { cx - cy } else { cx };
        if mass > 0 {
            sources.push(u);
            supply.push(mass);
        }
    }
    let sinks: Vec<usize> =
        g.neighbors(y).iter().copied().filter(|&v| v != x && !g.has_edge(v, x)).collect();
    let demand = vec![cy; sinks.len()];

    let cost = sources
        .iter()
        .map(|&u| {
            let d = g.distances_within(u, LOCAL_RADIUS);
            sinks
                .iter()
                .map(|&v| u64::from(d.get(v).expect("vertices across an edge are within distance 3")))
                .collect()
        })
        .collect();
    let transport = TransportInstance::new(supply, demand, cost).expect("blow-up masses are balanced");
    BlowupInstance { x, y, dx, dy, lcm: l, cx, cy, common, sources, sinks, transport }
}

/// Curvature of one edge with the optimal coupling behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub instance: BlowupInstance,
    pub kappa: Rational,
    pub coupling: IntegerCoupling,
    /// `(|N(x) ∩ N(y)| + 2) / d_y`.
    pub upper_bound: Rational,
    /// Whether the unit-cost graph `H_1` has a perfect matching.
    pub bound_attained: bool,
}

impl CurvatureReport {
    /// Normalised endpoints `(x, y)` with `d_x <= d_y`.
    pub fn edge(&self) -> (usize, usize) {
        (self.instance.x, self.instance.y)
    }
}

pub(crate) fn formula_value(inst: &BlowupInstance, cost: u64) -> Rational {
    let one = Rational::from_integer(BigInt::from(1));
    one + ratio(1, inst.dy as i64) - Rational::new(BigInt::from(cost), BigInt::from(inst.lcm))
}

fn upper_bound_of(inst: &BlowupInstance) -> Rational {
    ratio(inst.common.len() as i64 + 2, inst.dy as i64)
}

fn h1_matching(inst: &BlowupInstance) -> Result<Option<Vec<Vec<u64>>>, TransportError> {
    has_perfect_matching(inst.transport.supply(), inst.transport.demand(), &inst.unit_edges())
}

pub(crate) fn report_for(g: &Graph, x: usize, y: usize) -> Result<CurvatureReport, CurvatureError> {
    let instance = build_instance(g, x, y);
    let coupling = min_cost_transport(&instance.transport)?;
    let kappa = formula_value(&instance, coupling.cost);
    let upper_bound = upper_bound_of(&instance);
    let bound_attained = h1_matching(&instance)?.is_some();
    Ok(CurvatureReport { instance, kappa, coupling, upper_bound, bound_attained })
}

/// Exact curvature of the edge `xy`.
pub fn edge_curvature(g: &Graph, x: usize, y: usize) -> Result<CurvatureReport, CurvatureError> {
    require_edge(g, x, y)?;
    g.require_connected()?;
    report_for(g, x, y)
}

/// `((|N(x) ∩ N(y)| + 2) / d_y, attained)`, where attainment is decided by a
/// perfect matching in `H_1`.
pub fn curvature_upper_bound(g: &Graph, x: usize, y: usize) -> Result<(Rational, bool), CurvatureError> {
    let inst = blowup_instance(g, x, y)?;
    Ok((upper_bound_of(&inst), h1_matching(&inst)?.is_some()))
}

/// Sets `T_1 ⊆ N(x) \ N[y]` and `T_2 ⊆ N(x) ∩ N[y]` violating
/// `c_y |N(T_1 ∪ T_2) ∩ (N(y) \ N[x])| >= c_x |T_1| + (c_x - c_y) |T_2|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWitness {
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
}

pub fn hall_witness_search(inst: &BlowupInstance) -> Result<Option<HallWitness>, CurvatureError> {
    let found = hall_violation(inst.transport.supply(), inst.transport.demand(), &inst.unit_edges())?;
    Ok(found.map(|sites| {
        let (shared, private): (Vec<usize>, Vec<usize>) = sites.into_iter().partition(|&i| inst.is_shared(i));
        HallWitness {
            t1: private.into_iter().map(|i| inst.sources[i]).collect(),
            t2: shared.into_iter().map(|i| inst.sources[i]).collect(),
        }
    }))
}

/// Reports for every edge in `g.edges()` order, computed in parallel.
pub fn all_edge_reports(g: &Graph) -> Result<Vec<CurvatureReport>, CurvatureError> {
    g.require_connected()?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    edges.par_iter().map(|&(u, v)| report_for(g, u, v)).collect()
}

/// Curvature of every edge, keyed by `(u, v)` with `u < v`.
pub fn all_edge_curvatures(g: &Graph) -> Result<BTreeMap<(usize, usize), Rational>, CurvatureError> {
    let reports = all_edge_reports(g)?;
    Ok(g.edges().zip(reports).map(|(e, r)| (e, r.kappa)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, figure1, hypercube, path};
    use crate::rational::int;

    fn vertex(g: &Graph, label: &str) -> usize {
        g.index_of(label).unwrap()
    }

    #[test]
    fn figure1_instance() {
        let g = figure1();
        let (x, y) = (vertex(&g, "x"), vertex(&g, "y"));
        let inst = blowup_instance(&g, y, x).unwrap();
        assert_eq!((inst.x, inst.y), (x, y));
        assert_eq!((inst.cx, inst.cy, inst.lcm), (4, 3, 12));
        let mut mu_x: Vec<(&str, u64)> = inst.mu_x().map(|(v, m)| (g.label(v), m)).collect();
        mu_x.sort();
        assert_eq!(mu_x, vec![("x1", 4), ("y", 1), ("z", 1)]);
        let mu_y: Vec<(&str, u64)> = inst.mu_y().map(|(v, m)| (g.label(v), m)).collect();
        assert_eq!(mu_y, vec![("y1", 3), ("y2", 3)]);
        assert_eq!(inst.blowup_size(), 6);
    }

    #[test]
    fn k2_and_c5_instances() {
        let k2 = complete(2).unwrap();
        let inst = blowup_instance(&k2, 0, 1).unwrap();
        assert!(inst.sources.is_empty() && inst.sinks.is_empty());

        let c5 = cycle(5).unwrap();
        let inst = blowup_instance(&c5, 0, 1).unwrap();
        assert_eq!(inst.mu_x().collect::<Vec<_>>(), vec![(4, 1)]);
        assert_eq!(inst.mu_y().collect::<Vec<_>>(), vec![(2, 1)]);
        assert_eq!(inst.transport.cost(0, 0), 2);
    }

    #[test]
    fn non_edge_is_rejected() {
        let g = path(3).unwrap();
        assert_eq!(edge_curvature(&g, 0, 2), Err(CurvatureError::NotAnEdge(0, 2)));
        assert!(matches!(edge_curvature(&g, 0, 9), Err(CurvatureError::Graph(_))));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_index_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_curvature(&g, 0, 1), Err(CurvatureError::Graph(GraphError::Disconnected)));
        assert!(all_edge_curvatures(&g).is_err());
    }

    #[test]
    fn formula_values() {
        let g = figure1();
        let r = edge_curvature(&g, vertex(&g, "x"), vertex(&g, "y")).unwrap();
        assert_eq!(r.coupling.cost, 14);
        assert_eq!(r.kappa, ratio(1, 12));
        assert_eq!(edge_curvature(&complete(2).unwrap(), 0, 1).unwrap().kappa, int(2));
        assert_eq!(edge_curvature(&cycle(5).unwrap(), 0, 1).unwrap().kappa, ratio(1, 2));
        assert_eq!(edge_curvature(&hypercube(3).unwrap(), 0, 1).unwrap().kappa, ratio(2, 3));
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(curvature_upper_bound(&hypercube(3).unwrap(), 0, 1).unwrap(), (ratio(2, 3), true));
        assert_eq!(curvature_upper_bound(&cycle(5).unwrap(), 0, 1).unwrap(), (int(1), false));
        let k3 = complete(3).unwrap();
        assert_eq!(curvature_upper_bound(&k3, 0, 1).unwrap(), (ratio(3, 2), true));
        assert_eq!(edge_curvature(&k3, 0, 1).unwrap().kappa, ratio(3, 2));
    }

    #[test]
    fn hall_witnesses() {
        let c5 = cycle(5).unwrap();
        let w = hall_witness_search(&blowup_instance(&c5, 0, 1).unwrap()).unwrap().unwrap();
        assert_eq!(w, HallWitness { t1: vec![4], t2: vec![] });
        let q3 = hypercube(3).unwrap();
        assert_eq!(hall_witness_search(&blowup_instance(&q3, 0, 1).unwrap()).unwrap(), None);
        let k2 = complete(2).unwrap();
        assert_eq!(hall_witness_search(&blowup_instance(&k2, 0, 1).unwrap()).unwrap(), None);
    }

    #[test]
    fn batch_values() {
        let c5 = all_edge_curvatures(&cycle(5).unwrap()).unwrap();
        assert_eq!(c5.len(), 5);
        assert!(c5.values().all(|k| *k == ratio(1, 2)));
        let p3 = all_edge_curvatures(&path(3).unwrap()).unwrap();
        assert!(p3.values().all(|k| *k == int(1)));
        let q2 = all_edge_curvatures(&hypercube(2).unwrap()).unwrap();
        assert!(q2.values().all(|k| *k == int(1)));
    }
}
