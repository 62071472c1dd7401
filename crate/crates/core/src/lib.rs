//! Exact Lin-Lu-Yau Ricci curvature on graph edges and Bonnet-Myers
//! sharpness analysis.
//!
//! Curvature at an edge `xy` (with `d_x <= d_y`) is
//! `1 + 1/d_y - W / lcm(d_x, d_y)`, where `W` is an integer min-cost
//! transport between two small mass distributions on the neighbourhoods of
//! `x` and `y`. Everything is computed with exact rationals; two independent
//! oracles (a lazy random walk transport and a 1-Lipschitz dual search) are
//! available for cross-checking.

pub mod curvature;
pub mod graph;
pub mod rational;
pub mod report;
pub mod sharpness;
pub mod transport;

pub use curvature::{
    all_edge_curvatures, blowup_instance, curvature_upper_bound, edge_curvature,
    hall_witness_search, lazy_lp_curvature, lipschitz_curvature, slackness_check,
    star_coupling_of, BlowupInstance, CurvatureError, CurvatureReport, HallWitness,
    LipschitzWitness, StarCoupling,
};
pub use graph::{parse_edge_list, DistanceMap, DistanceMatrix, FamilySpec, Graph, GraphError};
pub use rational::Rational;
pub use sharpness::{sharpness_verdict, AnalysisError, CheckResult, SharpnessAnalysis, SharpnessReport};
pub use transport::{
    has_perfect_matching, min_cost_transport, IntegerCoupling, TransportError, TransportInstance,
};
