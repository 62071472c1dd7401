//! Identities every sharp graph satisfies relative to a pole `x` and
//! `f = d(x, ·)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{AnalysisError, CheckResult, SharpnessAnalysis};
use crate::rational::{ratio, Rational};

impl SharpnessAnalysis<'_> {
    /// `L (d⁺ - d⁻) = (L - 2i) d_u` and `L | 2i d_u` at every vertex `u` of
    /// level `i`.
    pub fn level_identity_check(&self, x: usize) -> Result<CheckResult, AnalysisError> {
        self.require_sharp_pole(x)?;
        let l = i64::from(self.diameter());
        let mut bad = Vec::new();
        for (u, e) in self.profile(x).entries.iter().enumerate() {
            let (i, d) = (i64::from(e.level), e.degree() as i64);
            let lhs = l * (e.up as i64 - e.down as i64);
            if lhs != (l - 2 * i) * d {
                bad.push(format!(
                    "pole {}: vertex {} at level {i} has d+ = {}, d- = {}, degree {d}",
                    self.label(x),
                    self.label(u),
                    e.up,
                    e.down
                ));
            } else if (2 * i * d) % l != 0 {
                bad.push(format!("pole {}: 2*{i}*{d} not divisible by {l} at {}", self.label(x), self.label(u)));
            }
        }
        Ok(CheckResult::from_violations(bad))
    }

    /// `d⁺ / d⁻ = L / i - 1` at every vertex of level `i >= 1` with `d⁰ = 0`.
    pub fn ratio_check(&self, x: usize) -> Result<CheckResult, AnalysisError> {
        self.require_sharp_pole(x)?;
        let l = self.diameter() as usize;
        let mut bad = Vec::new();
        for (u, e) in self.profile(x).entries.iter().enumerate() {
            let i = e.level as usize;
            if i == 0 || e.flat != 0 {
                continue;
            }
            if i * e.up != (l - i) * e.down {
                bad.push(format!(
                    "pole {}: vertex {} at level {i} has d+ / d- = {}/{}, expected {}/{i}",
                    self.label(x),
                    self.label(u),
                    e.up,
                    e.down,
                    l - i
                ));
            }
        }
        Ok(CheckResult::from_violations(bad))
    }

    /// `[x, y] = V` and `y` is the only vertex at distance `L` from `x`
    /// (and `x` the only one from `y`).
    pub fn interval_fullness(&self, x: usize, y: usize) -> Result<CheckResult, AnalysisError> {
        self.require_sharp()?;
        self.graph().check_vertex(x)?;
        self.graph().check_vertex(y)?;
        let l = self.diameter();
        if self.distances().get(x, y) != l {
            return Err(AnalysisError::NotAPolePair(self.label(x).to_owned(), self.label(y).to_owned()));
        }
        let n = self.graph().vertex_count();
        let mut bad: Vec<String> = (0..n)
            .filter(|&v| self.distances().get(x, v) + self.distances().get(v, y) != l)
            .map(|v| format!("{} is off every {}-{} geodesic", self.label(v), self.label(x), self.label(y)))
            .collect();
        for (a, b) in [(x, y), (y, x)] {
            for v in (0..n).filter(|&v| v != b && self.distances().get(a, v) == l) {
                bad.push(format!("{} has a second antipode {} besides {}", self.label(a), self.label(v), self.label(b)));
            }
        }
        Ok(CheckResult::from_violations(bad))
    }

    /// Necessary conditions at the poles, keyed by check name:
    ///
    /// * `pole_min_degree`: `d_x <= d_u` for `u ∈ N(x)`.
    /// * `degree_bound`: `2 d_u <= (|N(u) ∩ N(v)| + 2) L` on every edge, both ends.
    /// * `pole_matching`: `H_1(x, u)` has a perfect matching for `u ∈ N(x)`.
    /// * `private_neighbours`: `|(N(x) ∩ N(v)) \ N[u]| d_u <= d_v` for
    ///   `v ∈ N_2(x)`, `u ∈ N(x) ∩ N(v)`.
    /// * `transport_direction`: every optimal coupling moves mass away from
    ///   `x` along edges between consecutive levels.
    pub fn pole_necessary_conditions(&self) -> Result<BTreeMap<String, CheckResult>, AnalysisError> {
        self.require_sharp()?;
        let g = self.graph();
        let dist = self.distances();
        let l = self.diameter() as usize;
        let poles = self.pole_vertices();
        let (mut min_degree, mut matching, mut private, mut direction) = (vec![], vec![], vec![], vec![]);

        for &x in &poles {
            for &u in g.neighbors(x) {
                if g.degree(x) > g.degree(u) {
                    min_degree.push(format!("pole {} has degree {} > {} at neighbour {}", self.label(x), g.degree(x), g.degree(u), self.label(u)));
                }
                let report = self.edge_report(x, u).expect("cached edge");
                if !report.bound_attained {
                    matching.push(format!("H1({}, {}) has no perfect matching", self.label(x), self.label(u)));
                }
            }
            for v in (0..g.vertex_count()).filter(|&v| dist.get(x, v) == 2) {
                let shared = g.common_neighbors(x, v);
                for &u in &shared {
                    let outside = shared.iter().filter(|&&w| w != u && !g.has_edge(w, u)).count();
                    if outside * g.degree(u) > g.degree(v) {
                        private.push(format!(
                            "pole {}: {} common neighbours of {} outside N[{}] times degree {} exceeds {}",
                            self.label(x),
                            outside,
                            self.label(v),
                            self.label(u),
                            g.degree(u),
                            g.degree(v)
                        ));
                    }
                }
            }
            for report in self.edge_reports() {
                let inst = &report.instance;
                let (lx, ly) = (dist.get(x, inst.x), dist.get(x, inst.y));
                if lx == ly {
                    continue;
                }
                for (i, j, _) in report.coupling.entries() {
                    let (w, z) = (inst.sources[i], inst.sinks[j]);
                    let (dw, dz) = (dist.get(x, w), dist.get(x, z));
                    let ok = if lx < ly { dw < dz } else { dw > dz };
                    if !ok {
                        direction.push(format!(
                            "pole {}: coupling on {}-{} moves mass {} -> {} against the level order",
                            self.label(x),
                            self.label(inst.x),
                            self.label(inst.y),
                            self.label(w),
                            self.label(z)
                        ));
                    }
                }
            }
        }

        let mut bound = Vec::new();
        for (u, v) in g.edges() {
            let c = g.common_neighbors(u, v).len();
            for (a, b) in [(u, v), (v, u)] {
                if 2 * g.degree(a) > (c + 2) * l {
                    bound.push(format!("degree {} of {} exceeds the bound on edge to {}", g.degree(a), self.label(a), self.label(b)));
                }
            }
        }

        Ok(BTreeMap::from([
            ("pole_min_degree".to_owned(), CheckResult::from_violations(min_degree)),
            ("degree_bound".to_owned(), CheckResult::from_violations(bound)),
            ("pole_matching".to_owned(), CheckResult::from_violations(matching)),
            ("private_neighbours".to_owned(), CheckResult::from_violations(private)),
            ("transport_direction".to_owned(), CheckResult::from_violations(direction)),
        ]))
    }

    /// `Δg = -(2/L) g` at every vertex for `g = d(x, ·) - L/2`, with the
    /// normalised Laplacian. Together with `λ_1 >= κ_min = 2/L` this pins
    /// the first nonzero eigenvalue to `2/L`.
    pub fn lichnerowicz_certificate(&self, x: usize) -> Result<CheckResult, AnalysisError> {
        self.require_sharp_pole(x)?;
        let g = self.graph();
        let row = self.distances().row(x);
        let l = i64::from(self.diameter());
        let half = ratio(l, 2);
        let eigen = -ratio(2, l);
        let value = |u: usize| Rational::from_integer(BigInt::from(row[u])) - &half;
        let mut bad = Vec::new();
        for u in 0..g.vertex_count() {
            let gu = value(u);
            let sum: Rational = g.neighbors(u).iter().map(|&v| value(v) - &gu).sum();
            let laplacian = sum / Rational::from_integer(BigInt::from(g.degree(u)));
            let expected = &eigen * &gu;
            if laplacian != expected {
                bad.push(format!("pole {}: Δg({}) = {laplacian}, expected {expected}", self.label(x), self.label(u)));
            }
        }
        Ok(CheckResult::from_violations(bad))
    }

    /// Every edge between consecutive levels lies on a geodesic from `x` to
    /// its antipode and must have curvature exactly `2/L`.
    pub fn geodesic_curvature_check(&self, x: usize) -> Result<CheckResult, AnalysisError> {
        self.require_sharp_pole(x)?;
        let dist = self.distances();
        let l = self.diameter();
        let target = ratio(2, i64::from(l));
        let antipodes: Vec<usize> = (0..self.graph().vertex_count()).filter(|&v| dist.get(x, v) == l).collect();
        let mut bad = Vec::new();
        for report in self.edge_reports() {
            let (u, v) = report.edge();
            let (near, far) = if dist.get(x, u) < dist.get(x, v) { (u, v) } else { (v, u) };
            let on_geodesic = antipodes
                .iter()
                .any(|&y| dist.get(x, near) + 1 + dist.get(far, y) == l);
            if on_geodesic && report.kappa != target {
                bad.push(format!("pole {}: edge {}-{} has curvature {}", self.label(x), self.label(u), self.label(v), report.kappa));
            }
        }
        Ok(CheckResult::from_violations(bad))
    }
}
