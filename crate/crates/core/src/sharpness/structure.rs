//! Structural classification of special classes of sharp graphs: irregular graphs
//! of diameter 3 and triangle-free graphs.

use std::collections::{BTreeMap, HashMap};

use super::{AnalysisError, CheckResult, SharpnessAnalysis};
use crate::rational::ratio;

/// Result of checking an irregular sharp graph of diameter 3 against its
/// classification. `r` and `t` are `None` when they cannot be extracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diameter3Structure {
    pub x: usize,
    pub y: usize,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub checks: BTreeMap<String, CheckResult>,
}

impl Diameter3Structure {
    pub fn pass(&self) -> bool {
        self.r.is_some() && self.t.is_some() && self.checks.values().all(|c| c.pass)
    }

    pub fn overall(&self) -> CheckResult {
        let mut out = CheckResult::passed();
        for (name, c) in &self.checks {
            if !c.pass {
                out.absorb(c.witnesses.iter().map(|w| format!("{name}: {w}")).collect());
                out.pass = false;
            }
        }
        out
    }
}

/// Triangle-free clauses, each flagged with whether its degree threshold
/// applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C3FreeReport {
    pub pole: usize,
    pub clauses: BTreeMap<String, (bool, CheckResult)>,
}

impl C3FreeReport {
    pub fn applicable(&self, name: &str) -> Option<bool> {
        self.clauses.get(name).map(|c| c.0)
    }

    pub fn overall(&self) -> CheckResult {
        let mut out = CheckResult::passed();
        for (name, (applicable, c)) in &self.clauses {
            if *applicable && !c.pass {
                out.absorb(c.witnesses.iter().map(|w| format!("{name}: {w}")).collect());
                out.pass = false;
            }
        }
        out
    }
}

/// Outcome of the constructive hypercube labelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypercubeLabel {
    /// Per vertex, a subset of `{1, ..., L}`; adjacency is Hamming distance 1.
    Labeled(Vec<Vec<usize>>),
    /// A structural violation met while labelling.
    Refuted(String),
}

impl SharpnessAnalysis<'_> {
    /// Checks every clause of the diameter-3 classification and extracts
    /// `(r, t)` with middle degree `3(r + 1)` and `d_x = 2r + t`.
    pub fn verify_diameter3_structure(&self) -> Result<Diameter3Structure, AnalysisError> {
        let g = self.graph();
        if g.is_regular() {
            return Err(AnalysisError::Regular);
        }
        if self.diameter() != 3 {
            return Err(AnalysisError::WrongDiameter(self.diameter()));
        }
        self.require_sharp()?;
        let n = g.vertex_count();
        let mut checks = BTreeMap::new();

        let poles = &self.verdict().poles;
        let (x, y) = poles[0];
        let extra: Vec<String> = poles[1..].iter().map(|&(a, b)| format!("extra pole pair {}-{}", self.label(a), self.label(b))).collect();
        checks.insert("unique_pole_pair".to_owned(), CheckResult::from_violations(extra));

        let degree_bad: Vec<String> = [x, y]
            .into_iter()
            .filter(|&p| 2 * g.degree(p) + 2 != n)
            .map(|p| format!("pole {} has degree {}, expected (n-2)/2 with n = {n}", self.label(p), g.degree(p)))
            .collect();
        checks.insert("pole_degrees".to_owned(), CheckResult::from_violations(degree_bad));

        let mut matching_bad = Vec::new();
        for &v in g.neighbors(y) {
            let s: Vec<usize> = g.common_neighbors(v, x);
            for &u in &s {
                let missing = s.iter().filter(|&&w| w != u && !g.has_edge(u, w)).count();
                if missing > 1 {
                    matching_bad.push(format!(
                        "{} misses {missing} vertices of N({}) ∩ N({})",
                        self.label(u),
                        self.label(v),
                        self.label(x)
                    ));
                }
            }
        }
        checks.insert("matching_structure".to_owned(), CheckResult::from_violations(matching_bad));

        let middle: Vec<usize> = (0..n).filter(|&u| u != x && u != y).collect();
        let degree = g.degree(middle[0]);
        let irregular: Vec<String> = middle
            .iter()
            .filter(|&&u| g.degree(u) != degree)
            .map(|&u| format!("{} has degree {}, expected {degree}", self.label(u), g.degree(u)))
            .collect();
        checks.insert("middle_regular".to_owned(), CheckResult::from_violations(irregular));

        let mut relation_bad = Vec::new();
        let from_x = self.profile(x);
        for &u in g.neighbors(x) {
            let e = from_x.entries[u];
            if e.flat + 4 != 2 * e.up {
                relation_bad.push(format!("{}: d0 = {}, d+ = {}", self.label(u), e.flat, e.up));
            }
        }
        for &v in g.neighbors(y) {
            let e = from_x.entries[v];
            if e.flat + 4 != 2 * e.down {
                relation_bad.push(format!("{}: d0 = {}, d- = {}", self.label(v), e.flat, e.down));
            }
        }
        checks.insert("neighbour_relation".to_owned(), CheckResult::from_violations(relation_bad));

        let r = (degree.is_multiple_of(3) && degree >= 6).then(|| degree / 3 - 1);
        let dx = g.degree(x);
        let t = r.and_then(|r| dx.checked_sub(2 * r)).filter(|&t| t > 0);
        let mut t_bad = Vec::new();
        match (r, t) {
            (Some(r), Some(t)) => {
                if 2 * t > r + 4 {
                    t_bad.push(format!("t = {t} exceeds r/2 + 2 with r = {r}"));
                }
                for &u in g.neighbors(x) {
                    let away = g.neighbors(x).iter().filter(|&&w| !g.has_edge(u, w)).count();
                    if away != t {
                        t_bad.push(format!("|N(x) \\ N({})| = {away}, expected t = {t}", self.label(u)));
                    }
                    if from_x.entries[u].flat != 2 * r {
                        t_bad.push(format!("{} has d0 = {}, expected 2r = {}", self.label(u), from_x.entries[u].flat, 2 * r));
                    }
                }
            }
            (None, _) => t_bad.push(format!("middle degree {degree} is not 3(r+1) with r >= 1")),
            (Some(r), None) => t_bad.push(format!("pole degree {dx} leaves no positive t with r = {r}")),
        }
        checks.insert("rt_range".to_owned(), CheckResult::from_violations(t_bad));
        Ok(Diameter3Structure { x, y, r, t, checks })
    }

    /// Triangle-free clauses at pole `x`: degrees at most `L` with matchings
    /// at degree `L`, `d_u = L` on `N(x)`, `d⁻_u <= i` with its equality
    /// case, and (when `d_x > L/2`, resp. `d_x > 2L/3`) the two `N_2(x)`
    /// clauses.
    pub fn c3free_checks(&self, x: usize) -> Result<C3FreeReport, AnalysisError> {
        self.require_triangle_free()?;
        self.require_sharp_pole(x)?;
        let g = self.graph();
        let l = self.diameter() as usize;
        let profile = self.profile(x);
        let mut clauses = BTreeMap::new();

        let mut bound = Vec::new();
        for u in 0..g.vertex_count() {
            if g.degree(u) > l {
                bound.push(format!("{} has degree {} > L = {l}", self.label(u), g.degree(u)));
            } else if g.degree(u) == l {
                for &v in g.neighbors(u) {
                    if profile.entries[v].level != profile.entries[u].level
                        && !self.edge_report(u, v).expect("cached edge").bound_attained
                    {
                        bound.push(format!("H1({}, {}) has no perfect matching", self.label(v), self.label(u)));
                    }
                }
            }
        }
        clauses.insert("degree_at_most_L".to_owned(), (true, CheckResult::from_violations(bound)));

        let near: Vec<String> = g
            .neighbors(x)
            .iter()
            .filter(|&&u| g.degree(u) != l)
            .map(|&u| format!("{} has degree {}, expected L = {l}", self.label(u), g.degree(u)))
            .collect();
        clauses.insert("neighbours_degree_L".to_owned(), (true, CheckResult::from_violations(near)));

        let mut down = Vec::new();
        for (u, e) in profile.entries.iter().enumerate() {
            let i = e.level as usize;
            if e.down > i {
                down.push(format!("{} at level {i} has d- = {}", self.label(u), e.down));
            } else if i > 0 && e.down == i && (e.flat != 0 || e.up != l - i) {
                down.push(format!("{} at level {i} has d- = i but d0 = {}, d+ = {}", self.label(u), e.flat, e.up));
            }
        }
        clauses.insert("down_degree".to_owned(), (true, CheckResult::from_violations(down)));

        let dx = g.degree(x);
        let second: Vec<usize> = profile.level(2).collect();
        let half = 2 * dx > l;
        let two_down: Vec<String> = second
            .iter()
            .filter(|&&u| profile.entries[u].down != 2)
            .map(|&u| format!("{} in N2 has d- = {}", self.label(u), profile.entries[u].down))
            .collect();
        clauses.insert("n2_two_down".to_owned(), (half, CheckResult::from_violations(if half { two_down } else { vec![] })));

        let two_thirds = 3 * dx > 2 * l;
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut clash = Vec::new();
        for &u in &second {
            let key = g.common_neighbors(u, x);
            if let Some(&prev) = seen.get(&key) {
                clash.push(format!("{} and {} share their neighbours in N(x)", self.label(prev), self.label(u)));
            } else {
                seen.insert(key, u);
            }
        }
        clauses.insert("n2_distinct_pairs".to_owned(), (two_thirds, CheckResult::from_violations(if two_thirds { clash } else { vec![] })));

        Ok(C3FreeReport { pole: x, clauses })
    }

    fn require_triangle_free(&self) -> Result<(), AnalysisError> {
        let g = self.graph();
        for (u, v) in g.edges() {
            if let Some(&w) = g.common_neighbors(u, v).first() {
                return Err(AnalysisError::HasTriangle(self.label(u).to_owned(), self.label(v).to_owned(), self.label(w).to_owned()));
            }
        }
        Ok(())
    }

    /// Labels `x` by the empty set, `N(x)` by singletons in vertex order and
    /// every further vertex by the union of its lower neighbours' labels,
    /// then checks the map is an isomorphism onto `Q_L`.
    pub fn hypercube_label(&self, x: usize) -> Result<HypercubeLabel, AnalysisError> {
        self.require_pole(x)?;
        self.require_triangle_free()?;
        let g = self.graph();
        let l = self.diameter() as usize;
        let dx = g.degree(x);
        if 3 * dx <= 2 * l {
            return Err(AnalysisError::Precondition(format!("d_x = {dx} not > 2L/3 = {}", ratio(2 * l as i64, 3))));
        }
        if l > 63 {
            return Err(AnalysisError::Precondition(format!("diameter {l} exceeds 63")));
        }
        self.require_sharp()?;

        let profile = self.profile(x);
        let n = g.vertex_count();
        let mut labels = vec![0u64; n];
        if dx != l {
            return Ok(HypercubeLabel::Refuted(format!("pole degree {dx} differs from L = {l}")));
        }
        for (k, &u) in g.neighbors(x).iter().enumerate() {
            labels[u] = 1 << k;
        }
        for i in 2..=l as u32 {
            for v in profile.level(i) {
                let label = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| profile.entries[w].level + 1 == i)
                    .fold(0u64, |acc, &w| acc | labels[w]);
                if label.count_ones() != i {
                    return Ok(HypercubeLabel::Refuted(format!(
                        "{} at level {i} receives a label of size {}",
                        self.label(v),
                        label.count_ones()
                    )));
                }
                labels[v] = label;
            }
        }

        if n as u64 != 1u64 << l {
            return Ok(HypercubeLabel::Refuted(format!("{n} vertices, expected 2^{l}")));
        }
        let mut owner: HashMap<u64, usize> = HashMap::with_capacity(n);
        for (v, &label) in labels.iter().enumerate() {
            if let Some(prev) = owner.insert(label, v) {
                return Ok(HypercubeLabel::Refuted(format!("{} and {} receive the same label", self.label(prev), self.label(v))));
            }
        }
        for (u, v) in g.edges() {
            if (labels[u] ^ labels[v]).count_ones() != 1 {
                return Ok(HypercubeLabel::Refuted(format!("edge {}-{} joins labels at Hamming distance > 1", self.label(u), self.label(v))));
            }
        }
        for (v, &label) in labels.iter().enumerate() {
            for bit in 0..l {
                let w = owner[&(label ^ (1 << bit))];
                if !g.has_edge(v, w) {
                    return Ok(HypercubeLabel::Refuted(format!("{} and {} differ in one coordinate but are not adjacent", self.label(v), self.label(w))));
                }
            }
        }
        let subsets = labels.iter().map(|&m| (0..l).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()).collect();
        Ok(HypercubeLabel::Labeled(subsets))
    }
}
