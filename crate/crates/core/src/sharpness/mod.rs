//! Bonnet-Myers sharpness: a connected graph with diameter `L` and minimum
//! edge curvature `κ_min` is sharp when `L = 2 / κ_min`.
//!
//! [`SharpnessAnalysis`] computes every edge curvature and the distance
//! matrix once, then runs the structural checks that sharp graphs must pass.
//! All checks are exact; none of them has a tolerance.

mod levels;
mod structure;

pub use structure::{Diameter3Structure, HypercubeLabel, C3FreeReport};

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::curvature::{all_edge_reports, CurvatureError, CurvatureReport};
use crate::graph::{DistanceMatrix, Graph, GraphError};
use crate::rational::Rational;

/// Witness lists are cut to this length; the last entry then counts the rest.
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error("graph is not Bonnet-Myers sharp: diameter {diameter}, minimum curvature {kappa_min}")]
    NotSharp { kappa_min: Rational, diameter: u32 },
    #[error("vertex `{0}` is not a pole")]
    NotAPole(String),
    #[error("`{0}` and `{1}` are not a pole pair")]
    NotAPolePair(String, String),
    #[error("graph is regular; regular sharp graphs of diameter 3 are Q3, J(6,3), the 6-demicube and the Gosset graph")]
    Regular,
    #[error("diameter is {0}, expected 3")]
    WrongDiameter(u32),
    #[error("graph contains a triangle on `{0}`, `{1}`, `{2}`")]
    HasTriangle(String, String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

/// Outcome of one check, with human-readable witnesses for each violation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckResult {
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn passed() -> Self {
        Self { pass: true, witnesses: Vec::new() }
    }

    pub(crate) fn from_violations(violations: Vec<String>) -> Self {
        let mut out = Self::passed();
        out.absorb(violations);
        out
    }

    pub(crate) fn absorb(&mut self, violations: Vec<String>) {
        if violations.is_empty() {
            return;
        }
        self.pass = false;
        let mut extra = 0;
        if let Some(last) = self.witnesses.last() {
            if let Some(n) = last.strip_prefix("... ").and_then(|s| s.strip_suffix(" more")) {
                extra = n.parse().unwrap_or(0);
                self.witnesses.pop();
            }
        }
        for v in violations {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(v);
            } else {
                extra += 1;
            }
        }
        if extra > 0 {
            self.witnesses.push(format!("... {extra} more"));
        }
    }

    pub(crate) fn merge(&mut self, other: CheckResult) {
        if !other.pass {
            self.absorb(other.witnesses);
            self.pass = false;
        }
    }
}

/// Neighbour counts of every vertex relative to `f = d(x, ·)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub pole: usize,
    pub entries: Vec<LevelEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelEntry {
    pub level: u32,
    pub up: usize,
    pub flat: usize,
    pub down: usize,
}

impl LevelEntry {
    pub fn degree(&self) -> usize {
        self.up + self.flat + self.down
    }
}

impl LevelProfile {
    pub fn new(g: &Graph, dist: &DistanceMatrix, pole: usize) -> Self {
        let row = dist.row(pole);
        let entries = (0..g.vertex_count())
            .map(|u| {
                let mut e = LevelEntry { level: row[u], up: 0, flat: 0, down: 0 };
                for &v in g.neighbors(u) {
                    match row[v].cmp(&row[u]) {
                        std::cmp::Ordering::Greater => e.up += 1,
                        std::cmp::Ordering::Equal => e.flat += 1,
                        std::cmp::Ordering::Less => e.down += 1,
                    }
                }
                e
            })
            .collect();
        Self { pole, entries }
    }

    /// Vertices at distance `i` from the pole, in index order.
    pub fn level(&self, i: u32) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().enumerate().filter(move |(_, e)| e.level == i).map(|(u, _)| u)
    }
}

/// Verdict plus the results of whichever checks were run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessReport {
    pub diameter: u32,
    pub kappa_min: Rational,
    /// Normalised endpoints of an edge attaining `kappa_min`.
    pub witness_edge: (usize, usize),
    pub sharp: bool,
    /// All pairs `(u, v)`, `u < v`, at distance `diameter`.
    pub poles: Vec<(usize, usize)>,
    pub checks: BTreeMap<String, CheckResult>,
    /// `(r, t)` for irregular sharp graphs of diameter 3.
    pub structure: Option<(usize, usize)>,
}

impl SharpnessReport {
    /// True when sharp and every recorded check passed.
    pub fn strict_pass(&self) -> bool {
        self.sharp && self.checks.values().all(|c| c.pass)
    }
}

/// Cached curvature and distance data for one graph.
pub struct SharpnessAnalysis<'g> {
    g: &'g Graph,
    dist: DistanceMatrix,
    reports: Vec<CurvatureReport>,
    edge_index: HashMap<(usize, usize), usize>,
    diameter: u32,
    poles: Vec<(usize, usize)>,
    kappa_min: Rational,
    witness_edge: (usize, usize),
}

impl<'g> SharpnessAnalysis<'g> {
    pub fn new(g: &'g Graph) -> Result<Self, AnalysisError> {
        let dist = g.distance_matrix()?;
        let reports = all_edge_reports(g)?;
        let edge_index = g.edges().enumerate().map(|(i, e)| (e, i)).collect();
        let (diameter, poles) = dist.diameter();
        let (kappa_min, witness_edge) = reports
            .iter()
            .map(|r| (&r.kappa, r.edge()))
            .min_by(|a, b| a.0.cmp(b.0))
            .map(|(k, e)| (k.clone(), e))
            .expect("connected graphs parsed from edge lists have an edge");
        Ok(Self { g, dist, reports, edge_index, diameter, poles, kappa_min, witness_edge })
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn kappa_min(&self) -> &Rational {
        &self.kappa_min
    }

    pub fn is_sharp(&self) -> bool {
        let product = &self.kappa_min * Rational::from_integer(BigInt::from(self.diameter));
        !self.kappa_min.is_zero() && product == Rational::from_integer(BigInt::from(2))
    }

    /// Vertices of eccentricity `L`, in index order.
    pub fn pole_vertices(&self) -> Vec<usize> {
        (0..self.g.vertex_count()).filter(|&u| self.dist.eccentricity(u) == self.diameter).collect()
    }

    pub fn is_pole(&self, x: usize) -> bool {
        x < self.g.vertex_count() && self.dist.eccentricity(x) == self.diameter
    }

    /// The curvature report of edge `uv`.
    pub fn edge_report(&self, u: usize, v: usize) -> Option<&CurvatureReport> {
        self.edge_index.get(&(u.min(v), u.max(v))).map(|&i| &self.reports[i])
    }

    pub fn edge_reports(&self) -> &[CurvatureReport] {
        &self.reports
    }

    pub fn profile(&self, x: usize) -> LevelProfile {
        LevelProfile::new(self.g, &self.dist, x)
    }

    pub(crate) fn label(&self, v: usize) -> &str {
        self.g.label(v)
    }

    pub(crate) fn require_sharp(&self) -> Result<(), AnalysisError> {
        if self.is_sharp() {
            Ok(())
        } else {
            Err(AnalysisError::NotSharp { kappa_min: self.kappa_min.clone(), diameter: self.diameter })
        }
    }

    pub(crate) fn require_pole(&self, x: usize) -> Result<(), AnalysisError> {
        self.g.check_vertex(x)?;
        if self.is_pole(x) {
            Ok(())
        } else {
            Err(AnalysisError::NotAPole(self.g.label(x).to_owned()))
        }
    }

    pub(crate) fn require_sharp_pole(&self, x: usize) -> Result<(), AnalysisError> {
        self.require_sharp()?;
        self.require_pole(x)
    }

    /// Verdict without structural checks.
    pub fn verdict(&self) -> SharpnessReport {
        SharpnessReport {
            diameter: self.diameter,
            kappa_min: self.kappa_min.clone(),
            witness_edge: self.witness_edge,
            sharp: self.is_sharp(),
            poles: self.poles.clone(),
            checks: BTreeMap::new(),
            structure: None,
        }
    }

    /// Verdict plus, on sharp graphs, every applicable check run from every
    /// pole. Diameter-3 structure is added for irregular graphs and the
    /// triangle-free checks for triangle-free graphs.
    pub fn full_report(&self) -> Result<SharpnessReport, AnalysisError> {
        let mut report = self.verdict();
        if !report.sharp {
            return Ok(report);
        }
        let poles = self.pole_vertices();
        let mut per_pole: BTreeMap<&str, CheckResult> = BTreeMap::new();
        for &x in &poles {
            let partial = [
                ("level_identity", self.level_identity_check(x)?),
                ("ratio", self.ratio_check(x)?),
                ("lichnerowicz", self.lichnerowicz_certificate(x)?),
                ("geodesic_curvature", self.geodesic_curvature_check(x)?),
            ];
            for (name, result) in partial {
                per_pole.entry(name).or_insert_with(CheckResult::passed).merge(result);
            }
        }
        let mut interval = CheckResult::passed();
        for &(x, y) in &self.poles {
            interval.merge(self.interval_fullness(x, y)?);
        }
        report.checks.insert("interval_fullness".into(), interval);
        for (name, result) in per_pole {
            report.checks.insert(name.into(), result);
        }
        for (name, result) in self.pole_necessary_conditions()? {
            report.checks.insert(name, result);
        }

        if self.diameter == 3 && !self.g.is_regular() {
            let s = self.verify_diameter3_structure()?;
            report.checks.insert("diameter3_structure".into(), s.overall());
            report.structure = s.r.zip(s.t);
        }
        if self.g.is_triangle_free() {
            let mut c3 = CheckResult::passed();
            for &x in &poles {
                c3.merge(self.c3free_checks(x)?.overall());
            }
            report.checks.insert("c3_free".into(), c3);

            let l = self.diameter as usize;
            let mut rigidity = CheckResult::passed();
            let mut applicable = false;
            for &x in poles.iter().filter(|&&x| 3 * self.g.degree(x) > 2 * l && l <= 63) {
                applicable = true;
                if let HypercubeLabel::Refuted(why) = self.hypercube_label(x)? {
                    rigidity.absorb(vec![format!("pole {}: {why}", self.label(x))]);
                }
            }
            if applicable {
                report.checks.insert("hypercube_rigidity".into(), rigidity);
            }
        }
        Ok(report)
    }
}

/// Computes all edge curvatures, the diameter, `κ_min` and the pole pairs.
pub fn sharpness_verdict(g: &Graph) -> Result<SharpnessReport, AnalysisError> {
    Ok(SharpnessAnalysis::new(g)?.verdict())
}
