//! Simple undirected graphs with labelled vertices and the shortest-path
//! metric.
//!
//! A [`Graph`] is immutable once built. Vertices are dense indices
//! `0..vertex_count()`; each carries a display label used by the edge-list
//! format and by reports.

mod generators;

pub use generators::{
    cartesian, cocktail_party, complete, complete_minus_matching, complete_minus_path, cycle,
    demicube, erdos_renyi, figure1, generate, generate_irregular_sharp, gosset, hypercube,
    johnson, path, FamilySpec,
};

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

/// Errors raised while building, parsing or querying graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: self-loop on vertex `{vertex}`")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge `{u}`-`{v}`")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("edge `{u}`-`{v}` given twice")]
    RepeatedEdge { u: String, v: String },
    #[error("line {line}: expected two vertex tokens, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("edge list is empty")]
    Empty,
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },
}

/// An immutable simple undirected graph.
///
/// Adjacency lists are sorted and free of duplicates and self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from labels and an edge list over label indices.
    pub fn from_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(GraphError::DuplicateLabel(label.clone()));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (line, (u, v)) in edges.into_iter().enumerate() {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop { line: line + 1, vertex: labels[u].clone() });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::RepeatedEdge {
                    u: labels[u].clone(),
                    v: labels[w[0]].clone(),
                });
            }
        }
        Ok(Self { labels, adjacency })
    }

    /// Builds a graph on `0..n` labelled by decimal indices.
    pub fn from_index_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted open neighbourhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Sorted common neighbourhood `N(u) ∩ N(v)`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> bool {
        self.adjacency.windows(2).all(|w| w[0].len() == w[1].len())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> DistanceMap {
        self.distances_within(source, u32::MAX)
    }

    /// Breadth-first distances from `source`, exploring no further than
    /// `max_depth`; vertices beyond the horizon are reported unreachable.
    pub fn distances_within(&self, source: usize, max_depth: u32) -> DistanceMap {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            if du >= max_depth {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        DistanceMap { source, dist }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.distances_from(0).all_reachable()
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// All-pairs shortest-path distances.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix, GraphError> {
        let n = self.vertex_count();
        let mut rows = Vec::with_capacity(n);
        for s in 0..n {
            let map = self.distances_from(s);
            let row: Option<Vec<u32>> = map.dist.into_iter().collect();
            rows.push(row.ok_or(GraphError::Disconnected)?);
        }
        Ok(DistanceMatrix { rows })
    }

    /// Diameter together with every unordered pair `(u, v)`, `u < v`,
    /// realising it.
    pub fn diameter(&self) -> Result<(u32, Vec<(usize, usize)>), GraphError> {
        Ok(self.distance_matrix()?.diameter())
    }

    /// Vertices lying on some geodesic between `x` and `y`, in index order.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        let from_x = self.distances_from(x);
        let from_y = self.distances_from(y);
        let Some(dxy) = from_x.get(y) else {
            return Vec::new();
        };
        (0..self.vertex_count())
            .filter(|&w| match (from_x.get(w), from_y.get(w)) {
                (Some(a), Some(b)) => a + b == dxy,
                _ => false,
            })
            .collect()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|(u, v)| self.common_neighbors(u, v).is_empty())
    }

    /// Relabels vertex `v` to position `perm[v]`, keeping labels attached to
    /// their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let n = self.vertex_count();
        let mut labels = vec![String::new(); n];
        for (v, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(GraphError::VertexOutOfRange(p));
            }
            labels[p] = self.labels[v].clone();
        }
        Self::from_edges(labels, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Renders the graph in edge-list format, one edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[v]);
        }
        out
    }
}

/// Parses the edge-list format: one `u v` pair per line, `#` starts a
/// comment, blank lines are ignored. Vertices are numbered in order of first
/// appearance.
pub fn parse_edge_list<'a>(text: &'a str) -> Result<Graph, GraphError> {
    let mut index: HashMap<&'a str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() != 2 {
            return Err(GraphError::MalformedLine { line: lineno + 1, found: tokens.len() });
        }
        let (a, b) = (tokens[0], tokens[1]);
        if a == b {
            return Err(GraphError::SelfLoop { line: lineno + 1, vertex: a.to_string() });
        }
        let mut intern = |tok: &'a str| -> usize {
            *index.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let (u, v) = (intern(a), intern(b));
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge {
                line: lineno + 1,
                u: a.to_string(),
                v: b.to_string(),
            });
        }
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(GraphError::Empty);
    }
    Graph::from_edges(labels, edges)
}

/// Distances from one source vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    pub source: usize,
    dist: Vec<Option<u32>>,
}

impl DistanceMap {
    /// Distance to `v`, or `None` when unreachable.
    pub fn get(&self, v: usize) -> Option<u32> {
        self.dist[v]
    }

    pub fn all_reachable(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    pub fn eccentricity(&self) -> Option<u32> {
        self.dist.iter().copied().try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }
}

/// All-pairs distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    rows: Vec<Vec<u32>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.rows[u][v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.rows[u]
    }

    pub fn eccentricity(&self, u: usize) -> u32 {
        self.rows[u].iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> (u32, Vec<(usize, usize)>) {
        let l = (0..self.rows.len()).map(|u| self.eccentricity(u)).max().unwrap_or(0);
        let mut pairs = Vec::new();
        for (u, row) in self.rows.iter().enumerate() {
            for (v, &d) in row.iter().enumerate().skip(u + 1) {
                if d == l {
                    pairs.push((u, v));
                }
            }
        }
        (l, pairs)
    }
}
