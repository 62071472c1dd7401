//! Named graph families.
//!
//! Vertex order is lexicographic in each family's natural encoding
//! (bitstrings, sorted subsets) so generated graphs are reproducible.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_edge_list, Graph, GraphError};

fn invalid(family: &str, reason: impl Into<String>) -> GraphError {
    GraphError::InvalidParams { family: family.to_string(), reason: reason.into() }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path", "need at least one vertex"));
    }
    Graph::from_edges(numbered(n), (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle", "need at least three vertices"));
    }
    Graph::from_edges(numbered(n), (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete", "need at least one vertex"));
    }
    Graph::from_edges(numbered(n), (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

fn complete_without(n: usize, removed: &[(usize, usize)]) -> Result<Graph, GraphError> {
    let gone = |u: usize, v: usize| removed.iter().any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
    Graph::from_edges(
        numbered(n),
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !gone(u, v)),
    )
}

/// `K_m` with the matching `{0-1, 2-3, …}` of `k` edges removed.
pub fn complete_minus_matching(m: usize, k: usize) -> Result<Graph, GraphError> {
    if m == 0 || 2 * k > m {
        return Err(invalid("complete-minus-matching", format!("cannot remove {k} disjoint edges from K_{m}")));
    }
    let removed: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
    complete_without(m, &removed)
}

/// `K_m` with the path `0-1-…-len` removed.
pub fn complete_minus_path(m: usize, len: usize) -> Result<Graph, GraphError> {
    if m == 0 || len >= m {
        return Err(invalid("complete-minus-path", format!("path of {len} edges does not fit in K_{m}")));
    }
    let removed: Vec<_> = (0..len).map(|i| (i, i + 1)).collect();
    complete_without(m, &removed)
}

fn bitstring(value: usize, width: usize) -> String {
    (0..width).rev().map(|b| if value >> b & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn hypercube(n: usize) -> Result<Graph, GraphError> {
    if n == 0 || n > 20 {
        return Err(invalid("hypercube", "dimension must be in 1..=20"));
    }
    let count = 1usize << n;
    let labels = (0..count).map(|v| bitstring(v, n)).collect();
    Graph::from_edges(
        labels,
        (0..count).flat_map(|v| (0..n).map(move |b| (v, v ^ (1 << b)))).filter(|&(u, v)| u < v),
    )
}

/// `CP(n)`: `K_{2n}` minus the perfect matching `{2i, 2i+1}`.
pub fn cocktail_party(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("cocktail", "need n >= 1"));
    }
    complete_minus_matching(2 * n, n)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn subset_label(set: &[usize]) -> String {
    set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|e| b.contains(e)).count()
}

/// Johnson graph `J(n, k)`: `k`-subsets of `{0..n}`, adjacent when they
/// share `k - 1` elements.
pub fn johnson(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || k >= n || n > 16 {
        return Err(invalid("johnson", "need n > k >= 1 and n <= 16"));
    }
    let sets = subsets(n, k);
    let labels = sets.iter().map(|s| subset_label(s)).collect();
    let mut edges = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if intersection_size(a, b) == k - 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(labels, edges)
}

/// Half-cube: even-weight bitstrings of length `n`, adjacent at Hamming
/// distance two.
pub fn demicube(n: usize) -> Result<Graph, GraphError> {
    if !(2..=20).contains(&n) {
        return Err(invalid("demicube", "dimension must be in 2..=20"));
    }
    let verts: Vec<usize> = (0..1usize << n).filter(|v| v.count_ones() % 2 == 0).collect();
    let labels = verts.iter().map(|&v| bitstring(v, n)).collect();
    let mut edges = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            if (a ^ b).count_ones() == 2 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(labels, edges)
}

/// Gosset graph as two copies of the 2-subsets of `{0..8}`: within a copy
/// pairs are adjacent when they intersect, across copies when disjoint.
pub fn gosset() -> Result<Graph, GraphError> {
    let pairs = subsets(8, 2);
    let m = pairs.len();
    let labels = ["a", "b"]
        .iter()
        .flat_map(|copy| pairs.iter().map(move |p| format!("{copy}:{}", subset_label(p))))
        .collect();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let meet = intersection_size(&pairs[i], &pairs[j]);
            if i < j && meet == 1 {
                edges.push((i, j));
                edges.push((m + i, m + j));
            }
            if meet == 0 {
                edges.push((i, m + j));
            }
        }
    }
    Graph::from_edges(labels, edges)
}

/// Cartesian (box) product; vertex `(a, b)` has index `a * |g2| + b`.
pub fn cartesian(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let labels = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| format!("[{}|{}]", g1.label(a), g2.label(b)))
        .collect();
    let mut edges = Vec::new();
    for a in 0..n1 {
        for (b, c) in g2.edges() {
            edges.push((a * n2 + b, a * n2 + c));
        }
    }
    for (a, c) in g1.edges() {
        for b in 0..n2 {
            edges.push((a * n2 + b, c * n2 + b));
        }
    }
    Graph::from_edges(labels, edges)
}

/// `G(n, p)` drawn from a ChaCha stream seeded with `seed`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(invalid("random", "need n >= 1 and 0 <= p <= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(numbered(n), edges)
}

/// The six-vertex edge with `d_x = 3`, `d_y = 4` whose optimal transport
/// costs 14: `x` sees `y, z, x1`; `y` sees `x, z, y1, y2`; `z` sees `y1`.
pub fn figure1() -> Graph {
    parse_edge_list("x y\nx x1\nx z\ny z\ny y1\ny y2\nz y1").expect("fixture is well formed")
}

/// Irregular diameter-3 graph with poles `x`, `y` and middle layers
/// `u_0..u_{m-1}`, `v_0..v_{m-1}`, `m = 2r + t`.
///
/// `u_i ~ v_j` iff `j - i (mod m)` lies in `0..=r+1`. The layers induce
/// `K_m` for `t = 1` and `K_m` minus `{u_i u_{i+r+1} : i <= r}` for `t = 2`.
pub fn generate_irregular_sharp(r: usize, t: usize) -> Result<Graph, GraphError> {
    if r == 0 || !(1..=2).contains(&t) {
        return Err(invalid("irregular-sharp", "need r >= 1 and t in {1, 2}"));
    }
    let m = 2 * r + t;
    let x = 0;
    let u = |i: usize| 1 + i % m;
    let v = |j: usize| 1 + m + j % m;
    let y = 1 + 2 * m;
    let mut labels = vec!["x".to_string()];
    labels.extend((0..m).map(|i| format!("u{i}")));
    labels.extend((0..m).map(|j| format!("v{j}")));
    labels.push("y".to_string());

    let removed = |a: usize, b: usize| t == 2 && (a + r + 1 == b || b + r + 1 == a);
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((x, u(i)));
        edges.push((y, v(i)));
        for k in 0..=r + 1 {
            edges.push((u(i), v(i + k)));
        }
        for j in i + 1..m {
            if !removed(i, j) {
                edges.push((u(i), u(j)));
                edges.push((v(i), v(j)));
            }
        }
    }
    Graph::from_edges(labels, edges)
}

/// A family name with integer parameters, e.g. `johnson:6,3`. Products are
/// written with `*`, e.g. `hypercube:2*cocktail:3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Family { name: String, params: Vec<u64> },
    Product(Vec<FamilySpec>),
}

impl FamilySpec {
    pub fn new(name: &str, params: &[u64]) -> Self {
        FamilySpec::Family { name: name.to_string(), params: params.to_vec() }
    }

    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            FamilySpec::Family { name, params } => generate(name, params),
            FamilySpec::Product(factors) => {
                let mut iter = factors.iter();
                let first = iter.next().ok_or_else(|| invalid("product", "no factors"))?;
                iter.try_fold(first.build()?, |acc, f| cartesian(&acc, &f.build()?))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('*') {
            let factors = s.split('*').map(str::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(FamilySpec::Product(factors));
        }
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<u64>().map_err(|_| invalid(name, format!("`{p}` is not an integer"))))
            .collect::<Result<_, _>>()?;
        Ok(FamilySpec::Family { name: name.to_string(), params })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Family { name, params } if params.is_empty() => write!(f, "{name}"),
            FamilySpec::Family { name, params } => {
                let ps: Vec<String> = params.iter().map(u64::to_string).collect();
                write!(f, "{name}:{}", ps.join(","))
            }
            FamilySpec::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// Builds a named family. Random graphs take `n`, an edge probability in
/// percent and a seed.
pub fn generate(family: &str, params: &[u64]) -> Result<Graph, GraphError> {
    let arity = |k: usize| -> Result<Vec<usize>, GraphError> {
        if params.len() != k {
            return Err(invalid(family, format!("expected {k} parameter(s), got {}", params.len())));
        }
        params
            .iter()
            .map(|&p| usize::try_from(p).map_err(|_| invalid(family, "parameter too large")))
            .collect()
    };
    match family {
        "path" => path(arity(1)?[0]),
        "cycle" => cycle(arity(1)?[0]),
        "complete" => complete(arity(1)?[0]),
        "complete-minus-matching" => {
            let p = arity(2)?;
            complete_minus_matching(p[0], p[1])
        }
        "complete-minus-path" => {
            let p = arity(2)?;
            complete_minus_path(p[0], p[1])
        }
        "hypercube" => hypercube(arity(1)?[0]),
        "cocktail" => cocktail_party(arity(1)?[0]),
        "johnson" => {
            let p = arity(2)?;
            johnson(p[0], p[1])
        }
        "demicube" => demicube(arity(1)?[0]),
        "gosset" => {
            arity(0)?;
            gosset()
        }
        "irregular-sharp" => {
            let p = arity(2)?;
            generate_irregular_sharp(p[0], p[1])
        }
        "figure1" => {
            arity(0)?;
            Ok(figure1())
        }
        "random" => {
            let p = arity(3)?;
            if p[1] > 100 {
                return Err(invalid(family, "edge probability is a percentage in 0..=100"));
            }
            erdos_renyi(p[0], p[1] as f64 / 100.0, params[2])
        }
        other => Err(GraphError::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn hypercube_counts() {
        let g = hypercube(3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!(g.is_regular());
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.label(5), "101");
    }

    #[test]
    fn johnson_counts() {
        let g = johnson(6, 3).unwrap();
        assert_eq!(g.vertex_count(), 20);
        assert!(g.is_regular());
        assert_eq!(g.degree(0), 9);
        assert_eq!(g.diameter().unwrap().0, 3);
        assert_eq!(g.label(0), "0,1,2");
    }

    #[test]
    fn gosset_counts() {
        let g = gosset().unwrap();
        assert_eq!(g.vertex_count(), 56);
        assert!(g.is_regular());
        assert_eq!(g.degree(0), 27);
        assert_eq!(g.diameter().unwrap().0, 3);
        // intersection numbers of the Gosset graph: a1 = 16, c2 = 10
        let (u, v) = g.edges().next().unwrap();
        assert_eq!(g.common_neighbors(u, v).len(), 16);
        let far = (0..56).find(|&w| w != 0 && !g.has_edge(0, w) && g.distances_from(0).get(w) == Some(2));
        assert_eq!(g.common_neighbors(0, far.unwrap()).len(), 10);
    }

    #[test]
    fn demicube_and_cocktail() {
        let d6 = demicube(6).unwrap();
        assert_eq!(d6.vertex_count(), 32);
        assert_eq!(d6.degree(0), 15);
        assert_eq!(d6.diameter().unwrap().0, 3);
        let cp = cocktail_party(3).unwrap();
        assert_eq!(cp.vertex_count(), 6);
        assert!(cp.is_regular());
        assert_eq!(cp.degree(0), 4);
        assert_eq!(cp.diameter().unwrap().0, 2);
    }

    #[test]
    fn irregular_sharp_degrees() {
        let g = generate_irregular_sharp(1, 1).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(degrees(&g), vec![3, 3, 6, 6, 6, 6, 6, 6]);
        let g = generate_irregular_sharp(2, 2).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.degree(g.index_of("x").unwrap()), 6);
        assert_eq!(g.degree(g.index_of("u0").unwrap()), 9);
        assert!(generate_irregular_sharp(1, 3).is_err());
        assert!(generate_irregular_sharp(0, 1).is_err());
    }

    #[test]
    fn irregular_sharp_degree_multiset() {
        for r in 1..=5 {
            for t in 1..=2 {
                let g = generate_irregular_sharp(r, t).unwrap();
                let m = 2 * r + t;
                assert_eq!(g.vertex_count(), 2 + 2 * m);
                let mut expected = vec![m, m];
                expected.extend(std::iter::repeat_n(3 * (r + 1), 2 * m));
                expected.sort_unstable();
                assert_eq!(degrees(&g), expected, "r={r} t={t}");
                assert_eq!(g.diameter().unwrap().0, 3);
            }
        }
    }

    #[test]
    fn cartesian_adds_diameters() {
        let g = cartesian(&hypercube(2).unwrap(), &cocktail_party(3).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.diameter().unwrap().0, 4);
        let p = cartesian(&path(3).unwrap(), &cycle(5).unwrap()).unwrap();
        assert_eq!(p.diameter().unwrap().0, 4);
    }

    #[test]
    fn matching_removal() {
        let g = complete_minus_matching(6, 2).unwrap();
        assert_eq!(g.edge_count(), 15 - 2);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3) && g.has_edge(4, 5));
        assert!(complete_minus_matching(4, 3).is_err());
        let g = complete_minus_path(5, 2).unwrap();
        assert_eq!(g.edge_count(), 8);
    }

    #[test]
    fn random_is_seeded() {
        let a = erdos_renyi(10, 0.5, 7).unwrap();
        let b = erdos_renyi(10, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(erdos_renyi(6, 1.0, 1).unwrap().edge_count(), 15);
    }

    #[test]
    fn family_specs() {
        let spec: FamilySpec = "johnson:6,3".parse().unwrap();
        assert_eq!(spec, FamilySpec::new("johnson", &[6, 3]));
        assert_eq!(spec.to_string(), "johnson:6,3");
        assert_eq!(spec.build().unwrap().vertex_count(), 20);
        let prod: FamilySpec = "hypercube:2*cocktail:3".parse().unwrap();
        assert_eq!(prod.build().unwrap().vertex_count(), 24);
        assert_eq!("gosset".parse::<FamilySpec>().unwrap().to_string(), "gosset");
        assert!(matches!(generate("nope", &[]), Err(GraphError::UnknownFamily(_))));
        assert!(generate("hypercube", &[]).is_err());
    }
}
