//! Test-side oracles and corpora shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;

use curv_core::graph::{cocktail_party, complete, cycle, erdos_renyi, figure1, hypercube, johnson, path};
use curv_core::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exhaustive minimum over every integer coupling, memoised on the row and
/// the remaining column capacities.
pub fn brute_force_cost(supply: &[u64], demand: &[u64], cost: &[Vec<u64>]) -> u64 {
    fn fill(
        row: usize,
        col: usize,
        left: u64,
        remaining: &mut Vec<u64>,
        supply: &[u64],
        cost: &[Vec<u64>],
        memo: &mut HashMap<(usize, usize, u64, Vec<u64>), u64>,
    ) -> u64 {
        if row == supply.len() {
            return if remaining.iter().all(|&r| r == 0) { 0 } else { u64::MAX };
        }
        if col == remaining.len() {
            return if left == 0 {
                fill(row + 1, 0, supply.get(row + 1).copied().unwrap_or(0), remaining, supply, cost, memo)
            } else {
                u64::MAX
            };
        }
        let key = (row, col, left, remaining.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut best = u64::MAX;
        for amount in 0..=left.min(remaining[col]) {
            remaining[col] -= amount;
            let rest = fill(row, col + 1, left - amount, remaining, supply, cost, memo);
            remaining[col] += amount;
            if rest != u64::MAX {
                best = best.min(rest + amount * cost[row][col]);
            }
        }
        memo.insert(key, best);
        best
    }
    let mut remaining = demand.to_vec();
    let first = supply.first().copied().unwrap_or(0);
    fill(0, 0, first, &mut remaining, supply, cost, &mut HashMap::new())
}

/// Connected Erdős–Rényi graph: retries with fresh seeds until connected.
pub fn connected_random(n: usize, p: f64, seed: u64) -> Graph {
    let mut s = seed;
    loop {
        let g = erdos_renyi(n, p, s).expect("valid parameters");
        if g.edge_count() > 0 && g.is_connected() {
            return g;
        }
        s = s.wrapping_add(1_000_003);
    }
}

/// 100 seeded connected graphs with 3..=10 vertices and edge probability
/// cycling through 0.3, 0.5, 0.7.
pub fn random_corpus() -> Vec<(String, Graph)> {
    let probs = [0.3, 0.5, 0.7];
    (0..100u64)
        .map(|k| {
            let n = 3 + (k % 8) as usize;
            let p = probs[(k % 3) as usize];
            (format!("random(n={n}, p={p}, seed={k})"), connected_random(n, p, k))
        })
        .collect()
}

/// Named small graphs: Q2-Q4, C3-C8, K2-K6, P2-P6, CP(3)-CP(4), J(6,3) and
/// the six-vertex Figure-1 fixture.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.push((format!("Q{n}"), hypercube(n).unwrap()));
    }
    for n in 3..=8 {
        out.push((format!("C{n}"), cycle(n).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("K{n}"), complete(n).unwrap()));
    }
    for n in 2..=6 {
        out.push((format!("P{n}"), path(n).unwrap()));
    }
    for n in 3..=4 {
        out.push((format!("CP({n})"), cocktail_party(n).unwrap()));
    }
    out.push(("J(6,3)".into(), johnson(6, 3).unwrap()));
    out.push(("figure1".into(), figure1()));
    out
}

pub fn full_corpus() -> Vec<(String, Graph)> {
    let mut out = named_corpus();
    out.extend(random_corpus());
    out
}

/// Relabels vertices by a seeded random permutation with plain numeric
/// labels, so nothing about the original labelling survives.
pub fn scrambled(g: &Graph, seed: u64) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let h = Graph::from_index_edges(g.vertex_count(), g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
    (h, perm)
}

/// True when `labels` (subsets of `1..=l`) is a bijection onto all subsets
/// and adjacency coincides with symmetric difference one, both ways.
pub fn is_cube_isomorphism(g: &Graph, labels: &[Vec<usize>], l: usize) -> bool {
    if labels.len() != g.vertex_count() || g.vertex_count() != 1 << l {
        return false;
    }
    let masks: Option<Vec<u64>> = labels
        .iter()
        .map(|s| s.iter().try_fold(0u64, |m, &c| (1..=l).contains(&c).then(|| m | 1 << (c - 1))))
        .collect();
    let Some(masks) = masks else { return false };
    let mut owner = HashMap::new();
    for (v, &m) in masks.iter().enumerate() {
        if owner.insert(m, v).is_some() {
            return false;
        }
    }
    for u in 0..g.vertex_count() {
        for v in 0..g.vertex_count() {
            if u != v && g.has_edge(u, v) != ((masks[u] ^ masks[v]).count_ones() == 1) {
                return false;
            }
        }
    }
    true
}
