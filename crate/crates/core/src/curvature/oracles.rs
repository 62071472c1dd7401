//! Independent routes to the edge curvature, used to cross-check the main
//! formula.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{require_edge, CurvatureError, LOCAL_RADIUS};
use crate::graph::Graph;
use crate::rational::{lcm, Rational};
use crate::transport::{min_cost_transport, TransportInstance};

/// Largest `|N[x] ∪ N[y]|` accepted by [`lipschitz_curvature`].
pub const MAX_LIPSCHITZ_SUPPORT: usize = 16;

/// Curvature from the `alpha`-lazy random walk transport,
/// `kappa_alpha / (1 - alpha)`. At `alpha = 1/(d+1)` for `d` at least the
/// larger degree this is the Lin-Lu-Yau curvature; at zero it is the
/// Ollivier curvature of the simple walk.
pub fn lazy_lp_curvature(g: &Graph, x: usize, y: usize, alpha: &Rational) -> Result<Rational, CurvatureError> {
    require_edge(g, x, y)?;
    g.require_connected()?;
    let out_of_range = || CurvatureError::AlphaOutOfRange(alpha.clone());
    if alpha.is_negative() || *alpha >= Rational::one() {
        return Err(out_of_range());
    }
    let p = alpha.numer().to_u64().ok_or_else(out_of_range)?;
    let q = alpha.denom().to_u64().ok_or_else(out_of_range)?;
    let (dx, dy) = (g.degree(x) as u64, g.degree(y) as u64);
    let l = lcm(dx, dy);
    let scale = q.checked_mul(l).ok_or_else(out_of_range)?;

    let closed = |v: usize| {
        let mut ball = vec![v];
        ball.extend_from_slice(g.neighbors(v));
        ball
    };
    let masses = |v: usize, ball: &[usize], d: u64| -> Vec<u64> {
        ball.iter().map(|&u| if u == v { p * l } else { (q - p) * (l / d) }).collect()
    };
    let (bx, by) = (closed(x), closed(y));
    let supply = masses(x, &bx, dx);
    let demand = masses(y, &by, dy);
    let cost = bx
        .iter()
        .map(|&u| {
            let d = g.distances_within(u, LOCAL_RADIUS);
            by.iter().map(|&v| u64::from(d.get(v).expect("closed neighbourhoods of an edge are within distance 3"))).collect()
        })
        .collect();
    let inst = TransportInstance::new(supply, demand, cost)?;
    let w = min_cost_transport(&inst)?.cost;
    let one = Rational::one();
    let wasserstein = Rational::new(BigInt::from(w), BigInt::from(scale));
    Ok((&one - wasserstein) / (&one - alpha))
}

/// A maximising 1-Lipschitz function for the dual of the curvature limit,
/// normalised to `f(x) = 0`, `f(y) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzWitness {
    pub x: usize,
    pub y: usize,
    /// Values on `N[x] ∪ N[y]`, in vertex order.
    pub f: Vec<(usize, i64)>,
    /// `Δf(x) - Δf(y)`.
    pub value: Rational,
}

impl LipschitzWitness {
    pub fn at(&self, v: usize) -> Option<i64> {
        self.f.binary_search_by_key(&v, |e| e.0).ok().map(|i| self.f[i].1)
    }

    /// Recomputes `Δf(x) - Δf(y)` from the graph, with the normalised
    /// Laplacian `Δf(v) = mean over N(v) of f(u) - f(v)`.
    pub fn recompute(&self, g: &Graph) -> Option<Rational> {
        let laplacian = |v: usize| -> Option<Rational> {
            let fv = self.at(v)?;
            let mut sum = 0i64;
            for &u in g.neighbors(v) {
                sum += self.at(u)? - fv;
            }
            Some(Rational::new(BigInt::from(sum), BigInt::from(g.degree(v))))
        };
        Some(laplacian(self.x)? - laplacian(self.y)?)
    }

    /// Whether `|f(u) - f(v)| <= d(u, v)` on the whole support.
    pub fn is_lipschitz(&self, g: &Graph) -> bool {
        self.f.iter().all(|&(u, fu)| {
            let d = g.distances_from(u);
            self.f.iter().all(|&(v, fv)| d.get(v).is_some_and(|d| (fu - fv).unsigned_abs() <= u64::from(d)))
        })
    }
}

/// Minimises `Δf(x) - Δf(y)` over integer 1-Lipschitz `f` on `N[x] ∪ N[y]`
/// with `f(x) = 0`, `f(y) = 1`, by branch and bound. Values range over
/// `[-2, 2]`; ties are broken towards the lexicographically smallest `f`.
pub fn lipschitz_curvature(g: &Graph, x: usize, y: usize) -> Result<(Rational, LipschitzWitness), CurvatureError> {
    require_edge(g, x, y)?;
    g.require_connected()?;
    let mut support: Vec<usize> = [x, y].into_iter().chain(g.neighbors(x).iter().copied()).chain(g.neighbors(y).iter().copied()).collect();
    support.sort_unstable();
    support.dedup();
    if support.len() > MAX_LIPSCHITZ_SUPPORT {
        return Err(CurvatureError::SupportTooLarge { size: support.len(), limit: MAX_LIPSCHITZ_SUPPORT });
    }
    let n = support.len();
    let dist: Vec<Vec<i64>> = support
        .iter()
        .map(|&u| {
            let d = g.distances_within(u, LOCAL_RADIUS);
            support.iter().map(|&v| i64::from(d.get(v).expect("support lies within distance 3"))).collect()
        })
        .collect();

    let (dx, dy) = (g.degree(x) as u64, g.degree(y) as u64);
    let l = lcm(dx, dy) as i64;
    let (cx, cy) = (l / dx as i64, l / dy as i64);
    // Scaled objective: l * (Δf(x) - Δf(y)) = l + Σ coef(u) f(u).
    let coef: Vec<i64> = support
        .iter()
        .map(|&u| if g.has_edge(u, x) { cx } else { 0 } - if g.has_edge(u, y) { cy } else { 0 })
        .collect();
    let (ix, iy) = (support.binary_search(&x).unwrap(), support.binary_search(&y).unwrap());

    let mut state = Search {
        dist: &dist,
        coef: &coef,
        free: (0..n).filter(|&i| i != ix && i != iy).collect(),
        fixed: vec![ix, iy],
        values: vec![0; n],
        ranges: Vec::new(),
        suffix_bound: Vec::new(),
        best: i64::MAX,
        best_values: Vec::new(),
    };
    state.values[iy] = 1;
    state.ranges = state
        .free
        .iter()
        .map(|&i| ((-dist[i][ix]).max(1 - dist[i][iy]).max(-2), dist[i][ix].min(1 + dist[i][iy]).min(2)))
        .collect();
    let mut suffix = vec![0i64; state.free.len() + 1];
    for k in (0..state.free.len()).rev() {
        let (lo, hi) = state.ranges[k];
        let c = coef[state.free[k]];
        suffix[k] = suffix[k + 1] + (c * lo).min(c * hi);
    }
    state.suffix_bound = suffix;
    let base = l + coef[iy];
    state.descend(0, base);

    let value = Rational::new(BigInt::from(state.best), BigInt::from(l));
    let witness = LipschitzWitness {
        x,
        y,
        f: support.iter().copied().zip(state.best_values.iter().copied()).collect(),
        value: value.clone(),
    };
    Ok((value, witness))
}

struct Search<'a> {
    dist: &'a [Vec<i64>],
    coef: &'a [i64],
    free: Vec<usize>,
    /// Support indices assigned so far, in assignment order.
    fixed: Vec<usize>,
    values: Vec<i64>,
    ranges: Vec<(i64, i64)>,
    suffix_bound: Vec<i64>,
    best: i64,
    best_values: Vec<i64>,
}

impl Search<'_> {
    fn descend(&mut self, k: usize, partial: i64) {
        if partial + self.suffix_bound[k] >= self.best {
            return;
        }
        if k == self.free.len() {
            self.best = partial;
            self.best_values = self.values.clone();
            return;
        }
        let u = self.free[k];
        let (lo, hi) = self.ranges[k];
        for val in lo..=hi {
            let feasible = self.fixed.iter().all(|&w| (val - self.values[w]).abs() <= self.dist[u][w]);
            if !feasible {
                continue;
            }
            self.values[u] = val;
            self.fixed.push(u);
            self.descend(k + 1, partial + self.coef[u] * val);
            self.fixed.pop();
        }
        self.values[u] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, figure1, hypercube, johnson, path};
    use crate::rational::{int, ratio};

    fn vertex(g: &Graph, label: &str) -> usize {
        g.index_of(label).unwrap()
    }

    #[test]
    fn lazy_walk_matches_known_values() {
        let g = figure1();
        let (x, y) = (vertex(&g, "x"), vertex(&g, "y"));
        let d = g.degree(y) as i64;
        assert_eq!(lazy_lp_curvature(&g, x, y, &ratio(1, d + 1)).unwrap(), ratio(1, 12));
        let q3 = hypercube(3).unwrap();
        assert_eq!(lazy_lp_curvature(&q3, 0, 1, &ratio(1, 4)).unwrap(), ratio(2, 3));
        assert_eq!(lazy_lp_curvature(&complete(2).unwrap(), 0, 1, &ratio(1, 2)).unwrap(), int(2));
    }

    #[test]
    fn ollivier_at_zero_idleness() {
        // Simple walk on Q3: one unit of three must cross a 4-cycle.
        let q3 = hypercube(3).unwrap();
        assert_eq!(lazy_lp_curvature(&q3, 0, 1, &int(0)).unwrap(), int(0));
        let k4 = complete(4).unwrap();
        assert_eq!(lazy_lp_curvature(&k4, 0, 1, &int(0)).unwrap(), ratio(2, 3));
    }

    #[test]
    fn alpha_range() {
        let p = path(2).unwrap();
        assert!(matches!(lazy_lp_curvature(&p, 0, 1, &int(1)), Err(CurvatureError::AlphaOutOfRange(_))));
        assert!(matches!(lazy_lp_curvature(&p, 0, 1, &ratio(-1, 3)), Err(CurvatureError::AlphaOutOfRange(_))));
    }

    #[test]
    fn lipschitz_values() {
        let g = figure1();
        let (x, y) = (vertex(&g, "x"), vertex(&g, "y"));
        let (k, w) = lipschitz_curvature(&g, x, y).unwrap();
        assert_eq!(k, ratio(1, 12));
        assert_eq!(w.recompute(&g), Some(ratio(1, 12)));
        assert!(w.is_lipschitz(&g));
        assert_eq!((w.at(x), w.at(y)), (Some(0), Some(1)));

        assert_eq!(lipschitz_curvature(&complete(2).unwrap(), 0, 1).unwrap().0, int(2));
        assert_eq!(lipschitz_curvature(&cycle(5).unwrap(), 0, 1).unwrap().0, ratio(1, 2));
        assert_eq!(lipschitz_curvature(&hypercube(3).unwrap(), 0, 1).unwrap().0, ratio(2, 3));
        assert_eq!(lipschitz_curvature(&johnson(6, 3).unwrap(), 0, 1).unwrap().0, ratio(2, 3));
    }

    #[test]
    fn lipschitz_orientation_is_by_argument() {
        let g = figure1();
        let (x, y) = (vertex(&g, "x"), vertex(&g, "y"));
        let (k, w) = lipschitz_curvature(&g, y, x).unwrap();
        assert_eq!(k, ratio(1, 12));
        assert_eq!((w.x, w.y), (y, x));
        assert_eq!(w.at(y), Some(0));
    }

    #[test]
    fn lipschitz_support_limit() {
        let k = complete(17).unwrap();
        assert_eq!(
            lipschitz_curvature(&k, 0, 1).map(|r| r.0),
            Err(CurvatureError::SupportTooLarge { size: 17, limit: 16 })
        );
    }
}
