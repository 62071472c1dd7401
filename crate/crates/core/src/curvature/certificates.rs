//! Optimality certificates: complementary slackness between a coupling and a
//! Lipschitz witness, and the signed star coupling that realises the
//! curvature as a single transport value.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BlowupInstance, CurvatureError, LipschitzWitness};
use crate::graph::Graph;
use crate::rational::{ratio, Rational};
use crate::transport::IntegerCoupling;

/// True when every positive entry `sigma(u, v)` is tight for `f`, that is
/// `f(v) - f(u) = d(u, v)`. A witness oriented from `y` to `x` is flipped to
/// `1 - f` first.
pub fn slackness_check(inst: &BlowupInstance, sigma: &IntegerCoupling, f: &LipschitzWitness) -> bool {
    let flip = match (f.x, f.y) {
        (a, b) if (a, b) == (inst.x, inst.y) => false,
        (a, b) if (a, b) == (inst.y, inst.x) => true,
        _ => return false,
    };
    if !sigma.is_coupling_for(&inst.transport) {
        return false;
    }
    let value = |v: usize| f.at(v).map(|fv| if flip { 1 - fv } else { fv });
    sigma.entries().all(|(i, j, _)| {
        let (u, v) = (inst.sources[i], inst.sinks[j]);
        match (value(u), value(v)) {
            (Some(fu), Some(fv)) => fv - fu == inst.transport.cost(i, j) as i64,
            _ => false,
        }
    })
}

/// A signed plan `B` on `V × V` with a single positive entry at `(x, y)`,
/// row sums `-m_x(u)` off `x`, column sums `-m_y(v)` off `y` and total zero,
/// where `m_v` is uniform on `N(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCoupling {
    pub x: usize,
    pub y: usize,
    pub entries: BTreeMap<(usize, usize), Rational>,
}

impl StarCoupling {
    fn fail(condition: u8, detail: String) -> CurvatureError {
        CurvatureError::StarCondition { condition, detail }
    }

    /// Checks the four defining conditions against the neighbourhoods of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), CurvatureError> {
        let (x, y) = (self.x, self.y);
        for (&(u, v), b) in &self.entries {
            let positive_ok = if (u, v) == (x, y) { *b > Rational::zero() } else { *b <= Rational::zero() };
            if !positive_ok {
                return Err(Self::fail(1, format!("entry ({u}, {v}) = {b}")));
            }
        }
        if !self.entries.contains_key(&(x, y)) {
            return Err(Self::fail(1, format!("no entry at ({x}, {y})")));
        }
        let total: Rational = self.entries.values().sum();
        if !total.is_zero() {
            return Err(Self::fail(2, format!("total mass {total}")));
        }

        let mut rows: BTreeMap<usize, Rational> = g.neighbors(x).iter().map(|&u| (u, Rational::zero())).collect();
        let mut cols: BTreeMap<usize, Rational> = g.neighbors(y).iter().map(|&v| (v, Rational::zero())).collect();
        for (&(u, v), b) in &self.entries {
            *rows.entry(u).or_insert_with(Rational::zero) += b;
            *cols.entry(v).or_insert_with(Rational::zero) += b;
        }
        let uniform = |centre: usize, v: usize| {
            if g.has_edge(centre, v) {
                ratio(1, g.degree(centre) as i64)
            } else {
                Rational::zero()
            }
        };
        for (&u, sum) in rows.iter().filter(|(&u, _)| u != x) {
            if *sum != -uniform(x, u) {
                return Err(Self::fail(3, format!("row {u} sums to {sum}")));
            }
        }
        for (&v, sum) in cols.iter().filter(|(&v, _)| v != y) {
            if *sum != -uniform(y, v) {
                return Err(Self::fail(4, format!("column {v} sums to {sum}")));
            }
        }
        Ok(())
    }

    /// `Σ B(u, v) d(u, v)`.
    pub fn value(&self, g: &Graph) -> Rational {
        let mut rows: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(u, v), b) in &self.entries {
            rows.entry(u).or_default().push((v, b));
        }
        let mut total = Rational::zero();
        for (u, row) in rows {
            let d = g.distances_from(u);
            for (v, b) in row {
                let duv = d.get(v).expect("star coupling entries lie in one component");
                total += b * Rational::from_integer(BigInt::from(duv));
            }
        }
        total
    }
}

/// Builds the star coupling of an optimal plan: `1 + 1/d_y` at `(x, y)`,
/// `-1/d_y` on the diagonal of `N[x] ∩ N[y]`, and `-sigma/lcm` elsewhere.
/// The result is validated against `g` before it is returned.
pub fn star_coupling_of(g: &Graph, inst: &BlowupInstance, sigma: &IntegerCoupling) -> Result<StarCoupling, CurvatureError> {
    if !sigma.is_coupling_for(&inst.transport) {
        return Err(CurvatureError::MalformedCoupling);
    }
    let (x, y) = (inst.x, inst.y);
    let dy = inst.dy as i64;
    let mut entries = BTreeMap::new();
    entries.insert((x, y), Rational::one() + ratio(1, dy));
    for u in [x, y].into_iter().chain(inst.common.iter().copied()) {
        *entries.entry((u, u)).or_insert_with(Rational::zero) -= ratio(1, dy);
    }
    for (i, j, f) in sigma.entries() {
        let key = (inst.sources[i], inst.sinks[j]);
        *entries.entry(key).or_insert_with(Rational::zero) -= ratio(f as i64, inst.lcm as i64);
    }
    let star = StarCoupling { x, y, entries };
    star.validate(g)?;
    Ok(star)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{edge_curvature, lipschitz_curvature};
    use crate::graph::{complete, cycle, figure1, hypercube};

    #[test]
    fn figure1_certificates() {
        let g = figure1();
        let (x, y) = (g.index_of("x").unwrap(), g.index_of("y").unwrap());
        let report = edge_curvature(&g, x, y).unwrap();
        let (_, w) = lipschitz_curvature(&g, x, y).unwrap();
        assert!(slackness_check(&report.instance, &report.coupling, &w));
        let (_, w_rev) = lipschitz_curvature(&g, y, x).unwrap();
        assert!(slackness_check(&report.instance, &report.coupling, &w_rev));

        let star = star_coupling_of(&g, &report.instance, &report.coupling).unwrap();
        assert_eq!(star.entries[&(x, y)], ratio(5, 4));
        assert_eq!(star.value(&g), report.kappa);
    }

    #[test]
    fn star_value_is_curvature() {
        for g in [complete(2).unwrap(), complete(5).unwrap(), cycle(6).unwrap(), hypercube(4).unwrap()] {
            let r = edge_curvature(&g, 0, g.neighbors(0)[0]).unwrap();
            let star = star_coupling_of(&g, &r.instance, &r.coupling).unwrap();
            assert_eq!(star.value(&g), r.kappa);
        }
    }

    #[test]
    fn suboptimal_plan_breaks_slackness() {
        // On C6 the only source must travel distance 3 from 5 to 2.
        let g = cycle(6).unwrap();
        let r = edge_curvature(&g, 0, 1).unwrap();
        let (_, w) = lipschitz_curvature(&g, 0, 1).unwrap();
        assert!(slackness_check(&r.instance, &r.coupling, &w));
        let mut bad = w.clone();
        for entry in bad.f.iter_mut() {
            if entry.0 == 2 {
                entry.1 = 1;
            }
        }
        assert!(!slackness_check(&r.instance, &r.coupling, &bad));
    }

    #[test]
    fn tampered_star_fails_validation() {
        let g = hypercube(3).unwrap();
        let r = edge_curvature(&g, 0, 1).unwrap();
        let mut star = star_coupling_of(&g, &r.instance, &r.coupling).unwrap();
        star.entries.insert((0, 0), ratio(1, 3));
        assert!(matches!(star.validate(&g), Err(CurvatureError::StarCondition { condition: 1, .. })));

        let mut star = star_coupling_of(&g, &r.instance, &r.coupling).unwrap();
        *star.entries.get_mut(&(0, 1)).unwrap() += ratio(1, 3);
        assert!(matches!(star.validate(&g), Err(CurvatureError::StarCondition { condition: 2, .. })));

        let mut bad = r.coupling.clone();
        bad.cost += 1;
        assert_eq!(star_coupling_of(&g, &r.instance, &bad), Err(CurvatureError::MalformedCoupling));
    }
}
