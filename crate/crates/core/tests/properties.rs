mod common;

use curv_core::curvature::{
    blowup_instance, curvature_upper_bound, edge_curvature, hall_witness_search, lazy_lp_curvature,
    lipschitz_curvature, slackness_check, star_coupling_of,
};
use curv_core::rational::{int, ratio};
use curv_core::transport::{has_perfect_matching, hall_violation, is_optimal, min_cost_transport, TransportInstance};
use proptest::prelude::*;

fn instance_strategy() -> impl Strategy<Value = TransportInstance> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(m, k)| {
            (
                prop::collection::vec(0u64..=4, m),
                prop::collection::vec(prop::collection::vec(0u64..=9, k), m),
                prop::collection::vec(0u64..=4, k),
            )
        })
        .prop_filter_map("balanced", |(supply, cost, demand)| {
            // Rebalance by trimming or padding the last demand site.
            let (s, d): (u64, u64) = (supply.iter().sum(), demand.iter().sum());
            let mut demand = demand;
            if s >= d {
                *demand.last_mut().unwrap() += s - d;
            } else {
                let mut over = d - s;
                for x in demand.iter_mut().rev() {
                    let cut = over.min(*x);
                    *x -= cut;
                    over -= cut;
                }
            }
            TransportInstance::new(supply, demand, cost).ok()
        })
}

fn graph_strategy() -> impl Strategy<Value = curv_core::Graph> {
    (3usize..=9, prop::sample::select(vec![0.3, 0.5, 0.7]), any::<u64>())
        .prop_map(|(n, p, seed)| common::connected_random(n, p, seed))
}

fn costs(inst: &TransportInstance) -> Vec<Vec<u64>> {
    (0..inst.supply().len()).map(|i| (0..inst.demand().len()).map(|j| inst.cost(i, j)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_matches_exhaustive_search(inst in instance_strategy()) {
        let sol = min_cost_transport(&inst).unwrap();
        prop_assert!(sol.is_coupling_for(&inst));
        prop_assert!(is_optimal(&inst, &sol));
        prop_assert_eq!(sol.cost, common::brute_force_cost(inst.supply(), inst.demand(), &costs(&inst)));
    }

    #[test]
    fn scaling_masses_scales_cost(inst in instance_strategy(), k in 2u64..=3) {
        let base = min_cost_transport(&inst).unwrap().cost;
        prop_assert_eq!(min_cost_transport(&inst.scaled(k)).unwrap().cost, k * base);
    }

    #[test]
    fn matching_iff_hall_holds(inst in instance_strategy()) {
        let unit: Vec<(usize, usize)> = (0..inst.supply().len())
            .flat_map(|i| (0..inst.demand().len()).map(move |j| (i, j)))
            .filter(|&(i, j)| inst.cost(i, j) <= 3)
            .collect();
        let matching = has_perfect_matching(inst.supply(), inst.demand(), &unit).unwrap();
        let violation = hall_violation(inst.supply(), inst.demand(), &unit).unwrap();
        prop_assert_eq!(matching.is_some(), violation.is_none());
        if let Some(flow) = matching {
            for (i, row) in flow.iter().enumerate() {
                prop_assert_eq!(row.iter().sum::<u64>(), inst.supply()[i]);
                for (j, &f) in row.iter().enumerate() {
                    prop_assert!(f == 0 || unit.contains(&(i, j)));
                }
            }
        }
    }

    #[test]
    fn oracles_agree_on_random_graphs(g in graph_strategy()) {
        for (u, v) in g.edges() {
            let k = edge_curvature(&g, u, v).unwrap().kappa;
            let alpha = ratio(1, g.degree(u).max(g.degree(v)) as i64 + 1);
            prop_assert_eq!(&lazy_lp_curvature(&g, u, v, &alpha).unwrap(), &k);
            let (lip, witness) = lipschitz_curvature(&g, u, v).unwrap();
            prop_assert_eq!(&lip, &k);
            prop_assert!(witness.is_lipschitz(&g));
            prop_assert_eq!(witness.recompute(&g), Some(k.clone()));
            prop_assert!(k >= lazy_lp_curvature(&g, u, v, &int(0)).unwrap());
        }
    }

    #[test]
    fn curvature_is_symmetric_and_bounded(g in graph_strategy()) {
        for (u, v) in g.edges() {
            let r = edge_curvature(&g, u, v).unwrap();
            prop_assert_eq!(&edge_curvature(&g, v, u).unwrap().kappa, &r.kappa);
            let (bound, attained) = curvature_upper_bound(&g, u, v).unwrap();
            prop_assert!(r.kappa <= bound);
            prop_assert_eq!(attained, r.kappa == bound);
            let inst = blowup_instance(&g, u, v).unwrap();
            prop_assert_eq!(attained, hall_witness_search(&inst).unwrap().is_none());
        }
    }

    #[test]
    fn blowup_masses_balance(g in graph_strategy()) {
        for (u, v) in g.edges() {
            let inst = blowup_instance(&g, u, v).unwrap();
            prop_assert!(inst.dx <= inst.dy);
            prop_assert_eq!(inst.cx * inst.dx, inst.lcm);
            prop_assert_eq!(inst.cy * inst.dy, inst.lcm);
            let supply: u64 = inst.mu_x().map(|e| e.1).sum();
            let demand: u64 = inst.mu_y().map(|e| e.1).sum();
            prop_assert_eq!(supply, demand);
            prop_assert_eq!(demand, inst.cy * inst.sinks.len() as u64);
        }
    }

    #[test]
    fn relabelling_preserves_curvature(g in graph_strategy(), seed in any::<u64>()) {
        let (h, perm) = common::scrambled(&g, seed);
        for (u, v) in g.edges() {
            prop_assert_eq!(
                edge_curvature(&g, u, v).unwrap().kappa,
                edge_curvature(&h, perm[u], perm[v]).unwrap().kappa
            );
        }
    }

    #[test]
    fn certificates_close(g in graph_strategy()) {
        for (u, v) in g.edges() {
            let r = edge_curvature(&g, u, v).unwrap();
            let (_, w) = lipschitz_curvature(&g, r.instance.x, r.instance.y).unwrap();
            prop_assert!(slackness_check(&r.instance, &r.coupling, &w));
            let star = star_coupling_of(&g, &r.instance, &r.coupling).unwrap();
            prop_assert_eq!(star.value(&g), r.kappa);
        }
    }
}
