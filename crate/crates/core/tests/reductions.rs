use proptest::prelude::*;
use warmstart_core::graphcore::bellman_ford_potential;
use warmstart_core::matching::solve_mwpm;
use warmstart_core::oracle::{brute_force_complete_dcs, brute_force_min_cost_01_flow};
use warmstart_core::reductions::{
    detect_negative_cycle_via_matching, reduce_01flow_to_dcs, reduce_dcs_to_matching,
    reduce_sp_to_matching, run_reduction_pipeline, DcsInstance, DcsReduction, Flow01Instance,
    Flow01Reduction, LearnedReduction, ReductionError, SpReduction,
};
use warmstart_core::spaths::re_feasible;
use warmstart_core::{DirectedLengthGraph, DualVector, FlowNetwork};

fn zeros(h: &warmstart_core::BipartiteInstance) -> DualVector {
    DualVector::zeros(h.n_vertices())
}

/// Either a graph with a planted negative cycle or one built from a
/// potential (no negative cycle), in equal measure.
fn sp_graph() -> impl Strategy<Value = DirectedLengthGraph> {
    (3usize..=8, any::<bool>()).prop_flat_map(|(n, plant)| {
        (
            prop::collection::vec(0i64..=5, n),
            prop::collection::vec((0..n, 0..n, 0i64..=6), 0..2 * n),
            2..=n,
            prop::collection::vec(-4i64..=2, n),
        )
            .prop_map(move |(p, arcs, k, cyc)| {
                let mut list: Vec<(usize, usize, i64)> = arcs
                    .into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, w)| (u, v, w + p[v] - p[u]))
                    .collect();
                if plant {
                    // Cycle 0 -> 1 -> .. -> k-1 -> 0 with total at most -1.
                    let mut lens = cyc[..k].to_vec();
                    let total: i64 = lens.iter().sum();
                    if total >= 0 {
                        lens[0] -= total + 1;
                    }
                    list.extend((0..k).map(|i| (i, (i + 1) % k, lens[i])));
                }
                DirectedLengthGraph::new(n, list).unwrap()
            })
    })
}

/// Bipartite DCS instance with bounds drawn inside `0..=degree`.
fn dcs_instance() -> impl Strategy<Value = DcsInstance> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(nl, nr)| {
        (
            prop::collection::vec((0..nl, 0..nr, -8i64..=8), 1..=7),
            prop::collection::vec(0u8..=255, nl + nr),
        )
            .prop_map(move |(edges, picks)| {
                let mut deg = vec![0i64; nl + nr];
                for &(l, r, _) in &edges {
                    deg[l] += 1;
                    deg[nl + r] += 1;
                }
                let upper = deg
                    .iter()
                    .zip(&picks)
                    .map(|(&d, &p)| p as i64 % (d + 1))
                    .collect();
                DcsInstance::new(nl, nr, edges, upper).unwrap()
            })
    })
}

/// Unit-capacity network on at most 6 vertices, every vertex of degree at
/// most 3.
fn unit_net() -> impl Strategy<Value = FlowNetwork> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, -5i64..=10), 1..=12).prop_map(move |raw| {
            let mut deg = vec![0; n];
            let mut arcs = Vec::new();
            for (u, v, c) in raw {
                if u != v && deg[u] < 3 && deg[v] < 3 {
                    deg[u] += 1;
                    deg[v] += 1;
                    arcs.push((u, v, 1, c));
                }
            }
            FlowNetwork::new(n, arcs, 0, n - 1).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn negative_cycle_detection_agrees(g in sp_graph()) {
        let bf = bellman_ford_potential(&g).is_negative_cycle();
        prop_assert_eq!(detect_negative_cycle_via_matching(&g).unwrap(), bf);
        let red = reduce_sp_to_matching(&g).unwrap();
        prop_assert_eq!(red.target().edges().len(), g.m() + g.n());
        prop_assert_eq!(red.target().n_left(), g.n());

        let out = run_reduction_pipeline::<SpReduction, _, _>(&g, zeros, solve_mwpm);
        match out {
            Ok(o) => {
                prop_assert!(!bf);
                prop_assert!(re_feasible(&g, &o.solution));
            }
            Err(e) => {
                prop_assert!(bf);
                prop_assert_eq!(e, ReductionError::NegativeCycle);
            }
        }
    }

    #[test]
    fn dcs_pipeline_matches_brute_force(src in dcs_instance()) {
        let nl = src.n_left();
        let flat: Vec<(usize, usize, i64)> =
            src.edges().iter().map(|&(l, r, w)| (l, nl + r, w)).collect();
        let best = brute_force_complete_dcs(src.upper(), &flat);
        let out = run_reduction_pipeline::<DcsReduction, _, _>(&src, zeros, solve_mwpm);
        match (out, best) {
            (Ok(o), Some(w)) => {
                prop_assert_eq!(o.solution.weight, w);
                let mut deg = vec![0i64; src.n_vertices()];
                for &e in &o.solution.edges {
                    deg[flat[e].0] += 1;
                    deg[flat[e].1] += 1;
                }
                prop_assert_eq!(&deg[..], src.upper());
            }
            (Err(ReductionError::NoCompleteDcs), None) => {}
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
        }
    }

    #[test]
    fn dcs_target_size(src in dcs_instance()) {
        let Ok(red) = reduce_dcs_to_matching(&src) else { return Ok(()) };
        let deg = src.degrees();
        let slack: Vec<i64> = deg.iter().zip(src.upper()).map(|(d, u)| d - u).collect();
        let m = src.edges().len() as i64;
        let vertices = 2 * m + slack.iter().sum::<i64>();
        let edges = m + slack.iter().zip(&deg).map(|(s, d)| s * d).sum::<i64>();
        prop_assert_eq!(red.target().n_vertices() as i64, vertices);
        prop_assert_eq!(red.target().edges().len() as i64, edges);
    }

    #[test]
    fn flow01_pipeline_matches_brute_force(net in unit_net(), value in 0i64..=3) {
        let best = brute_force_min_cost_01_flow(&net, value);
        let src = Flow01Instance { net: net.clone(), value };
        let out = run_reduction_pipeline::<Flow01Reduction, _, _>(&src, zeros, solve_mwpm);
        match (out, best) {
            (Ok(o), Some(c)) => {
                prop_assert_eq!(o.solution.cost, c);
                prop_assert!(o.solution.flow.is_feasible_flow(&net));
                prop_assert_eq!(o.solution.flow.value(&net), value);
            }
            (Err(ReductionError::NoFlowOfValue { value: v }), None) => prop_assert_eq!(v, value),
            (got, want) => prop_assert!(false, "{:?} vs {:?}", got, want),
        }
    }
}

#[test]
fn flow01_edges_follow_arcs() {
    let net = FlowNetwork::new(3, [(0, 1, 1, 2), (1, 2, 1, 3)], 0, 2).unwrap();
    let red = reduce_01flow_to_dcs(&net, 1).unwrap();
    let dcs = red.dcs().source();
    assert_eq!(dcs.edges()[red.dcs_edge(1)], (1, 2, -3));
    // mindeg is 0, 1, 0; s1 and t2 get the flow value on top.
    assert_eq!(dcs.upper(), &[1, 1, 0, 0, 1, 1]);
}

#[test]
fn bad_dcs_bounds() {
    assert!(matches!(
        DcsInstance::new(1, 1, [(0, 0, 1)], vec![2, 1]),
        Err(ReductionError::InfeasibleBounds {
            vertex: 0,
            upper: 2,
            degree: 1
        })
    ));
    assert!(matches!(
        DcsInstance::new(1, 1, [(0, 0, 1)], vec![1]),
        Err(ReductionError::BoundLength {
            got: 1,
            expected: 2
        })
    ));
}

#[test]
fn unbalanced_dcs_has_no_solution() {
    // Left wants one edge, right wants none.
    let src = DcsInstance::new(1, 1, [(0, 0, 1)], vec![1, 0]).unwrap();
    let out = run_reduction_pipeline::<DcsReduction, _, _>(&src, zeros, solve_mwpm);
    assert_eq!(out, Err(ReductionError::NoCompleteDcs));
    assert!(matches!(
        DcsReduction::reduce(&src),
        Err(ReductionError::NoCompleteDcs)
    ));
}
