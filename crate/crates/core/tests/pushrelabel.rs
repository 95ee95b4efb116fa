use proptest::prelude::*;
use warmstart_core::graphcore::edmonds_karp_oracle;
use warmstart_core::pushrelabel::{
    check_labeling, fix_preflow, hl_push_relabel, shortest_path_labeling, HeightLabeling,
    PushRelabelError, WarmStart,
};
use warmstart_core::{FlowNetwork, FlowState};

fn net(max_n: usize) -> impl Strategy<Value = FlowNetwork> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0i64..=20), 1..=4 * n).prop_map(move |arcs| {
            FlowNetwork::new(
                n,
                arcs.into_iter()
                    .filter(|(u, v, _)| u != v)
                    .map(|(u, v, c)| (u, v, c, 0)),
                0,
                n - 1,
            )
            .unwrap()
        })
    })
}

fn cut_capacity(net: &FlowNetwork, side: &[bool]) -> i64 {
    net.arcs()
        .iter()
        .filter(|a| side[a.from] && !side[a.to])
        .map(|a| a.cap)
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cold_start_is_maximum_and_bounded(g in net(30)) {
        let r = hl_push_relabel(&g, WarmStart::Cold).unwrap();
        let (n, m) = (g.n() as u64, g.m() as u64);
        prop_assert_eq!(r.value, edmonds_karp_oracle(&g).value);
        prop_assert!(r.flow.is_feasible_flow(&g));
        prop_assert_eq!(r.flow.value(&g), r.value);
        prop_assert!(r.source_side[g.source()] && !r.source_side[g.sink()]);
        prop_assert_eq!(cut_capacity(&g, &r.source_side), r.value);
        prop_assert!(r.counters.relabels <= n * n);
        prop_assert!(r.counters.saturating_pushes <= m * n / 2);
        prop_assert!(r.counters.nonsaturating_pushes <= n * n * n);
    }

    #[test]
    fn warm_start_from_perturbed_optimum(
        g in net(30),
        noise in prop::collection::vec(-6i64..=6, 120),
    ) {
        let best = edmonds_karp_oracle(&g);
        let pred: Vec<i64> = best.flow.flow.iter().zip(&noise).map(|(f, d)| f + d).collect();
        let r = hl_push_relabel(&g, WarmStart::Prediction(pred)).unwrap();
        prop_assert_eq!(r.value, best.value);
        prop_assert!(r.flow.is_feasible_flow(&g));
        let deficit = r.initial_labeling.deficit();
        prop_assert!(r.counters.relabels <= deficit);
        prop_assert!(r.counters.nonsaturating_pushes <= g.n() as u64 * deficit);
    }

    #[test]
    fn fixed_prediction_is_a_preflow(
        g in net(30),
        pred in prop::collection::vec(-10i64..=30, 120),
    ) {
        let f = fix_preflow(&g, &pred[..g.m()]).unwrap();
        prop_assert_eq!(f.check_preflow(&g), Ok(()));
        for (a, arc) in g.arcs().iter().enumerate() {
            if arc.from == g.source() {
                prop_assert_eq!(f.flow[a], arc.cap);
            }
            if arc.to == g.source() {
                prop_assert_eq!(f.flow[a], 0);
            }
        }
        let h = shortest_path_labeling(&g, &f);
        prop_assert_eq!(check_labeling(&g, &f, &h), Ok(()));
    }

    #[test]
    fn exact_max_flow_needs_no_work(g in net(30)) {
        let best = edmonds_karp_oracle(&g);
        let labeling = shortest_path_labeling(&g, &best.flow);
        let r = hl_push_relabel(&g, WarmStart::Explicit { flow: best.flow.clone(), labeling }).unwrap();
        prop_assert_eq!(r.value, best.value);
        prop_assert_eq!(r.counters.relabels, 0);
        prop_assert_eq!(r.counters.saturating_pushes + r.counters.nonsaturating_pushes, 0);
        prop_assert_eq!(r.flow, best.flow);
    }
}

#[test]
fn wrong_dimensions_are_rejected() {
    let g = FlowNetwork::new(2, [(0, 1, 3, 0)], 0, 1).unwrap();
    assert_eq!(
        hl_push_relabel(&g, WarmStart::Prediction(vec![1, 2])),
        Err(PushRelabelError::DimensionMismatch {
            got: 2,
            expected: 1
        })
    );
    assert_eq!(
        hl_push_relabel(
            &g,
            WarmStart::Explicit {
                flow: FlowState::zero(&g),
                labeling: HeightLabeling(vec![2])
            }
        ),
        Err(PushRelabelError::DimensionMismatch {
            got: 1,
            expected: 2
        })
    );
}

#[test]
fn deficit_counts_sink() {
    assert_eq!(HeightLabeling(vec![3, 1, 0]).deficit(), 5);
}
