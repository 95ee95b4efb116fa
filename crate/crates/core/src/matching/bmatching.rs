use std::collections::VecDeque;

use super::{check_feasible, MatchingError, MatchingResult};
use crate::graphcore::{ford_fulkerson, BipartiteInstance, DualVector, OpCounters, ResidualGraph};

/// Min-weight perfect b-matching from a feasible dual.
///
/// Keeps a max flow on the tight subgraph. While it falls short of the total
/// demand, the left vertices `S` still reachable from the source form a
/// deficient set; their duals rise (and those of their tight neighbours fall)
/// by the smallest slack leaving `S`, and the flow is augmented again.
///
/// Without attached demands every vertex has demand 1 and this solves the
/// ordinary perfect matching problem.
pub fn solve_mwbm(
    inst: &BipartiteInstance,
    feasible_dual: &DualVector,
) -> Result<MatchingResult, MatchingError> {
    check_feasible(inst, feasible_dual)?;
    let nl = inst.n_left();
    let nv = inst.n_vertices();
    let mut y = feasible_dual.clone();
    let mut counters = OpCounters::default();

    let left_total: i64 = (0..nl).map(|i| inst.demand(i)).sum();
    let right_total: i64 = (nl..nv).map(|j| inst.demand(j)).sum();
    if left_total != right_total {
        return Err(MatchingError::NoPerfectBMatching);
    }
    let unbounded = left_total.max(1);

    let (s, t) = (nv, nv + 1);
    let mut g = ResidualGraph::new(nv + 2);
    for i in 0..nl {
        g.add_edge(s, i, inst.demand(i));
    }
    let first_edge_arc = g.arc_count();
    for e in inst.edges() {
        g.add_edge(e.left, inst.right_id(e.right), unbounded);
    }
    for j in nl..nv {
        g.add_edge(j, t, inst.demand(j));
    }
    let edge_of = |a: usize| {
        let k = a / 2;
        let lo = first_edge_arc / 2;
        (k >= lo && k < lo + inst.edges().len()).then(|| k - lo)
    };
    let tight = |y: &[i64], a: usize| edge_of(a).is_none_or(|e| inst.slack(e, y) == 0);

    let mut flow = ford_fulkerson(&mut g, s, t, |_, a| tight(&y, a), None).value;
    counters.first_match_size = flow as u64;

    while flow < left_total {
        counters.while_iterations += 1;
        let reached = reachable(&g, s, |a| tight(&y, a));
        let eps = inst
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| reached[e.left] && !reached[inst.right_id(e.right)])
            .map(|(id, _)| inst.slack(id, &y))
            .min();
        let Some(eps) = eps else {
            return Err(MatchingError::NoPerfectBMatching);
        };
        debug_assert!(eps > 0, "a tight edge would have extended S");
        for v in 0..nv {
            if reached[v] {
                y[v] += if v < nl { eps } else { -eps };
            }
        }
        let aug = ford_fulkerson(&mut g, s, t, |_, a| tight(&y, a), None);
        counters.ff_augmentations += aug.value as u64;
        flow += aug.value;
    }

    let mut matched_edges = Vec::new();
    for id in 0..inst.edges().len() {
        let f = g.flow(first_edge_arc + 2 * id);
        matched_edges.extend(std::iter::repeat_n(id, f as usize));
    }
    let total_cost = matched_edges.iter().map(|&e| inst.edges()[e].cost).sum();
    Ok(MatchingResult {
        matched_edges,
        total_cost,
        final_duals: y,
        counters,
    })
}

fn reachable(g: &ResidualGraph, s: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &a in g.out_arcs(u) {
            let v = g.head(a);
            if !seen[v] && g.residual(a) > 0 && allowed(a) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}
