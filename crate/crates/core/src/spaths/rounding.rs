use std::collections::VecDeque;

use super::scc::tarjan_scc;
use super::{check_re_dual, SpathError};
use crate::graphcore::{
    bellman_ford_potential, BellmanFord, DirectedLengthGraph, DualVector, OpCounters,
};

/// Rounded dual plus the work it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundOutcome {
    pub dual: DualVector,
    pub counters: OpCounters,
}

/// What one rounding iteration did; handed to the trace callback.
#[derive(Debug, Clone, Copy)]
pub struct RoundStep<'a> {
    /// 1-based iteration number.
    pub iteration: u64,
    /// Deepest layer of the contracted negative subgraph.
    pub max_layer: i64,
    /// Layer chosen as the cut point; everything at or below it was lowered.
    pub chosen_layer: i64,
    /// Dual after this iteration.
    pub dual: &'a [i64],
}

/// Rounds a predicted dual to a feasible one by repeatedly lowering the
/// deepest layers of the non-positive subgraph.
///
/// Arcs that are non-negative under the prediction stay non-negative, so
/// the work done depends only on how far the prediction is from feasible.
pub fn round_re_duals(
    g: &DirectedLengthGraph,
    predicted: &DualVector,
) -> Result<RoundOutcome, SpathError> {
    round_re_duals_traced(g, predicted, |_| {})
}

/// [`round_re_duals`] with a callback after every iteration.
pub fn round_re_duals_traced(
    g: &DirectedLengthGraph,
    predicted: &DualVector,
    trace: impl FnMut(RoundStep<'_>),
) -> Result<RoundOutcome, SpathError> {
    if predicted.len() != g.n() {
        return Err(SpathError::DimensionMismatch {
            got: predicted.len(),
            expected: g.n(),
        });
    }
    let mut counters = OpCounters::default();
    if check_re_dual(g, predicted).is_none() {
        return Ok(RoundOutcome {
            dual: predicted.clone(),
            counters,
        });
    }
    let (y_bf, passes) = potential_or_cycle(g)?;
    counters.bellman_ford_passes = passes;
    round_from(g, predicted, &y_bf, counters, trace)
}

/// Bellman-Ford potential, or the negative cycle that rules one out.
pub(super) fn potential_or_cycle(g: &DirectedLengthGraph) -> Result<(DualVector, u64), SpathError> {
    match bellman_ford_potential(g) {
        BellmanFord::Distances { dual, passes, .. } => Ok((dual, passes)),
        BellmanFord::NegativeCycle { arcs, .. } => Err(SpathError::NegativeCycle { arcs }),
    }
}

/// Iteration cap `2 * l1 * (linf + 1) + n` measured against a known feasible
/// dual.
pub fn rounding_cap(predicted: &[i64], feasible: &[i64]) -> u64 {
    let diff = predicted
        .iter()
        .zip(feasible)
        .map(|(a, b)| (a - b).unsigned_abs());
    let (l1, linf) = diff.fold((0u64, 0u64), |(s, m), d| (s + d, m.max(d)));
    2 * l1 * (linf + 1) + predicted.len() as u64
}

pub(super) fn round_from(
    g: &DirectedLengthGraph,
    predicted: &DualVector,
    y_bf: &[i64],
    mut counters: OpCounters,
    mut trace: impl FnMut(RoundStep<'_>),
) -> Result<RoundOutcome, SpathError> {
    let n = g.n();
    let cap = rounding_cap(predicted, y_bf);
    let mut y = predicted.clone();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut nonpos = Vec::new();

    while check_re_dual(g, &y).is_some() {
        if counters.round_iterations >= cap {
            return Err(SpathError::RoundingDiverged { cap });
        }
        counters.round_iterations += 1;

        for list in adj.iter_mut() {
            list.clear();
        }
        nonpos.clear();
        for (id, a) in g.arcs().iter().enumerate() {
            if g.reduced_length(id, &y) <= 0 {
                adj[a.from].push(a.to);
                nonpos.push(id);
            }
        }
        let (comp, count) = tarjan_scc(n, &adj);
        if let Some(&bad) = nonpos.iter().find(|&&id| {
            let a = g.arcs()[id];
            comp[a.from] == comp[a.to] && g.reduced_length(id, &y) < 0
        }) {
            return Err(SpathError::NegativeCycle {
                arcs: cycle_through(g, &y, &comp, bad),
            });
        }

        // d(x, C) over the contracted DAG; components are numbered in reverse
        // topological order, so sweep from the highest number down.
        let mut out_of: Vec<Vec<usize>> = vec![Vec::new(); count];
        for &id in &nonpos {
            let a = g.arcs()[id];
            if comp[a.from] != comp[a.to] {
                out_of[comp[a.from]].push(id);
            }
        }
        let mut dist = vec![0i64; count];
        for c in (0..count).rev() {
            for &id in &out_of[c] {
                let a = g.arcs()[id];
                let cand = dist[c] + g.reduced_length(id, &y);
                let slot = &mut dist[comp[a.to]];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
        let max_layer = dist.iter().map(|d| -d).max().unwrap_or(0);
        let mut sizes = vec![0usize; max_layer as usize + 1];
        for d in &dist {
            sizes[(-d) as usize] += 1;
        }
        // Layer 0 is excluded: lowering every vertex changes nothing.
        // max_by_key keeps the last maximum, so ties go to the deepest layer.
        let chosen = (1..=max_layer as usize)
            .max_by_key(|&i| sizes[i])
            .expect("an infeasible dual leaves a negative arc between components")
            as i64;
        for v in 0..n {
            if -dist[comp[v]] >= chosen {
                y[v] -= 1;
            }
        }
        trace(RoundStep {
            iteration: counters.round_iterations,
            max_layer,
            chosen_layer: chosen,
            dual: &y,
        });
    }
    Ok(RoundOutcome { dual: y, counters })
}

/// A closed cycle through arc `bad` using only non-positive arcs of its own
/// component.
fn cycle_through(g: &DirectedLengthGraph, y: &[i64], comp: &[usize], bad: usize) -> Vec<usize> {
    let start = g.arcs()[bad].to;
    let goal = g.arcs()[bad].from;
    let mut prev = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == goal {
            break;
        }
        for &id in g.out_arcs(u) {
            let v = g.arcs()[id].to;
            if !seen[v] && comp[v] == comp[u] && g.reduced_length(id, y) <= 0 {
                seen[v] = true;
                prev[v] = id;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![bad];
    let mut v = goal;
    let mut back = Vec::new();
    while v != start {
        back.push(prev[v]);
        v = g.arcs()[prev[v]].from;
    }
    back.reverse();
    path.extend(back);
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaths::re_feasible;

    #[test]
    fn feasible_prediction_is_untouched() {
        let g = DirectedLengthGraph::new(2, [(0, 1, 4)]).unwrap();
        let out = round_re_duals(&g, &DualVector::zeros(2)).unwrap();
        assert_eq!(out.dual.0, vec![0, 0]);
        assert_eq!(out.counters.round_iterations, 0);
        assert_eq!(out.counters.bellman_ford_passes, 0);
    }

    #[test]
    fn single_negative_arc_takes_three_steps() {
        let g = DirectedLengthGraph::new(2, [(0, 1, -3)]).unwrap();
        let mut layers = Vec::new();
        let out = round_re_duals_traced(&g, &DualVector::zeros(2), |s| {
            layers.push((s.max_layer, s.chosen_layer))
        })
        .unwrap();
        assert_eq!(out.dual.0, vec![0, -3]);
        assert_eq!(out.counters.round_iterations, 3);
        assert_eq!(layers, vec![(3, 3), (2, 2), (1, 1)]);
    }

    #[test]
    fn zero_cycle_is_contracted() {
        // 0 <-> 1 with zero lengths, then 1 -> 2 at -2.
        let g = DirectedLengthGraph::new(3, [(0, 1, 0), (1, 0, 0), (1, 2, -2)]).unwrap();
        let out = round_re_duals(&g, &DualVector::zeros(3)).unwrap();
        assert!(re_feasible(&g, &out.dual));
        assert_eq!(out.dual.0, vec![0, 0, -2]);
    }

    #[test]
    fn negative_cycle_is_reported() {
        let g = DirectedLengthGraph::new(2, [(0, 1, -1), (1, 0, -1)]).unwrap();
        assert!(matches!(
            round_re_duals(&g, &DualVector::zeros(2)),
            Err(SpathError::NegativeCycle { .. })
        ));
    }

    #[test]
    fn cycle_witness_from_contraction() {
        let g = DirectedLengthGraph::new(3, [(0, 1, 0), (1, 2, 0), (2, 0, -1)]).unwrap();
        let y = DualVector::zeros(3);
        let (comp, _) = tarjan_scc(3, &[vec![1], vec![2], vec![0]]);
        let cyc = cycle_through(&g, &y, &comp, 2);
        assert_eq!(cyc, vec![2, 0, 1]);
    }

    #[test]
    fn cap_formula() {
        assert_eq!(rounding_cap(&[0, 0], &[0, -3]), 2 * 3 * 4 + 2);
    }
}
