use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::GraphError;

/// Distances (`None` = unreached) and the arc used to enter each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathTree {
    pub dist: Vec<Option<i64>>,
    pub parent: Vec<Option<usize>>,
}

/// Dijkstra over caller-supplied reduced costs.
///
/// `out_arcs(u)` yields `(arc_id, head, reduced_cost)` for every arc leaving
/// `u`. Reduced costs must be non-negative: a negative one is a solver bug and
/// is reported as [`GraphError::NegativeReducedCost`]. Equal keys are settled
/// lowest vertex id first.
pub fn dijkstra_with_potentials<F, I>(
    n: usize,
    source: usize,
    mut out_arcs: F,
) -> Result<ShortestPathTree, GraphError>
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = (usize, usize, i64)>,
{
    if source >= n {
        return Err(GraphError::VertexOutOfRange { vertex: source, n });
    }
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0i64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (arc, v, w) in out_arcs(u) {
            if w < 0 {
                return Err(GraphError::NegativeReducedCost { arc, cost: w });
            }
            let nd = d + w;
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                parent[v] = Some(arc);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    Ok(ShortestPathTree { dist, parent })
}
