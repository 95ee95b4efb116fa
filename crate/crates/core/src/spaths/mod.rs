//! Shortest paths with negative lengths, driven by a predicted potential.
//!
//! A potential `y` is an RE dual when every reduced length
//! `len(u, v) + y_u - y_v` is non-negative. Given one, Dijkstra answers
//! shortest-path queries exactly; [`round_re_duals`] turns an arbitrary
//! prediction into one.

mod rounding;
mod scc;

pub use rounding::{round_re_duals, round_re_duals_traced, rounding_cap, RoundOutcome, RoundStep};

use thiserror::Error;

use crate::graphcore::{
    dijkstra_with_potentials, DirectedLengthGraph, DualVector, GraphError, OpCounters,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpathError {
    #[error("graph contains a negative cycle")]
    NegativeCycle {
        /// Arc ids of one negative cycle, in traversal order.
        arcs: Vec<usize>,
    },
    #[error("dual violates arc {arc}")]
    InfeasibleDual { arc: usize },
    #[error("vertex {to} is unreachable from vertex {from}")]
    Disconnected { from: usize, to: usize },
    #[error("rounding exceeded its cap of {cap} iterations")]
    RoundingDiverged { cap: u64 },
    #[error("dual has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// First arc with negative reduced length under `y`, if any.
pub fn check_re_dual(g: &DirectedLengthGraph, y: &[i64]) -> Option<usize> {
    (0..g.m()).find(|&a| g.reduced_length(a, y) < 0)
}

pub fn re_feasible(g: &DirectedLengthGraph, y: &[i64]) -> bool {
    y.len() == g.n() && check_re_dual(g, y).is_none()
}

fn check_dimension(g: &DirectedLengthGraph, y: &[i64]) -> Result<(), SpathError> {
    if y.len() != g.n() {
        return Err(SpathError::DimensionMismatch {
            got: y.len(),
            expected: g.n(),
        });
    }
    Ok(())
}

/// Single-source distances from a feasible potential; `None` = unreached.
pub fn sssp_with_dual(
    g: &DirectedLengthGraph,
    source: usize,
    y: &DualVector,
) -> Result<Vec<Option<i64>>, SpathError> {
    check_dimension(g, y)?;
    if let Some(arc) = check_re_dual(g, y) {
        return Err(SpathError::InfeasibleDual { arc });
    }
    Ok(sssp_unchecked(g, source, y)?)
}

fn sssp_unchecked(
    g: &DirectedLengthGraph,
    source: usize,
    y: &[i64],
) -> Result<Vec<Option<i64>>, GraphError> {
    let tree = dijkstra_with_potentials(g.n(), source, |u| {
        g.out_arcs(u)
            .iter()
            .map(|&a| (a, g.arcs()[a].to, g.reduced_length(a, y)))
    })?;
    Ok(tree
        .dist
        .iter()
        .enumerate()
        .map(|(v, d)| d.map(|d| d - y[source] + y[v]))
        .collect())
}

/// All-pairs distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Apsp {
    /// `table[u][v]`, `None` when `v` is unreachable from `u`.
    pub table: Vec<Vec<Option<i64>>>,
    pub counters: OpCounters,
}

/// Bellman-Ford once to rule out negative cycles, rounding of the
/// prediction, then one Dijkstra per source.
pub fn apsp_with_prediction(
    g: &DirectedLengthGraph,
    predicted: &DualVector,
) -> Result<Apsp, SpathError> {
    check_dimension(g, predicted)?;
    let (y_bf, passes) = rounding::potential_or_cycle(g)?;
    let counters = OpCounters {
        bellman_ford_passes: passes,
        ..OpCounters::default()
    };
    let rounded = rounding::round_from(g, predicted, &y_bf, counters, |_| {})?;
    let mut counters = rounded.counters;
    let mut table = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        counters.dijkstra_calls += 1;
        table.push(sssp_unchecked(g, s, &rounded.dual)?);
    }
    Ok(Apsp { table, counters })
}

/// Largest distance between two distinct vertices; 0 for graphs with at
/// most one vertex.
pub fn diameter_with_prediction(
    g: &DirectedLengthGraph,
    predicted: &DualVector,
) -> Result<i64, SpathError> {
    let apsp = apsp_with_prediction(g, predicted)?;
    diameter_of(&apsp.table)
}

/// Diameter of a finished distance table.
pub fn diameter_of(table: &[Vec<Option<i64>>]) -> Result<i64, SpathError> {
    let mut best: Option<i64> = None;
    for (u, row) in table.iter().enumerate() {
        for (v, d) in row.iter().enumerate() {
            if u == v {
                continue;
            }
            let d = d.ok_or(SpathError::Disconnected { from: u, to: v })?;
            best = Some(best.map_or(d, |b| b.max(d)));
        }
    }
    Ok(best.unwrap_or(0))
}
