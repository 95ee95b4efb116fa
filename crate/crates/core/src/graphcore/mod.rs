//! Graph representations shared by all solvers, plus the classical
//! subroutines they compose.
//!
//! Vertex ids are dense and 0-based. Bipartite instances flatten their
//! vertex set as `0..n_left` (left) followed by `n_left..n_left + n_right`
//! (right); dual vectors are indexed the same way.

mod bellman_ford;
mod dijkstra;
mod hopcroft_karp;
mod maxflow;
mod residual;
mod types;

pub use bellman_ford::{bellman_ford, bellman_ford_potential, BellmanFord};
pub use dijkstra::{dijkstra_with_potentials, ShortestPathTree};
pub use hopcroft_karp::hopcroft_karp;
pub use maxflow::{edmonds_karp_oracle, ford_fulkerson, Augmentation, MaxFlowCertificate};
pub use residual::ResidualGraph;
pub use types::{
    BipartiteEdge, BipartiteInstance, DirectedLengthGraph, DualVector, FlowArc, FlowNetwork,
    FlowState, LengthArc, OpCounters, PreflowViolation, MAX_ABS_WEIGHT,
};

use thiserror::Error;

/// Construction and invariant errors for the shared graph types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge}: cost {cost} is negative")]
    NegativeCost { edge: usize, cost: i64 },
    #[error("edge {edge}: |{value}| exceeds 2^31")]
    WeightOutOfRange { edge: usize, value: i64 },
    #[error("edge {edge} duplicates an earlier edge between {left} and {right}")]
    ParallelEdge {
        edge: usize,
        left: usize,
        right: usize,
    },
    #[error("arc {arc} is a self-loop at vertex {vertex}")]
    SelfLoop { arc: usize, vertex: usize },
    #[error("demand vector has length {got}, expected {expected}")]
    DemandLength { got: usize, expected: usize },
    #[error("vertex {vertex}: demand must be positive, got {demand}")]
    NonPositiveDemand { vertex: usize, demand: i64 },
    #[error("source and sink are the same vertex {0}")]
    SourceIsSink(usize),
    #[error("arc {arc}: capacity {cap} is negative or exceeds 2^31")]
    BadCapacity { arc: usize, cap: i64 },
    #[error("arc {arc}: negative reduced cost {cost} (solver invariant violated)")]
    NegativeReducedCost { arc: usize, cost: i64 },
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}
