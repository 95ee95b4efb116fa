//! Exact combinatorial solvers that take learned predictions as warm starts.
//!
//! Every solver accepts a (possibly wrong) prediction, repairs it to
//! feasibility, solves the instance exactly and reports operation counts in
//! [`OpCounters`], so that "runtime scales with prediction error" statements
//! can be checked against concrete numbers.
//!
//! * [`graphcore`]: graph types, residual networks and the classical
//!   subroutines (Dijkstra with potentials, Bellman-Ford, Hopcroft-Karp,
//!   Ford-Fulkerson, Edmonds-Karp).
//! * [`matching`]: min-weight perfect matching and perfect b-matching from
//!   predicted duals.
//! * [`spaths`]: reduced-edge-length duals, prediction rounding, SSSP, APSP
//!   and diameter.
//! * [`reductions`]: shortest paths, degree-constrained subgraph and
//!   min-cost 0-1 flow solved through matching.
//! * [`pushrelabel`]: two-stage highest-label push-relabel with learned
//!   preflows.
//! * [`predict`]: predictors, error norms and drifting instance families.
//! * [`oracle`]: exhaustive small-instance solvers used for verification.

pub mod graphcore;
pub mod matching;
pub mod oracle;
pub mod predict;
pub mod pushrelabel;
pub mod reductions;
pub mod rng;
pub mod spaths;

pub use graphcore::{
    BipartiteInstance, DirectedLengthGraph, DualVector, FlowNetwork, FlowState, GraphError,
    OpCounters,
};
