//! Problems solved by reduction to min-weight perfect matching, so that a
//! dual prediction for the matching instance warm-starts them too.
//!
//! Each reduction builds a target [`BipartiteInstance`] and maps an optimal
//! matching back to the source problem. [`run_reduction_pipeline`] strings
//! the stages together: reduce, predict, repair, solve, pull back.

mod dcs;
mod flow01;
mod sp;

pub use dcs::{reduce_dcs_to_matching, DcsInstance, DcsReduction, DcsSolution};
pub use flow01::{reduce_01flow_to_dcs, Flow01Instance, Flow01Reduction, Flow01Solution};
pub use sp::{detect_negative_cycle_via_matching, reduce_sp_to_matching, SpReduction};

use thiserror::Error;

use crate::graphcore::{BipartiteInstance, DualVector, GraphError, OpCounters};
use crate::matching::{repair_matching_duals, MatchingError, MatchingResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("graph contains a negative cycle")]
    NegativeCycle,
    #[error("vertex {vertex}: bound {upper} is outside 0..={degree}")]
    InfeasibleBounds {
        vertex: usize,
        upper: i64,
        degree: i64,
    },
    #[error("no complete degree-constrained subgraph exists")]
    NoCompleteDcs,
    #[error("no flow of value {value} exists")]
    NoFlowOfValue { value: i64 },
    #[error("arc {arc} has capacity {cap}, expected 1")]
    NotUnitCapacity { arc: usize, cap: i64 },
    #[error("bound vector has length {got}, expected {expected}")]
    BoundLength { got: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

/// A source problem that can be solved through a perfect matching instance.
pub trait LearnedReduction: Sized {
    type Source: ?Sized;
    type Solution;

    fn reduce(source: &Self::Source) -> Result<Self, ReductionError>;

    fn target(&self) -> &BipartiteInstance;

    /// Maps an optimal matching of the target back to the source.
    fn pull_back(&self, solved: &MatchingResult) -> Result<Self::Solution, ReductionError>;

    /// Error to report when the target has no perfect matching.
    fn no_solution(&self) -> ReductionError {
        ReductionError::Matching(MatchingError::NoPerfectMatching)
    }
}

/// Result of [`run_reduction_pipeline`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutput<T> {
    pub solution: T,
    /// Counters of the inner matching solve, unchanged.
    pub counters: OpCounters,
    /// The repaired prediction the solver started from.
    pub start_dual: DualVector,
    pub target_result: MatchingResult,
}

pub fn run_reduction_pipeline<R, P, S>(
    source: &R::Source,
    predictor: P,
    solver: S,
) -> Result<PipelineOutput<R::Solution>, ReductionError>
where
    R: LearnedReduction,
    P: FnOnce(&BipartiteInstance) -> DualVector,
    S: FnOnce(&BipartiteInstance, &DualVector) -> Result<MatchingResult, MatchingError>,
{
    let reduction = R::reduce(source)?;
    let target = reduction.target();
    let predicted = predictor(target);
    let start_dual = repair_matching_duals(target, &predicted)?;
    let solved = match solver(target, &start_dual) {
        Ok(r) => r,
        Err(MatchingError::NoPerfectMatching | MatchingError::NoPerfectBMatching) => {
            return Err(reduction.no_solution())
        }
        Err(e) => return Err(e.into()),
    };
    let solution = reduction.pull_back(&solved)?;
    Ok(PipelineOutput {
        solution,
        counters: solved.counters,
        start_dual,
        target_result: solved,
    })
}

/// `1 + max |w|`: shifting every weight by this keeps target costs positive.
fn offset(weights: impl Iterator<Item = i64>) -> i64 {
    weights.map(i64::abs).max().unwrap_or(0) + 1
}
