//! Minimum-weight perfect matching and perfect b-matching, warm-started from
//! predicted duals.
//!
//! The dual convention is the LP dual of min-cost matching: a vector `y` over
//! the flattened vertex set is feasible when `y_i + y_j <= c_ij` on every edge.
//! A prediction is first made feasible with [`repair_matching_duals`]; the
//! solvers then start from the tight subgraph of that dual and only pay for
//! the part of the optimum the prediction got wrong.

mod bmatching;
mod mwpm;

pub use bmatching::solve_mwbm;
pub use mwpm::solve_mwpm;

use thiserror::Error;

use crate::graphcore::{BipartiteInstance, DualVector, GraphError, OpCounters};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("dual violates the constraint of edge {edge}")]
    InfeasibleDual { edge: usize },
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("no perfect b-matching exists")]
    NoPerfectBMatching,
    #[error("perfect matching needs equal sides, got {n_left} and {n_right}")]
    Unbalanced { n_left: usize, n_right: usize },
    #[error("dual has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Output of the matching solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    /// Edge ids in increasing order; an id repeats once per unit of
    /// multiplicity in a b-matching.
    pub matched_edges: Vec<usize>,
    pub total_cost: i64,
    /// Optimal dual certifying the matching: feasible, tight on every
    /// matched edge.
    pub final_duals: DualVector,
    pub counters: OpCounters,
}

fn check_dimension(inst: &BipartiteInstance, y: &[i64]) -> Result<(), MatchingError> {
    if y.len() != inst.n_vertices() {
        return Err(MatchingError::DimensionMismatch {
            got: y.len(),
            expected: inst.n_vertices(),
        });
    }
    Ok(())
}

fn check_feasible(inst: &BipartiteInstance, y: &[i64]) -> Result<(), MatchingError> {
    check_dimension(inst, y)?;
    match inst.first_violated_edge(y) {
        Some(edge) => Err(MatchingError::InfeasibleDual { edge }),
        None => Ok(()),
    }
}

/// Makes an arbitrary predicted dual feasible.
///
/// Right duals are kept; each left dual is clipped to
/// `min(y_i, min_j (c_ij - y_j))` over its neighbours. Isolated left vertices
/// keep their prediction, and an already feasible input comes back unchanged.
pub fn repair_matching_duals(
    inst: &BipartiteInstance,
    predicted: &DualVector,
) -> Result<DualVector, MatchingError> {
    check_dimension(inst, predicted)?;
    let mut y = predicted.clone();
    for e in inst.edges() {
        let bound = e.cost - predicted[inst.right_id(e.right)];
        if y[e.left] > bound {
            y[e.left] = bound;
        }
    }
    Ok(y)
}

/// An optimal dual, read off the final potentials of a cold-started solve.
pub fn optimal_matching_dual(inst: &BipartiteInstance) -> Result<DualVector, MatchingError> {
    let zero = DualVector::zeros(inst.n_vertices());
    Ok(solve_mwpm(inst, &zero)?.final_duals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repair_is_identity_on_feasible_input() {
        let g = BipartiteInstance::new(2, 2, [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 1)]).unwrap();
        let y = DualVector::zeros(4);
        assert_eq!(repair_matching_duals(&g, &y).unwrap(), y);
        let opt = DualVector(vec![1, 1, 0, 0]);
        assert_eq!(repair_matching_duals(&g, &opt).unwrap(), opt);
    }

    #[test]
    fn repair_clips_left_dual() {
        let g = BipartiteInstance::new(1, 1, [(0, 0, 5)]).unwrap();
        let y = repair_matching_duals(&g, &DualVector(vec![10, 0])).unwrap();
        assert_eq!(y.0, vec![5, 0]);
    }

    #[test]
    fn repair_keeps_isolated_left_vertex() {
        let g = BipartiteInstance::new(2, 1, [(0, 0, 5)]).unwrap();
        let y = repair_matching_duals(&g, &DualVector(vec![9, 9, 9])).unwrap();
        assert_eq!(y.0, vec![-4, 9, 9]);
        assert!(g.is_matching_feasible(&y));
    }

    #[test]
    fn repair_rejects_wrong_dimension() {
        let g = BipartiteInstance::new(1, 1, [(0, 0, 5)]).unwrap();
        assert!(matches!(
            repair_matching_duals(&g, &DualVector(vec![0])),
            Err(MatchingError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn optimal_dual_k11() {
        let g = BipartiteInstance::new(1, 1, [(0, 0, 5)]).unwrap();
        let y = optimal_matching_dual(&g).unwrap();
        assert_eq!(y[0] + y[1], 5);
    }

    #[test]
    fn optimal_dual_2x2_is_tight_on_diagonal() {
        let g = BipartiteInstance::new(2, 2, [(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 1)]).unwrap();
        let y = optimal_matching_dual(&g).unwrap();
        assert!(g.is_matching_feasible(&y));
        assert_eq!(g.slack(0, &y), 0);
        assert_eq!(g.slack(3, &y), 0);
        // LP dual optimum equals the primal optimum 2.
        assert_eq!(y.iter().sum::<i64>(), 2);
    }
}
