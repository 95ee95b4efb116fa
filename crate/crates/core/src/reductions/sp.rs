use super::{offset, LearnedReduction, ReductionError};
use crate::graphcore::{BipartiteInstance, DirectedLengthGraph, DualVector};
use crate::matching::{solve_mwpm, MatchingResult};

/// Shortest paths as matching: vertex `u` becomes `u1` on the left and `u2`
/// on the right, arc `(u, v)` becomes edge `(u1, v2)` and every vertex gets
/// an identity edge `(u1, u2)`.
///
/// The max-weight form uses weights `-len` and `0`. Here the weights are
/// negated and shifted by `k = 1 + max |len|`, so edge `(u1, v2)` costs
/// `k + len` and identity edges cost `k`, and the min-cost solver applies.
/// The identity matching is optimal exactly when there is no negative cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpReduction {
    target: BipartiteInstance,
    n: usize,
    m: usize,
    shift: i64,
}

impl SpReduction {
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Source arc that created target edge `e`, or `None` for identity edges.
    pub fn source_arc(&self, e: usize) -> Option<usize> {
        (e < self.m).then_some(e)
    }

    /// Weight of a perfect matching in the max-weight form.
    pub fn max_weight_of(&self, total_cost: i64) -> i64 {
        self.n as i64 * self.shift - total_cost
    }

    /// Potential `pi_u = -y_{u1}` read off an optimal target dual; it is an
    /// RE dual of the source whenever the source has no negative cycle.
    pub fn potential_from(&self, target_dual: &[i64]) -> DualVector {
        DualVector(target_dual[..self.n].iter().map(|&y| -y).collect())
    }

    /// Target-shaped dual whose pull-back is `pi`: left `-pi_u`, right
    /// `k + pi_u`. Used to turn a source-level potential into a prediction.
    pub fn dual_from_potential(&self, pi: &[i64]) -> DualVector {
        let mut y: Vec<i64> = pi.iter().map(|&p| -p).collect();
        y.extend(pi.iter().map(|&p| self.shift + p));
        DualVector(y)
    }
}

impl LearnedReduction for SpReduction {
    type Source = DirectedLengthGraph;
    /// An RE-feasible potential for the source graph.
    type Solution = DualVector;

    fn reduce(g: &DirectedLengthGraph) -> Result<Self, ReductionError> {
        reduce_sp_to_matching(g)
    }

    fn target(&self) -> &BipartiteInstance {
        &self.target
    }

    fn pull_back(&self, solved: &MatchingResult) -> Result<DualVector, ReductionError> {
        if self.max_weight_of(solved.total_cost) > 0 {
            return Err(ReductionError::NegativeCycle);
        }
        Ok(self.potential_from(&solved.final_duals))
    }
}

/// Builds the `n + n` vertex, `m + n` edge target; arc edges come first in
/// arc order, then identity edges in vertex order.
pub fn reduce_sp_to_matching(g: &DirectedLengthGraph) -> Result<SpReduction, ReductionError> {
    let shift = offset(g.arcs().iter().map(|a| a.len));
    let edges = g
        .arcs()
        .iter()
        .map(|a| (a.from, a.to, shift + a.len))
        .chain((0..g.n()).map(|u| (u, u, shift)));
    let target = BipartiteInstance::multigraph(g.n(), g.n(), edges)?;
    Ok(SpReduction {
        target,
        n: g.n(),
        m: g.m(),
        shift,
    })
}

/// `true` iff the max-weight perfect matching of the target is positive,
/// which happens exactly when `g` has a negative cycle.
pub fn detect_negative_cycle_via_matching(g: &DirectedLengthGraph) -> Result<bool, ReductionError> {
    let red = reduce_sp_to_matching(g)?;
    let solved = solve_mwpm(&red.target, &DualVector::zeros(2 * g.n()))?;
    Ok(red.max_weight_of(solved.total_cost) > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaths::re_feasible;

    #[test]
    fn single_vertex() {
        let g = DirectedLengthGraph::new(1, []).unwrap();
        let r = reduce_sp_to_matching(&g).unwrap();
        assert_eq!(r.target().edges().len(), 1);
        assert_eq!(r.max_weight_of(r.shift()), 0);
        assert!(!detect_negative_cycle_via_matching(&g).unwrap());
    }

    #[test]
    fn two_cycle_has_positive_weight() {
        let g = DirectedLengthGraph::new(2, [(0, 1, -1), (1, 0, -1)]).unwrap();
        let r = reduce_sp_to_matching(&g).unwrap();
        assert_eq!(r.target().edges().len(), 4);
        let solved = solve_mwpm(r.target(), &DualVector::zeros(4)).unwrap();
        assert_eq!(r.max_weight_of(solved.total_cost), 2);
        assert!(detect_negative_cycle_via_matching(&g).unwrap());
    }

    #[test]
    fn nonnegative_lengths_have_no_cycle() {
        let g = DirectedLengthGraph::new(3, [(0, 1, 4), (1, 2, 0), (2, 0, 1)]).unwrap();
        assert!(!detect_negative_cycle_via_matching(&g).unwrap());
    }

    #[test]
    fn pulled_back_potential_is_feasible() {
        let g =
            DirectedLengthGraph::new(3, [(0, 1, -2), (1, 2, 3), (0, 2, 2), (2, 1, -1)]).unwrap();
        let r = reduce_sp_to_matching(&g).unwrap();
        let solved = solve_mwpm(r.target(), &DualVector::zeros(6)).unwrap();
        let pi = r.pull_back(&solved).unwrap();
        assert!(re_feasible(&g, &pi));
    }

    #[test]
    fn potential_round_trip() {
        let g = DirectedLengthGraph::new(2, [(0, 1, -3)]).unwrap();
        let r = reduce_sp_to_matching(&g).unwrap();
        let y = r.dual_from_potential(&[0, -3]);
        assert!(r.target().is_matching_feasible(&y));
        assert_eq!(r.potential_from(&y).0, vec![0, -3]);
    }
}
