use super::{offset, LearnedReduction, ReductionError};
use crate::graphcore::{BipartiteInstance, GraphError, MAX_ABS_WEIGHT};
use crate::matching::MatchingResult;

/// Bipartite multigraph with signed edge weights and a degree bound per
/// vertex. A complete DCS is an edge subset meeting every bound with
/// equality; the goal is one of maximum total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcsInstance {
    n_left: usize,
    n_right: usize,
    edges: Vec<(usize, usize, i64)>,
    upper: Vec<i64>,
}

impl DcsInstance {
    /// `upper` is indexed over the flattened vertex set, left side first.
    pub fn new(
        n_left: usize,
        n_right: usize,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
        upper: Vec<i64>,
    ) -> Result<Self, ReductionError> {
        let edges: Vec<_> = edges.into_iter().collect();
        for (id, &(l, r, w)) in edges.iter().enumerate() {
            if l >= n_left {
                return Err(GraphError::VertexOutOfRange {
                    vertex: l,
                    n: n_left,
                }
                .into());
            }
            if r >= n_right {
                return Err(GraphError::VertexOutOfRange {
                    vertex: r,
                    n: n_right,
                }
                .into());
            }
            if w.abs() > MAX_ABS_WEIGHT {
                return Err(GraphError::WeightOutOfRange { edge: id, value: w }.into());
            }
        }
        if upper.len() != n_left + n_right {
            return Err(ReductionError::BoundLength {
                got: upper.len(),
                expected: n_left + n_right,
            });
        }
        let inst = Self {
            n_left,
            n_right,
            edges,
            upper,
        };
        let degree = inst.degrees();
        for (vertex, (&upper, &degree)) in inst.upper.iter().zip(&degree).enumerate() {
            if upper < 0 || upper > degree {
                return Err(ReductionError::InfeasibleBounds {
                    vertex,
                    upper,
                    degree,
                });
            }
        }
        Ok(inst)
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn n_vertices(&self) -> usize {
        self.n_left + self.n_right
    }

    /// `(left, right, weight)` with `right` indexed within the right side.
    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    /// Degree of every flattened vertex, parallel edges counted.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d = vec![0; self.n_vertices()];
        for &(l, r, _) in &self.edges {
            d[l] += 1;
            d[self.n_left + r] += 1;
        }
        d
    }
}

/// A complete DCS: chosen source edge ids in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcsSolution {
    pub edges: Vec<usize>,
    pub weight: i64,
}

/// DCS as perfect matching. Each vertex `i` of degree `d` and bound `u`
/// becomes `d` external nodes on its own side and `d - u` internal nodes on
/// the other side, joined as a complete bipartite graph at cost `k`. Source
/// edge `e = (i, j)` joins the `e`-th external slots of `i` and `j` at cost
/// `k - w_e`, with slots handed out in edge-id order.
///
/// Every perfect matching has the same size, so minimising cost maximises
/// the weight of the external-external edges it uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DcsReduction {
    source: DcsInstance,
    target: BipartiteInstance,
    shift: i64,
}

impl DcsReduction {
    pub fn source(&self) -> &DcsInstance {
        &self.source
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Source edge that created target edge `e`; `None` for internal edges.
    pub fn source_edge(&self, e: usize) -> Option<usize> {
        (e < self.source.edges.len()).then_some(e)
    }
}

impl LearnedReduction for DcsReduction {
    type Source = DcsInstance;
    type Solution = DcsSolution;

    fn reduce(source: &DcsInstance) -> Result<Self, ReductionError> {
        reduce_dcs_to_matching(source)
    }

    fn target(&self) -> &BipartiteInstance {
        &self.target
    }

    fn pull_back(&self, solved: &MatchingResult) -> Result<DcsSolution, ReductionError> {
        let edges: Vec<usize> = solved
            .matched_edges
            .iter()
            .filter_map(|&e| self.source_edge(e))
            .collect();
        let weight = edges.iter().map(|&e| self.source.edges[e].2).sum();
        Ok(DcsSolution { edges, weight })
    }

    fn no_solution(&self) -> ReductionError {
        ReductionError::NoCompleteDcs
    }
}

pub fn reduce_dcs_to_matching(src: &DcsInstance) -> Result<DcsReduction, ReductionError> {
    let nl = src.n_left;
    let nv = src.n_vertices();
    let degree = src.degrees();
    let delta: Vec<i64> = degree.iter().zip(&src.upper).map(|(d, u)| d - u).collect();

    // Target left side: externals of left vertices, then internals of right
    // vertices. Target right side mirrors it.
    let mut ext_base = vec![0usize; nv];
    let mut int_base = vec![0usize; nv];
    let (mut left_next, mut right_next) = (0usize, 0usize);
    for v in 0..nl {
        ext_base[v] = left_next;
        left_next += degree[v] as usize;
    }
    for v in nl..nv {
        ext_base[v] = right_next;
        right_next += degree[v] as usize;
    }
    for v in nl..nv {
        int_base[v] = left_next;
        left_next += delta[v] as usize;
    }
    for v in 0..nl {
        int_base[v] = right_next;
        right_next += delta[v] as usize;
    }
    if left_next != right_next {
        return Err(ReductionError::NoCompleteDcs);
    }

    let shift = offset(src.edges.iter().map(|e| e.2));
    let mut used = vec![0usize; nv];
    let mut edges = Vec::new();
    for &(l, r, w) in &src.edges {
        let rv = nl + r;
        edges.push((ext_base[l] + used[l], ext_base[rv] + used[rv], shift - w));
        used[l] += 1;
        used[rv] += 1;
    }
    for v in 0..nv {
        for k in 0..delta[v] as usize {
            for q in 0..degree[v] as usize {
                let (ext, int) = (ext_base[v] + q, int_base[v] + k);
                edges.push(if v < nl {
                    (ext, int, shift)
                } else {
                    (int, ext, shift)
                });
            }
        }
    }
    let target = BipartiteInstance::multigraph(left_next, right_next, edges)?;
    Ok(DcsReduction {
        source: src.clone(),
        target,
        shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::DualVector;
    use crate::matching::solve_mwpm;

    fn solve(src: &DcsInstance) -> Result<DcsSolution, ReductionError> {
        let red = reduce_dcs_to_matching(src)?;
        let n = red.target().n_vertices();
        let solved = solve_mwpm(red.target(), &DualVector::zeros(n))?;
        red.pull_back(&solved)
    }

    #[test]
    fn parallel_edges_pick_heavier() {
        let src = DcsInstance::new(1, 1, [(0, 0, 3), (0, 0, 7)], vec![1, 1]).unwrap();
        let sol = solve(&src).unwrap();
        assert_eq!(sol.edges, vec![1]);
        assert_eq!(sol.weight, 7);
    }

    #[test]
    fn sizes_follow_construction() {
        let src = DcsInstance::new(
            2,
            2,
            [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
            vec![1; 4],
        )
        .unwrap();
        let red = reduce_dcs_to_matching(&src).unwrap();
        // 2m externals plus one internal per vertex; m + sum(delta * d) edges.
        assert_eq!(red.target().n_vertices(), 8 + 4);
        assert_eq!(red.target().edges().len(), 4 + 4 * 2);
    }

    #[test]
    fn bounds_are_validated() {
        assert!(matches!(
            DcsInstance::new(1, 1, [(0, 0, 1)], vec![2, 1]),
            Err(ReductionError::InfeasibleBounds { vertex: 0, .. })
        ));
        assert!(matches!(
            DcsInstance::new(1, 1, [(0, 0, 1)], vec![1]),
            Err(ReductionError::BoundLength { .. })
        ));
    }

    #[test]
    fn unequal_sides_have_no_complete_dcs() {
        let src = DcsInstance::new(1, 1, [(0, 0, 1), (0, 0, 2)], vec![2, 1]).unwrap();
        assert_eq!(
            reduce_dcs_to_matching(&src),
            Err(ReductionError::NoCompleteDcs)
        );
    }

    #[test]
    fn zero_bounds_choose_nothing() {
        let src = DcsInstance::new(1, 1, [(0, 0, 5)], vec![0, 0]).unwrap();
        let sol = solve(&src).unwrap();
        assert!(sol.edges.is_empty());
        assert_eq!(sol.weight, 0);
    }
}
