use std::collections::HashSet;
use std::ops::{Deref, DerefMut};

use super::GraphError;

/// Largest accepted absolute value for costs, lengths and capacities.
///
/// Keeps every `n * C` style sum comfortably inside `i64`.
pub const MAX_ABS_WEIGHT: i64 = 1 << 31;

fn check_weight(edge: usize, value: i64) -> Result<(), GraphError> {
    if value.abs() > MAX_ABS_WEIGHT {
        return Err(GraphError::WeightOutOfRange { edge, value });
    }
    Ok(())
}

/// An edge of a bipartite instance. `right` is indexed within the right side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteEdge {
    pub left: usize,
    pub right: usize,
    pub cost: i64,
}

/// Weighted bipartite graph with optional per-vertex demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteInstance {
    n_left: usize,
    n_right: usize,
    edges: Vec<BipartiteEdge>,
    demands: Option<Vec<i64>>,
}

impl BipartiteInstance {
    /// Simple bipartite graph; parallel edges are rejected.
    pub fn new(
        n_left: usize,
        n_right: usize,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, GraphError> {
        let inst = Self::multigraph(n_left, n_right, edges)?;
        let mut seen = HashSet::new();
        for (id, e) in inst.edges.iter().enumerate() {
            if !seen.insert((e.left, e.right)) {
                return Err(GraphError::ParallelEdge {
                    edge: id,
                    left: e.left,
                    right: e.right,
                });
            }
        }
        Ok(inst)
    }

    /// Bipartite multigraph; edge ids, not endpoint pairs, identify edges.
    pub fn multigraph(
        n_left: usize,
        n_right: usize,
        edges: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (id, (left, right, cost)) in edges.into_iter().enumerate() {
            if left >= n_left {
                return Err(GraphError::VertexOutOfRange {
                    vertex: left,
                    n: n_left,
                });
            }
            if right >= n_right {
                return Err(GraphError::VertexOutOfRange {
                    vertex: right,
                    n: n_right,
                });
            }
            if cost < 0 {
                return Err(GraphError::NegativeCost { edge: id, cost });
            }
            check_weight(id, cost)?;
            out.push(BipartiteEdge { left, right, cost });
        }
        Ok(Self {
            n_left,
            n_right,
            edges: out,
            demands: None,
        })
    }

    /// Attach demands `b`, indexed over the flattened vertex set.
    pub fn with_demands(mut self, demands: Vec<i64>) -> Result<Self, GraphError> {
        if demands.len() != self.n_vertices() {
            return Err(GraphError::DemandLength {
                got: demands.len(),
                expected: self.n_vertices(),
            });
        }
        for (vertex, &demand) in demands.iter().enumerate() {
            if demand <= 0 || demand > MAX_ABS_WEIGHT {
                return Err(GraphError::NonPositiveDemand { vertex, demand });
            }
        }
        self.demands = Some(demands);
        Ok(self)
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

    pub fn edges(&self) -> &[BipartiteEdge] {
        &self.edges
    }

    pub fn demands(&self) -> Option<&[i64]> {
        self.demands.as_deref()
    }

    /// Demand of a flattened vertex (1 when no demands are attached).
    pub fn demand(&self, v: usize) -> i64 {
        self.demands.as_ref().map_or(1, |b| b[v])
    }

    /// Flattened id of right vertex `j`.
    pub fn right_id(&self, j: usize) -> usize {
        self.n_left + j
    }

    /// Slack `c_ij - y_i - y_j` of edge `e` under `y`.
    pub fn slack(&self, e: usize, y: &[i64]) -> i64 {
        let edge = &self.edges[e];
        edge.cost - y[edge.left] - y[self.n_left + edge.right]
    }

    /// First edge whose dual constraint `y_i + y_j <= c_ij` fails.
    pub fn first_violated_edge(&self, y: &[i64]) -> Option<usize> {
        (0..self.edges.len()).find(|&e| self.slack(e, y) < 0)
    }

    pub fn is_matching_feasible(&self, y: &[i64]) -> bool {
        y.len() == self.n_vertices() && self.first_violated_edge(y).is_none()
    }

    pub fn max_cost(&self) -> i64 {
        self.edges.iter().map(|e| e.cost).max().unwrap_or(0)
    }
}

/// Arc of a directed graph with a signed length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthArc {
    pub from: usize,
    pub to: usize,
    pub len: i64,
}

/// Directed graph with signed integer arc lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedLengthGraph {
    n: usize,
    arcs: Vec<LengthArc>,
    out: Vec<Vec<usize>>,
}

impl DirectedLengthGraph {
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        let mut out = vec![Vec::new(); n];
        for (id, (from, to, len)) in arcs.into_iter().enumerate() {
            for v in [from, to] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if from == to {
                return Err(GraphError::SelfLoop {
                    arc: id,
                    vertex: from,
                });
            }
            check_weight(id, len)?;
            out[from].push(id);
            list.push(LengthArc { from, to, len });
        }
        Ok(Self { n, arcs: list, out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[LengthArc] {
        &self.arcs
    }

    pub fn out_arcs(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    /// `len(u,v) + y_u - y_v`.
    pub fn reduced_length(&self, arc: usize, y: &[i64]) -> i64 {
        let a = &self.arcs[arc];
        a.len + y[a.from] - y[a.to]
    }
}

/// Capacitated arc; `cost` is only used by min-cost reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub cap: i64,
    pub cost: i64,
}

/// Capacitated s-t network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<FlowArc>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    /// Arcs are `(from, to, capacity, cost)`.
    pub fn new(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize, i64, i64)>,
        source: usize,
        sink: usize,
    ) -> Result<Self, GraphError> {
        for v in [source, sink] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        if source == sink {
            return Err(GraphError::SourceIsSink(source));
        }
        let mut list = Vec::new();
        for (id, (from, to, cap, cost)) in arcs.into_iter().enumerate() {
            for v in [from, to] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if from == to {
                return Err(GraphError::SelfLoop {
                    arc: id,
                    vertex: from,
                });
            }
            if !(0..=MAX_ABS_WEIGHT).contains(&cap) {
                return Err(GraphError::BadCapacity { arc: id, cap });
            }
            check_weight(id, cost)?;
            list.push(FlowArc {
                from,
                to,
                cap,
                cost,
            });
        }
        Ok(Self {
            n,
            arcs: list,
            source,
            sink,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Same topology and terminals with new capacities.
    pub fn with_capacities(&self, caps: &[i64]) -> Result<Self, GraphError> {
        if caps.len() != self.arcs.len() {
            return Err(GraphError::DimensionMismatch {
                got: caps.len(),
                expected: self.arcs.len(),
            });
        }
        Self::new(
            self.n,
            self.arcs
                .iter()
                .zip(caps)
                .map(|(a, &c)| (a.from, a.to, c, a.cost)),
            self.source,
            self.sink,
        )
    }
}

/// Which preflow condition a [`FlowState`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreflowViolation {
    Negative { arc: usize },
    OverCapacity { arc: usize },
    Deficit { vertex: usize },
}

/// Per-arc flow values over a [`FlowNetwork`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowState {
    pub flow: Vec<i64>,
}

impl FlowState {
    pub fn zero(net: &FlowNetwork) -> Self {
        Self {
            flow: vec![0; net.m()],
        }
    }

    /// Inflow minus outflow at every vertex.
    pub fn excess(&self, net: &FlowNetwork) -> Vec<i64> {
        let mut ex = vec![0; net.n()];
        for (a, &f) in net.arcs().iter().zip(&self.flow) {
            ex[a.from] -= f;
            ex[a.to] += f;
        }
        ex
    }

    /// Net flow into the sink.
    pub fn value(&self, net: &FlowNetwork) -> i64 {
        self.excess(net)[net.sink()]
    }

    /// Checks non-negativity, capacity and weak conservation off the terminals.
    pub fn check_preflow(&self, net: &FlowNetwork) -> Result<(), PreflowViolation> {
        for (arc, (a, &f)) in net.arcs().iter().zip(&self.flow).enumerate() {
            if f < 0 {
                return Err(PreflowViolation::Negative { arc });
            }
            if f > a.cap {
                return Err(PreflowViolation::OverCapacity { arc });
            }
        }
        let ex = self.excess(net);
        for (vertex, &e) in ex.iter().enumerate() {
            if vertex != net.source() && vertex != net.sink() && e < 0 {
                return Err(PreflowViolation::Deficit { vertex });
            }
        }
        Ok(())
    }

    /// A preflow with zero excess everywhere off the terminals.
    pub fn is_feasible_flow(&self, net: &FlowNetwork) -> bool {
        self.check_preflow(net).is_ok()
            && self
                .excess(net)
                .iter()
                .enumerate()
                .all(|(v, &e)| v == net.source() || v == net.sink() || e == 0)
    }
}

/// Per-vertex integer duals / potentials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DualVector(pub Vec<i64>);

impl DualVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for DualVector {
    type Target = Vec<i64>;

    fn deref(&self) -> &Vec<i64> {
        &self.0
    }
}

impl DerefMut for DualVector {
    fn deref_mut(&mut self) -> &mut Vec<i64> {
        &mut self.0
    }
}

impl From<Vec<i64>> for DualVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// Operation counts recorded by a single solve.
///
/// Each field is the measured counterpart of a quantity bounded by a
/// prediction-error runtime guarantee. All zero at the start of a solve and
/// only ever incremented.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Primal-dual main-loop iterations after the initial matching / max flow.
    pub while_iterations: u64,
    pub dijkstra_calls: u64,
    /// Units of flow pushed by Ford-Fulkerson inside the main loop.
    pub ff_augmentations: u64,
    /// Size of the initial tight-subgraph matching (flow value for b-matching).
    pub first_match_size: u64,
    pub relabels: u64,
    pub saturating_pushes: u64,
    pub nonsaturating_pushes: u64,
    pub bellman_ford_passes: u64,
    pub round_iterations: u64,
}

impl OpCounters {
    /// Field-wise sum, used when a pipeline composes several solves.
    pub fn merged(self, other: OpCounters) -> OpCounters {
        OpCounters {
            while_iterations: self.while_iterations + other.while_iterations,
            dijkstra_calls: self.dijkstra_calls + other.dijkstra_calls,
            ff_augmentations: self.ff_augmentations + other.ff_augmentations,
            first_match_size: self.first_match_size + other.first_match_size,
            relabels: self.relabels + other.relabels,
            saturating_pushes: self.saturating_pushes + other.saturating_pushes,
            nonsaturating_pushes: self.nonsaturating_pushes + other.nonsaturating_pushes,
            bellman_ford_passes: self.bellman_ford_passes + other.bellman_ford_passes,
            round_iterations: self.round_iterations + other.round_iterations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_rejects_bad_input() {
        assert!(matches!(
            BipartiteInstance::new(1, 1, [(1, 0, 3)]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            BipartiteInstance::new(1, 1, [(0, 0, -1)]),
            Err(GraphError::NegativeCost { .. })
        ));
        assert!(matches!(
            BipartiteInstance::new(1, 1, [(0, 0, 1), (0, 0, 2)]),
            Err(GraphError::ParallelEdge { edge: 1, .. })
        ));
        assert!(BipartiteInstance::multigraph(1, 1, [(0, 0, 1), (0, 0, 2)]).is_ok());
        assert!(matches!(
            BipartiteInstance::new(1, 1, [(0, 0, MAX_ABS_WEIGHT + 1)]),
            Err(GraphError::WeightOutOfRange { .. })
        ));
    }

    #[test]
    fn demands_are_validated() {
        let g = BipartiteInstance::new(1, 2, [(0, 0, 1)]).unwrap();
        assert!(g.clone().with_demands(vec![1, 1]).is_err());
        assert!(g.clone().with_demands(vec![2, 1, 0]).is_err());
        let g = g.with_demands(vec![2, 1, 1]).unwrap();
        assert_eq!(g.demand(0), 2);
    }

    #[test]
    fn directed_graph_rejects_self_loops() {
        assert!(matches!(
            DirectedLengthGraph::new(2, [(1, 1, 0)]),
            Err(GraphError::SelfLoop { arc: 0, vertex: 1 })
        ));
        assert!(DirectedLengthGraph::new(2, [(0, 2, 0)]).is_err());
    }

    #[test]
    fn flow_network_rejects_bad_terminals() {
        assert!(matches!(
            FlowNetwork::new(2, [(0, 1, 1, 0)], 1, 1),
            Err(GraphError::SourceIsSink(1))
        ));
        assert!(FlowNetwork::new(2, [(0, 1, -1, 0)], 0, 1).is_err());
    }

    #[test]
    fn preflow_checks() {
        let net = FlowNetwork::new(3, [(0, 1, 2, 0), (1, 2, 1, 0)], 0, 2).unwrap();
        let f = FlowState { flow: vec![2, 1] };
        assert!(f.check_preflow(&net).is_ok());
        assert!(!f.is_feasible_flow(&net));
        assert_eq!(f.excess(&net), vec![-2, 1, 1]);
        let bad = FlowState { flow: vec![1, 2] };
        assert_eq!(
            bad.check_preflow(&net),
            Err(PreflowViolation::OverCapacity { arc: 1 })
        );
        let deficit = FlowState { flow: vec![0, 1] };
        assert_eq!(
            deficit.check_preflow(&net),
            Err(PreflowViolation::Deficit { vertex: 1 })
        );
    }
}
