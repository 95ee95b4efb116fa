//! Two-stage highest-label push-relabel, optionally warm-started from a
//! predicted preflow.
//!
//! Stage one pushes excess towards the sink until no vertex below height `n`
//! holds any; its flow into `t` is already maximum. Stage two removes flow
//! cycles and returns the stranded excess to `s`, leaving a feasible flow of
//! the same value.
//!
//! A prediction is made usable in one topological pass ([`fix_preflow`]) and
//! given exact distance labels ([`shortest_path_labeling`]). Relabel work is
//! then bounded by how far those labels sit below `n`.

mod preflow;
mod solver;

pub use preflow::{fix_preflow, make_acyclic};
pub use solver::{hl_push_relabel, PushRelabelResult, WarmStart};

use std::collections::VecDeque;

use thiserror::Error;

use crate::graphcore::{FlowNetwork, FlowState, PreflowViolation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PushRelabelError {
    #[error("warm labeling is invalid: {0}")]
    InvalidWarmLabeling(LabelingViolation),
    #[error("warm flow is not a preflow: {0:?}")]
    InvalidWarmPreflow(PreflowViolation),
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// Why a labeling is not valid for a preflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LabelingViolation {
    #[error("source height {0} is not n")]
    Source(usize),
    #[error("sink height {0} is not 0")]
    Sink(usize),
    #[error("vertex {vertex} has height {height} above n")]
    TooHigh { vertex: usize, height: usize },
    #[error("residual arc {from} -> {to} drops more than one level")]
    Steep { from: usize, to: usize },
}

/// Per-vertex heights in `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightLabeling(pub Vec<usize>);

impl HeightLabeling {
    /// `sum_v (n - h_v)`: the most relabels a warm start can still need.
    pub fn deficit(&self) -> u64 {
        let n = self.0.len();
        self.0.iter().map(|&h| (n - h.min(n)) as u64).sum()
    }
}

/// Residual arcs leaving every vertex as `(arc, forward)` pairs, in arc order
/// with forward and backward uses interleaved as they occur.
pub(crate) fn incidence(net: &FlowNetwork) -> Vec<Vec<(usize, bool)>> {
    let mut out = vec![Vec::new(); net.n()];
    for (id, a) in net.arcs().iter().enumerate() {
        out[a.from].push((id, true));
        out[a.to].push((id, false));
    }
    out
}

pub(crate) fn residual(net: &FlowNetwork, flow: &[i64], arc: usize, forward: bool) -> i64 {
    if forward {
        net.arcs()[arc].cap - flow[arc]
    } else {
        flow[arc]
    }
}

pub(crate) fn head(net: &FlowNetwork, arc: usize, forward: bool) -> usize {
    let a = net.arcs()[arc];
    if forward {
        a.to
    } else {
        a.from
    }
}

/// Checks `h_s = n`, `h_t = 0`, heights within `0..=n`, and `h_u <= h_v + 1`
/// on every residual arc `(u, v)`.
pub fn check_labeling(
    net: &FlowNetwork,
    flow: &FlowState,
    labeling: &HeightLabeling,
) -> Result<(), LabelingViolation> {
    let n = net.n();
    let h = &labeling.0;
    if h[net.source()] != n {
        return Err(LabelingViolation::Source(h[net.source()]));
    }
    if h[net.sink()] != 0 {
        return Err(LabelingViolation::Sink(h[net.sink()]));
    }
    if let Some((vertex, &height)) = h.iter().enumerate().find(|(_, &x)| x > n) {
        return Err(LabelingViolation::TooHigh { vertex, height });
    }
    for (id, a) in net.arcs().iter().enumerate() {
        if a.cap - flow.flow[id] > 0 && h[a.from] > h[a.to] + 1 {
            return Err(LabelingViolation::Steep {
                from: a.from,
                to: a.to,
            });
        }
        if flow.flow[id] > 0 && h[a.to] > h[a.from] + 1 {
            return Err(LabelingViolation::Steep {
                from: a.to,
                to: a.from,
            });
        }
    }
    Ok(())
}

/// `h_v = min(n, residual distance from v to t)`, with `h_s = n`.
pub fn shortest_path_labeling(net: &FlowNetwork, flow: &FlowState) -> HeightLabeling {
    let n = net.n();
    let (s, t) = (net.source(), net.sink());
    let inc = incidence(net);
    let mut h = vec![n; n];
    h[t] = 0;
    let mut queue = VecDeque::from([t]);
    // Walk residual arcs backwards: u reaches v when (u, v) is residual.
    while let Some(v) = queue.pop_front() {
        for &(arc, fwd) in &inc[v] {
            // The arc seen from v's side is (v, u); the residual arc into v
            // is its opposite use.
            let u = head(net, arc, fwd);
            if h[u] == n && u != t && residual(net, &flow.flow, arc, !fwd) > 0 && h[v] + 1 < n {
                h[u] = h[v] + 1;
                queue.push_back(u);
            }
        }
    }
    h[s] = n;
    HeightLabeling(h)
}

/// New height for a vertex with no admissible arc:
/// `min(n, 1 + min h_v)` over its residual neighbours, `n` if there are none.
pub fn relabel_value(
    n: usize,
    residual_neighbour_heights: impl IntoIterator<Item = usize>,
) -> usize {
    residual_neighbour_heights
        .into_iter()
        .min()
        .map_or(n, |m| n.min(m + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeling_of_direct_arc() {
        let net = FlowNetwork::new(3, [(0, 1, 1, 0), (1, 2, 1, 0)], 0, 2).unwrap();
        let f = FlowState { flow: vec![1, 0] };
        let h = shortest_path_labeling(&net, &f);
        assert_eq!(h.0, vec![3, 1, 0]);
        assert!(check_labeling(&net, &f, &h).is_ok());
        // With s -> a still residual, h_s = n is too steep.
        assert!(check_labeling(&net, &FlowState::zero(&net), &h).is_err());
    }

    #[test]
    fn disconnected_vertex_gets_n() {
        let net = FlowNetwork::new(3, [(0, 2, 1, 0)], 0, 2).unwrap();
        let h = shortest_path_labeling(&net, &FlowState::zero(&net));
        assert_eq!(h.0[1], 3);
    }

    #[test]
    fn saturated_arc_is_not_residual() {
        let net = FlowNetwork::new(3, [(0, 1, 1, 0), (1, 2, 1, 0)], 0, 2).unwrap();
        let f = FlowState { flow: vec![1, 1] };
        let h = shortest_path_labeling(&net, &f);
        // 1 can no longer reach t.
        assert_eq!(h.0, vec![3, 3, 0]);
        assert!(check_labeling(&net, &f, &h).is_ok());
    }

    #[test]
    fn relabel_rule() {
        assert_eq!(relabel_value(5, [0]), 1);
        assert_eq!(relabel_value(5, []), 5);
        assert_eq!(relabel_value(5, [4, 7]), 5);
    }

    #[test]
    fn steep_arc_is_rejected() {
        let net = FlowNetwork::new(3, [(0, 1, 1, 0), (1, 2, 1, 0)], 0, 2).unwrap();
        let bad = HeightLabeling(vec![3, 2, 0]);
        assert_eq!(
            check_labeling(&net, &FlowState::zero(&net), &bad),
            Err(LabelingViolation::Steep { from: 1, to: 2 })
        );
    }
}
