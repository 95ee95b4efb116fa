use std::collections::{BTreeSet, VecDeque};

use super::preflow::support_order;
use super::{
    check_labeling, fix_preflow, head, incidence, make_acyclic, relabel_value, residual,
    shortest_path_labeling, HeightLabeling, PushRelabelError,
};
use crate::graphcore::{FlowNetwork, FlowState, OpCounters};

/// How stage one is initialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WarmStart {
    /// Saturate the arcs leaving `s`; every other height starts at 0.
    Cold,
    /// Raw per-arc flow prediction, repaired with [`fix_preflow`] and
    /// labelled with [`shortest_path_labeling`].
    Prediction(Vec<i64>),
    /// A preflow and labeling used exactly as given; both are validated.
    Explicit {
        flow: FlowState,
        labeling: HeightLabeling,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushRelabelResult {
    /// A maximum flow, conserved everywhere except at `s` and `t`.
    pub flow: FlowState,
    pub value: i64,
    /// `true` on the source side of a minimum cut: the vertices that cannot
    /// reach `t` in the final residual network.
    pub source_side: Vec<bool>,
    pub counters: OpCounters,
    /// Heights stage one started from.
    pub initial_labeling: HeightLabeling,
}

/// Two-stage highest-label push-relabel.
///
/// The active vertex of greatest height is processed first, lowest id on
/// ties. Each push moves `min(excess, residual)`.
pub fn hl_push_relabel(
    net: &FlowNetwork,
    warm: WarmStart,
) -> Result<PushRelabelResult, PushRelabelError> {
    let n = net.n();
    let (s, t) = (net.source(), net.sink());
    let (flow, labeling) = match warm {
        WarmStart::Cold => {
            let mut f = FlowState::zero(net);
            for (id, a) in net.arcs().iter().enumerate() {
                if a.from == s {
                    f.flow[id] = a.cap;
                }
            }
            let mut h = vec![0; n];
            h[s] = n;
            (f, HeightLabeling(h))
        }
        WarmStart::Prediction(pred) => {
            let f = fix_preflow(net, &pred)?;
            let h = shortest_path_labeling(net, &f);
            (f, h)
        }
        WarmStart::Explicit { flow, labeling } => {
            for (got, expected) in [(flow.flow.len(), net.m()), (labeling.0.len(), n)] {
                if got != expected {
                    return Err(PushRelabelError::DimensionMismatch { got, expected });
                }
            }
            flow.check_preflow(net)
                .map_err(PushRelabelError::InvalidWarmPreflow)?;
            check_labeling(net, &flow, &labeling).map_err(PushRelabelError::InvalidWarmLabeling)?;
            (flow, labeling)
        }
    };

    let initial_labeling = labeling.clone();
    let mut counters = OpCounters::default();
    let mut f = flow.flow;
    let mut h = labeling.0;
    let mut excess = FlowState { flow: f.clone() }.excess(net);
    let inc = incidence(net);

    // buckets[k]: active vertices at height k < n.
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n.max(1)];
    let is_active =
        |v: usize, excess: &[i64], h: &[usize]| v != s && v != t && excess[v] > 0 && h[v] < n;
    for v in 0..n {
        if is_active(v, &excess, &h) {
            buckets[h[v]].insert(v);
        }
    }
    let mut top = n.saturating_sub(1);
    loop {
        while top > 0 && buckets[top].is_empty() {
            top -= 1;
        }
        let Some(&u) = buckets[top].first() else {
            break;
        };

        let admissible = inc[u]
            .iter()
            .copied()
            .find(|&(a, fwd)| residual(net, &f, a, fwd) > 0 && h[u] == h[head(net, a, fwd)] + 1);
        match admissible {
            Some((a, fwd)) => {
                let v = head(net, a, fwd);
                let room = residual(net, &f, a, fwd);
                let amount = excess[u].min(room);
                f[a] += if fwd { amount } else { -amount };
                excess[u] -= amount;
                excess[v] += amount;
                if amount == room {
                    counters.saturating_pushes += 1;
                } else {
                    counters.nonsaturating_pushes += 1;
                }
                if excess[u] == 0 {
                    buckets[h[u]].remove(&u);
                }
                if is_active(v, &excess, &h) {
                    buckets[h[v]].insert(v);
                }
            }
            None => {
                buckets[h[u]].remove(&u);
                let new = relabel_value(
                    n,
                    inc[u]
                        .iter()
                        .filter(|&&(a, fwd)| residual(net, &f, a, fwd) > 0)
                        .map(|&(a, fwd)| h[head(net, a, fwd)]),
                );
                debug_assert!(new > h[u], "relabel must raise the height");
                h[u] = new;
                counters.relabels += 1;
                if new < n {
                    buckets[new].insert(u);
                    top = top.max(new);
                }
            }
        }
        if cfg!(debug_assertions) {
            let state = FlowState { flow: f.clone() };
            debug_assert!(state.check_preflow(net).is_ok(), "preflow broken");
            debug_assert!(
                check_labeling(net, &state, &HeightLabeling(h.clone())).is_ok(),
                "labeling broken"
            );
        }
    }

    let value = excess[t];
    let f = return_excess(net, make_acyclic(net, &FlowState { flow: f }).flow);
    let flow = FlowState { flow: f };
    debug_assert!(flow.is_feasible_flow(net));
    debug_assert_eq!(flow.value(net), value);
    let source_side = cannot_reach_sink(net, &flow.flow).to_vec();
    Ok(PushRelabelResult {
        flow,
        value,
        source_side,
        counters,
        initial_labeling,
    })
}

/// Stage two: walk the acyclic support in reverse topological order and
/// push each vertex's excess back along its incoming flow arcs.
fn return_excess(net: &FlowNetwork, mut f: Vec<i64>) -> Vec<i64> {
    let (s, t) = (net.source(), net.sink());
    let mut excess = FlowState { flow: f.clone() }.excess(net);
    let mut in_arcs: Vec<Vec<usize>> = vec![Vec::new(); net.n()];
    for (id, a) in net.arcs().iter().enumerate() {
        in_arcs[a.to].push(id);
    }
    for v in support_order(net, &f).into_iter().rev() {
        if v == s || v == t {
            continue;
        }
        for &a in &in_arcs[v] {
            if excess[v] == 0 {
                break;
            }
            let u = net.arcs()[a].from;
            debug_assert!(u != t || f[a] == 0, "excess would flow back into t");
            let back = excess[v].min(f[a]);
            f[a] -= back;
            excess[v] -= back;
            excess[u] += back;
        }
        debug_assert_eq!(excess[v], 0);
    }
    f
}

fn cannot_reach_sink(net: &FlowNetwork, f: &[i64]) -> Vec<bool> {
    let inc = incidence(net);
    let mut reach = vec![false; net.n()];
    reach[net.sink()] = true;
    let mut queue = VecDeque::from([net.sink()]);
    while let Some(v) = queue.pop_front() {
        for &(a, fwd) in &inc[v] {
            let u = head(net, a, fwd);
            if !reach[u] && residual(net, f, a, !fwd) > 0 {
                reach[u] = true;
                queue.push_back(u);
            }
        }
    }
    reach.iter().map(|r| !r).collect()
}
