use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::PushRelabelError;
use crate::graphcore::{FlowNetwork, FlowState};

/// Cancels every cycle in the support of `flow`.
///
/// Repeated DFS: each cycle found loses its smallest arc flow, so at least
/// one arc leaves the support per round. Excesses do not change.
pub fn make_acyclic(net: &FlowNetwork, flow: &FlowState) -> FlowState {
    let mut f = flow.flow.clone();
    while let Some(cycle) = find_cycle(net, &f) {
        let delta = cycle.iter().map(|&a| f[a]).min().unwrap_or(0);
        for &a in &cycle {
            f[a] -= delta;
        }
    }
    FlowState { flow: f }
}

fn find_cycle(net: &FlowNetwork, f: &[i64]) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = net.n();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, a) in net.arcs().iter().enumerate() {
        if f[id] > 0 {
            out[a.from].push(id);
        }
    }
    let mut color = vec![WHITE; n];
    // Position in `path` at which each gray vertex was entered.
    let mut entered = vec![0usize; n];
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        let mut path: Vec<usize> = Vec::new();
        color[root] = GRAY;
        entered[root] = 0;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 == out[v].len() {
                color[v] = BLACK;
                stack.pop();
                path.pop();
                continue;
            }
            let a = out[v][top.1];
            top.1 += 1;
            let w = net.arcs()[a].to;
            match color[w] {
                WHITE => {
                    color[w] = GRAY;
                    path.push(a);
                    entered[w] = path.len();
                    stack.push((w, 0));
                }
                GRAY => {
                    let mut cycle = path[entered[w]..].to_vec();
                    cycle.push(a);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Vertices in topological order of the flow support, smallest id first
/// among the available ones. The support must be acyclic.
pub(crate) fn support_order(net: &FlowNetwork, f: &[i64]) -> Vec<usize> {
    let n = net.n();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (id, a) in net.arcs().iter().enumerate() {
        if f[id] > 0 {
            indeg[a.to] += 1;
            out[a.from].push(a.to);
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse(w));
            }
        }
    }
    debug_assert_eq!(order.len(), n, "flow support has a cycle");
    order
}

/// Turns a raw prediction into a valid preflow for `net`.
///
/// Negative entries are clamped and flow into `s` dropped; the support is
/// made acyclic; then one topological pass clips each vertex's outgoing
/// arcs to capacity and, where outflow exceeds inflow, trims outgoing arcs
/// in arc order until they balance. Finally every arc leaving `s` is
/// saturated.
pub fn fix_preflow(net: &FlowNetwork, predicted: &[i64]) -> Result<FlowState, PushRelabelError> {
    if predicted.len() != net.m() {
        return Err(PushRelabelError::DimensionMismatch {
            got: predicted.len(),
            expected: net.m(),
        });
    }
    let (s, t) = (net.source(), net.sink());
    let mut f: Vec<i64> = predicted.iter().map(|&x| x.max(0)).collect();
    for (id, a) in net.arcs().iter().enumerate() {
        if a.to == s {
            f[id] = 0;
        }
    }
    let mut f = make_acyclic(net, &FlowState { flow: f }).flow;

    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); net.n()];
    let mut inflow = vec![0i64; net.n()];
    for (id, a) in net.arcs().iter().enumerate() {
        out_arcs[a.from].push(id);
    }
    for u in support_order(net, &f) {
        for &a in &out_arcs[u] {
            f[a] = f[a].min(net.arcs()[a].cap);
        }
        if u != s && u != t {
            let mut surplus = out_arcs[u].iter().map(|&a| f[a]).sum::<i64>() - inflow[u];
            for &a in &out_arcs[u] {
                if surplus <= 0 {
                    break;
                }
                let cut = surplus.min(f[a]);
                f[a] -= cut;
                surplus -= cut;
            }
        }
        for &a in &out_arcs[u] {
            inflow[net.arcs()[a].to] += f[a];
        }
    }
    for &a in &out_arcs[s] {
        f[a] = net.arcs()[a].cap;
    }
    Ok(FlowState { flow: f })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_prediction_saturates_source() {
        let net = FlowNetwork::new(3, [(0, 1, 4, 0), (1, 2, 1, 0), (0, 2, 2, 0)], 0, 2).unwrap();
        let f = fix_preflow(&net, &[0, 0, 0]).unwrap();
        assert_eq!(f.flow, vec![4, 0, 2]);
        assert!(f.check_preflow(&net).is_ok());
    }

    #[test]
    fn path_with_overfull_arc() {
        let net = FlowNetwork::new(3, [(0, 1, 2, 0), (1, 2, 1, 0)], 0, 2).unwrap();
        let f = fix_preflow(&net, &[2, 2]).unwrap();
        assert_eq!(f.flow, vec![2, 1]);
        assert_eq!(f.excess(&net)[1], 1);
    }

    #[test]
    fn deficit_is_trimmed() {
        // s -> a -> b -> t, prediction pushes more out of b than it receives.
        let net = FlowNetwork::new(4, [(0, 1, 1, 0), (1, 2, 5, 0), (2, 3, 5, 0)], 0, 3).unwrap();
        let f = fix_preflow(&net, &[5, 5, 5]).unwrap();
        assert_eq!(f.flow, vec![1, 1, 1]);
        assert!(f.is_feasible_flow(&net));
    }

    #[test]
    fn cycle_is_cancelled() {
        // 2-cycle a <-> b carrying 3 each way plus a through path s-a-b-t.
        let net = FlowNetwork::new(
            4,
            [(0, 1, 5, 0), (1, 2, 5, 0), (2, 1, 5, 0), (2, 3, 5, 0)],
            0,
            3,
        )
        .unwrap();
        let before = FlowState {
            flow: vec![1, 4, 3, 1],
        };
        let after = make_acyclic(&net, &before);
        assert_eq!(after.flow, vec![1, 1, 0, 1]);
        assert_eq!(after.excess(&net), before.excess(&net));
    }

    #[test]
    fn acyclic_flow_is_untouched() {
        let net = FlowNetwork::new(3, [(0, 1, 2, 0), (1, 2, 2, 0)], 0, 2).unwrap();
        let f = FlowState { flow: vec![2, 1] };
        assert_eq!(make_acyclic(&net, &f), f);
    }

    #[test]
    fn flow_into_source_is_dropped() {
        let net = FlowNetwork::new(3, [(0, 1, 2, 0), (1, 0, 2, 0), (1, 2, 2, 0)], 0, 2).unwrap();
        let f = fix_preflow(&net, &[2, 2, 0]).unwrap();
        assert_eq!(f.flow, vec![2, 0, 0]);
    }

    #[test]
    fn wrong_length() {
        let net = FlowNetwork::new(2, [(0, 1, 2, 0)], 0, 1).unwrap();
        assert!(matches!(
            fix_preflow(&net, &[]),
            Err(PushRelabelError::DimensionMismatch { .. })
        ));
    }
}
