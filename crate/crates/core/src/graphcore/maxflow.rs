use std::collections::VecDeque;

use super::{FlowNetwork, FlowState, ResidualGraph};

/// Flow pushed by one [`ford_fulkerson`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Augmentation {
    pub value: i64,
    pub paths: u64,
}

/// Ford-Fulkerson with depth-first augmenting paths, restricted to residual
/// arcs for which `allowed(arc)` holds. Stops early once `flow_cap` units
/// have been pushed.
pub fn ford_fulkerson(
    g: &mut ResidualGraph,
    s: usize,
    t: usize,
    allowed: impl Fn(&ResidualGraph, usize) -> bool,
    flow_cap: Option<i64>,
) -> Augmentation {
    let n = g.n();
    let mut total = Augmentation::default();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = Vec::new();
    loop {
        let remaining = flow_cap.map_or(i64::MAX, |c| c - total.value);
        if remaining <= 0 || s == t {
            break;
        }
        seen.fill(false);
        stack.clear();
        stack.push(s);
        seen[s] = true;
        while let Some(u) = stack.pop() {
            if u == t {
                break;
            }
            // Reverse order so the lowest arc id is explored first.
            for &a in g.out_arcs(u).iter().rev() {
                let v = g.head(a);
                if !seen[v] && g.residual(a) > 0 && allowed(g, a) {
                    seen[v] = true;
                    parent[v] = a;
                    stack.push(v);
                }
            }
        }
        if !seen[t] {
            break;
        }
        let mut bottleneck = remaining;
        let mut v = t;
        while v != s {
            let a = parent[v];
            bottleneck = bottleneck.min(g.residual(a));
            v = g.tail(a);
        }
        let mut v = t;
        while v != s {
            let a = parent[v];
            g.push(a, bottleneck);
            v = g.tail(a);
        }
        total.value += bottleneck;
        total.paths += 1;
    }
    total
}

/// Result of the Edmonds-Karp oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlowCertificate {
    pub value: i64,
    pub flow: FlowState,
    /// `true` for vertices reachable from the source in the final residual
    /// network; this side of the cut is saturated.
    pub source_side: Vec<bool>,
}

/// Textbook Edmonds-Karp (BFS augmenting paths). Self-contained so it can
/// serve as an independent check of the other max-flow code paths.
pub fn edmonds_karp_oracle(net: &FlowNetwork) -> MaxFlowCertificate {
    let n = net.n();
    let m = net.m();
    // residual[2k] forward, residual[2k+1] backward
    let mut residual = Vec::with_capacity(2 * m);
    let mut adj = vec![Vec::new(); n];
    for (k, a) in net.arcs().iter().enumerate() {
        residual.push(a.cap);
        residual.push(0);
        adj[a.from].push(2 * k);
        adj[a.to].push(2 * k + 1);
    }
    let head = |e: usize| {
        let a = net.arcs()[e / 2];
        if e.is_multiple_of(2) {
            a.to
        } else {
            a.from
        }
    };
    let (s, t) = (net.source(), net.sink());
    let mut value = 0;
    let mut prev = vec![usize::MAX; n];
    loop {
        prev.fill(usize::MAX);
        let mut reached = vec![false; n];
        reached[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &adj[u] {
                let v = head(e);
                if !reached[v] && residual[e] > 0 {
                    reached[v] = true;
                    prev[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !reached[t] {
            let flow = (0..m).map(|k| residual[2 * k + 1]).collect();
            return MaxFlowCertificate {
                value,
                flow: FlowState { flow },
                source_side: reached,
            };
        }
        let mut delta = i64::MAX;
        let mut v = t;
        while v != s {
            let e = prev[v];
            delta = delta.min(residual[e]);
            v = head(e ^ 1);
        }
        let mut v = t;
        while v != s {
            let e = prev[v];
            residual[e] -= delta;
            residual[e ^ 1] += delta;
            v = head(e ^ 1);
        }
        value += delta;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual_of(net: &FlowNetwork) -> ResidualGraph {
        let mut g = ResidualGraph::new(net.n());
        for a in net.arcs() {
            g.add_edge(a.from, a.to, a.cap);
        }
        g
    }

    #[test]
    fn single_arc() {
        let net = FlowNetwork::new(2, [(0, 1, 1, 0)], 0, 1).unwrap();
        let mut g = residual_of(&net);
        let aug = ford_fulkerson(&mut g, 0, 1, |_, _| true, None);
        assert_eq!(aug.value, 1);
    }

    #[test]
    fn two_disjoint_paths() {
        let net = FlowNetwork::new(
            4,
            [(0, 1, 1, 0), (1, 3, 1, 0), (0, 2, 1, 0), (2, 3, 1, 0)],
            0,
            3,
        )
        .unwrap();
        let mut g = residual_of(&net);
        assert_eq!(ford_fulkerson(&mut g, 0, 3, |_, _| true, None).value, 2);
    }

    #[test]
    fn flow_cap_stops_early() {
        let net = FlowNetwork::new(2, [(0, 1, 5, 0)], 0, 1).unwrap();
        let mut g = residual_of(&net);
        assert_eq!(ford_fulkerson(&mut g, 0, 1, |_, _| true, Some(3)).value, 3);
    }

    #[test]
    fn edmonds_karp_basic() {
        let net = FlowNetwork::new(2, [(0, 1, 7, 0)], 0, 1).unwrap();
        assert_eq!(edmonds_karp_oracle(&net).value, 7);
        let diamond = FlowNetwork::new(
            4,
            [(0, 1, 1, 0), (0, 2, 1, 0), (1, 3, 1, 0), (2, 3, 1, 0)],
            0,
            3,
        )
        .unwrap();
        let cert = edmonds_karp_oracle(&diamond);
        assert_eq!(cert.value, 2);
        assert!(cert.flow.is_feasible_flow(&diamond));
        assert_eq!(cert.source_side, vec![true, false, false, false]);
    }
}
