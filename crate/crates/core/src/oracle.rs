//! Exhaustive solvers for tiny instances.
//!
//! Nothing here shares code with the real solvers; they exist so tests and
//! the `verify` command have an independent answer to compare against.

use crate::graphcore::{
    bellman_ford, BellmanFord, BipartiteInstance, DirectedLengthGraph, FlowNetwork,
};

/// Minimum cost of a perfect matching by trying every permutation, or `None`
/// if there is none. Parallel edges contribute their cheapest copy.
pub fn brute_force_mwpm(inst: &BipartiteInstance) -> Option<i64> {
    let n = inst.n_left();
    if inst.n_right() != n {
        return None;
    }
    let mut cost = vec![vec![None::<i64>; n]; n];
    for e in inst.edges() {
        let slot = &mut cost[e.left][e.right];
        *slot = Some(slot.map_or(e.cost, |c| c.min(e.cost)));
    }
    let mut used = vec![false; n];
    permute(&cost, 0, &mut used)
}

fn permute(cost: &[Vec<Option<i64>>], i: usize, used: &mut [bool]) -> Option<i64> {
    if i == cost.len() {
        return Some(0);
    }
    let mut best: Option<i64> = None;
    for j in 0..cost.len() {
        if used[j] {
            continue;
        }
        let Some(c) = cost[i][j] else { continue };
        used[j] = true;
        if let Some(rest) = permute(cost, i + 1, used) {
            best = Some(best.map_or(c + rest, |b| b.min(c + rest)));
        }
        used[j] = false;
    }
    best
}

/// Maximum matching size by trying, for each left vertex, every choice.
pub fn brute_force_max_matching(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> usize {
    fn go(l: usize, n_left: usize, adj: &[Vec<usize>], used: &mut [bool]) -> usize {
        if l == n_left {
            return 0;
        }
        let mut best = go(l + 1, n_left, adj, used);
        for &r in &adj[l] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(l + 1, n_left, adj, used));
                used[r] = false;
            }
        }
        best
    }
    let mut adj = vec![Vec::new(); n_left];
    for &(l, r) in edges {
        adj[l].push(r);
    }
    go(0, n_left, &adj, &mut vec![false; n_right])
}

/// Minimum cost of a perfect b-matching by enumerating the multiplicity of
/// every edge.
pub fn brute_force_mwbm(inst: &BipartiteInstance) -> Option<i64> {
    fn go(e: usize, inst: &BipartiteInstance, rem: &mut [i64]) -> Option<i64> {
        if e == inst.edges().len() {
            return rem.iter().all(|&r| r == 0).then_some(0);
        }
        let edge = inst.edges()[e];
        let (l, r) = (edge.left, inst.right_id(edge.right));
        let mut best: Option<i64> = None;
        for k in 0..=rem[l].min(rem[r]) {
            rem[l] -= k;
            rem[r] -= k;
            if let Some(rest) = go(e + 1, inst, rem) {
                let c = k * edge.cost + rest;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
            rem[l] += k;
            rem[r] += k;
        }
        best
    }
    let mut rem: Vec<i64> = (0..inst.n_vertices()).map(|v| inst.demand(v)).collect();
    go(0, inst, &mut rem)
}

/// Maximum weight of an edge subset whose degree at every vertex equals
/// `degree[v]`. Vertices are numbered `0..degree.len()`.
pub fn brute_force_complete_dcs(degree: &[i64], edges: &[(usize, usize, i64)]) -> Option<i64> {
    let m = edges.len();
    assert!(m < 25, "subset enumeration is for tiny graphs only");
    let mut best = None;
    for mask in 0u32..(1 << m) {
        let mut deg = vec![0i64; degree.len()];
        let mut w = 0;
        for (k, &(u, v, wt)) in edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
                w += wt;
            }
        }
        if deg == degree {
            best = Some(best.map_or(w, |b: i64| b.max(w)));
        }
    }
    best
}

/// Minimum cost of an integral flow of exactly `value` in a unit-capacity
/// network, enumerating arc subsets.
pub fn brute_force_min_cost_01_flow(net: &FlowNetwork, value: i64) -> Option<i64> {
    let m = net.m();
    assert!(m < 25, "subset enumeration is for tiny graphs only");
    let (s, t) = (net.source(), net.sink());
    let mut best = None;
    for mask in 0u32..(1 << m) {
        let mut ex = vec![0i64; net.n()];
        let mut cost = 0;
        for (k, a) in net.arcs().iter().enumerate() {
            if mask >> k & 1 == 1 {
                ex[a.from] -= 1;
                ex[a.to] += 1;
                cost += a.cost;
            }
        }
        let balanced = ex
            .iter()
            .enumerate()
            .all(|(v, &e)| v == s || v == t || e == 0);
        if balanced && ex[t] == value && ex[s] == -value {
            best = Some(best.map_or(cost, |b: i64| b.min(cost)));
        }
    }
    best
}

/// All-pairs distances from one Bellman-Ford run per source, or `None` if
/// any run meets a negative cycle.
pub fn bellman_ford_table(g: &DirectedLengthGraph) -> Option<Vec<Vec<Option<i64>>>> {
    (0..g.n())
        .map(|s| match bellman_ford(g, s) {
            BellmanFord::Distances { dist, .. } => Some(dist),
            BellmanFord::NegativeCycle { .. } => None,
        })
        .collect()
}
