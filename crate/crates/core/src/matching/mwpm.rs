use super::{check_feasible, MatchingError, MatchingResult};
use crate::graphcore::{
    dijkstra_with_potentials, ford_fulkerson, hopcroft_karp, BipartiteInstance, DualVector,
    GraphError, OpCounters, ResidualGraph,
};

/// Unit-capacity network `s -> L -> R -> t` for the successive shortest path
/// phase. `z` holds the node potentials; arcs touching `s` or `t` always
/// have reduced cost 0.
struct Network {
    g: ResidualGraph,
    /// Signed cost of each residual arc, `None` for arcs touching `s` or `t`.
    arc_cost: Vec<Option<i64>>,
    edge_arc: Vec<usize>,
    z: Vec<i64>,
    s: usize,
    t: usize,
}

impl Network {
    fn reduced(&self, g: &ResidualGraph, a: usize) -> i64 {
        self.arc_cost[a].map_or(0, |c| c + self.z[g.tail(a)] - self.z[g.head(a)])
    }

    fn check_reduced_costs(&self) -> Result<(), GraphError> {
        for a in 0..self.g.arc_count() {
            if self.g.residual(a) > 0 {
                let cost = self.reduced(&self.g, a);
                if cost < 0 {
                    return Err(GraphError::NegativeReducedCost { arc: a, cost });
                }
            }
        }
        Ok(())
    }
}

/// Min-weight perfect matching from a feasible dual.
///
/// Matches the tight subgraph with Hopcroft-Karp, then alternates a Dijkstra
/// potential update with Ford-Fulkerson on the zero-reduced-cost residual
/// arcs until the matching is perfect. The returned duals are optimal.
pub fn solve_mwpm(
    inst: &BipartiteInstance,
    feasible_dual: &DualVector,
) -> Result<MatchingResult, MatchingError> {
    let n = inst.n_left();
    if inst.n_right() != n {
        return Err(MatchingError::Unbalanced {
            n_left: n,
            n_right: inst.n_right(),
        });
    }
    check_feasible(inst, feasible_dual)?;
    let y = feasible_dual;
    let mut counters = OpCounters::default();

    let tight: Vec<usize> = (0..inst.edges().len())
        .filter(|&e| inst.slack(e, y) == 0)
        .collect();
    let pairs: Vec<(usize, usize)> = tight
        .iter()
        .map(|&e| (inst.edges()[e].left, inst.edges()[e].right))
        .collect();
    let first: Vec<usize> = hopcroft_karp(n, n, &pairs)
        .into_iter()
        .map(|k| tight[k])
        .collect();
    counters.first_match_size = first.len() as u64;

    let mut net = build_network(inst, y);
    let s = net.s;
    let t = net.t;
    for &e in &first {
        let edge = inst.edges()[e];
        // s -> i is arc 2i, j -> t follows the edge arcs.
        net.g.push(2 * edge.left, 1);
        net.g.push(net.edge_arc[e], 1);
        net.g.push(sink_arc(inst, edge.right), 1);
    }

    let mut flow = first.len();
    while flow < n {
        counters.while_iterations += 1;
        counters.dijkstra_calls += 1;
        let tree = dijkstra_with_potentials(net.g.n(), s, |u| {
            net.g
                .out_arcs(u)
                .iter()
                .filter(|&&a| net.g.residual(a) > 0)
                .map(|&a| (a, net.g.head(a), net.reduced(&net.g, a)))
                .collect::<Vec<_>>()
        })?;
        let Some(dt) = tree.dist[t] else {
            return Err(MatchingError::NoPerfectMatching);
        };
        for u in 0..2 * n {
            net.z[u] += tree.dist[u].map_or(dt, |d| d.min(dt));
        }
        if cfg!(debug_assertions) {
            net.check_reduced_costs()?;
        }

        let mut g = std::mem::take(&mut net.g);
        let aug = ford_fulkerson(
            &mut g,
            s,
            t,
            |g, a| net.reduced(g, a) == 0,
            Some((n - flow) as i64),
        );
        net.g = g;
        if aug.value == 0 {
            // t was reachable, so a zero-cost path must exist after the update.
            return Err(MatchingError::NoPerfectMatching);
        }
        counters.ff_augmentations += aug.value as u64;
        flow += aug.value as usize;
        if cfg!(debug_assertions) {
            net.check_reduced_costs()?;
        }
    }

    let matched_edges: Vec<usize> = (0..inst.edges().len())
        .filter(|&e| net.g.flow(net.edge_arc[e]) > 0)
        .collect();
    let total_cost = matched_edges.iter().map(|&e| inst.edges()[e].cost).sum();
    let mut duals = DualVector::zeros(2 * n);
    for i in 0..n {
        duals[i] = -net.z[i];
        duals[n + i] = net.z[n + i];
    }
    Ok(MatchingResult {
        matched_edges,
        total_cost,
        final_duals: duals,
        counters,
    })
}

fn sink_arc(inst: &BipartiteInstance, j: usize) -> usize {
    2 * (inst.n_left() + inst.edges().len() + j)
}

fn build_network(inst: &BipartiteInstance, y: &[i64]) -> Network {
    let nl = inst.n_left();
    let nv = inst.n_vertices();
    let (s, t) = (nv, nv + 1);
    let mut g = ResidualGraph::new(nv + 2);
    let mut arc_cost = Vec::new();
    for i in 0..nl {
        g.add_edge(s, i, 1);
        arc_cost.extend([None, None]);
    }
    let mut edge_arc = Vec::with_capacity(inst.edges().len());
    for e in inst.edges() {
        edge_arc.push(g.add_edge(e.left, inst.right_id(e.right), 1));
        arc_cost.extend([Some(e.cost), Some(-e.cost)]);
    }
    for j in 0..inst.n_right() {
        g.add_edge(inst.right_id(j), t, 1);
        arc_cost.extend([None, None]);
    }
    let mut z = vec![0; nv + 2];
    for (v, zv) in z.iter_mut().enumerate().take(nv) {
        *zv = if v < nl { -y[v] } else { y[v] };
    }
    Network {
        g,
        arc_cost,
        edge_arc,
        z,
        s,
        t,
    }
}
