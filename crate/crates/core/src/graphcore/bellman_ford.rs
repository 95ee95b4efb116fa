use super::{DirectedLengthGraph, DualVector};

/// Outcome of a Bellman-Ford run. A negative cycle is a valid answer, not an
/// error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BellmanFord {
    Distances {
        /// `None` marks vertices not reached from the source.
        dist: Vec<Option<i64>>,
        /// `y_v = dist(v)` (0 where unreached); RE-feasible on every arc
        /// whose endpoints were both reached.
        dual: DualVector,
        passes: u64,
    },
    NegativeCycle {
        /// Arc ids in traversal order.
        arcs: Vec<usize>,
        total: i64,
    },
}

impl BellmanFord {
    pub fn is_negative_cycle(&self) -> bool {
        matches!(self, BellmanFord::NegativeCycle { .. })
    }

    pub fn dual(&self) -> Option<&DualVector> {
        match self {
            BellmanFord::Distances { dual, .. } => Some(dual),
            BellmanFord::NegativeCycle { .. } => None,
        }
    }
}

/// Single-source Bellman-Ford.
pub fn bellman_ford(g: &DirectedLengthGraph, source: usize) -> BellmanFord {
    let mut dist = vec![None; g.n()];
    if source < g.n() {
        dist[source] = Some(0);
    }
    relax(g, dist)
}

/// Bellman-Ford from a virtual source joined to every vertex by a zero-length
/// arc. On success the dual is RE-feasible on every arc, and any negative
/// cycle anywhere in the graph is reported.
pub fn bellman_ford_potential(g: &DirectedLengthGraph) -> BellmanFord {
    relax(g, vec![Some(0); g.n()])
}

fn relax(g: &DirectedLengthGraph, mut dist: Vec<Option<i64>>) -> BellmanFord {
    let n = g.n();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut passes = 0u64;
    let mut last_updated = None;
    // With a virtual source the longest shortest path has n arcs, so n + 1
    // passes without convergence certify a negative cycle.
    for _ in 0..=n {
        passes += 1;
        last_updated = None;
        for (id, a) in g.arcs().iter().enumerate() {
            if let Some(du) = dist[a.from] {
                let cand = du + a.len;
                if dist[a.to].is_none_or(|dv| cand < dv) {
                    dist[a.to] = Some(cand);
                    parent[a.to] = Some(id);
                    last_updated = Some(a.to);
                }
            }
        }
        if last_updated.is_none() {
            break;
        }
    }
    match last_updated {
        None => {
            let dual = DualVector(dist.iter().map(|d| d.unwrap_or(0)).collect());
            BellmanFord::Distances { dist, dual, passes }
        }
        Some(mut v) => {
            for _ in 0..n {
                v = g.arcs()[parent[v].expect("updated vertex has a parent")].from;
            }
            let start = v;
            let mut arcs = Vec::new();
            loop {
                let a = parent[v].expect("cycle vertex has a parent");
                arcs.push(a);
                v = g.arcs()[a].from;
                if v == start {
                    break;
                }
            }
            arcs.reverse();
            let total = arcs.iter().map(|&a| g.arcs()[a].len).sum();
            BellmanFord::NegativeCycle { arcs, total }
        }
    }
}
