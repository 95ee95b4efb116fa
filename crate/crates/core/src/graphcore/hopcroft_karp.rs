use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum-cardinality matching of a bipartite graph given as an edge list
/// `(left, right)`; returns the ids of the chosen edges in increasing order.
///
/// Adjacency is scanned in edge-id order, so among maximum matchings the
/// result is deterministic.
pub fn hopcroft_karp(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_left];
    for (id, &(l, r)) in edges.iter().enumerate() {
        adj[l].push((r, id));
    }
    let mut mate_left = vec![NIL; n_left];
    let mut mate_edge = vec![NIL; n_left];
    let mut mate_right = vec![NIL; n_right];
    let mut layer = vec![0usize; n_left];

    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for l in 0..n_left {
            if mate_left[l] == NIL {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &(r, _) in &adj[l] {
                let next = mate_right[r];
                if next == NIL {
                    found = true;
                } else if layer[next] == usize::MAX {
                    layer[next] = layer[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; n_left];
        for l in 0..n_left {
            if mate_left[l] == NIL {
                augment(
                    l,
                    &adj,
                    &mut layer,
                    &mut cursor,
                    &mut mate_left,
                    &mut mate_edge,
                    &mut mate_right,
                );
            }
        }
    }

    let mut out: Vec<usize> = mate_edge.into_iter().filter(|&e| e != NIL).collect();
    out.sort_unstable();
    out
}

fn augment(
    l: usize,
    adj: &[Vec<(usize, usize)>],
    layer: &mut [usize],
    cursor: &mut [usize],
    mate_left: &mut [usize],
    mate_edge: &mut [usize],
    mate_right: &mut [usize],
) -> bool {
    while cursor[l] < adj[l].len() {
        let (r, id) = adj[l][cursor[l]];
        cursor[l] += 1;
        let next = mate_right[r];
        let ok = next == NIL
            || (layer[next] == layer[l] + 1
                && augment(next, adj, layer, cursor, mate_left, mate_edge, mate_right));
        if ok {
            mate_left[l] = r;
            mate_edge[l] = id;
            mate_right[r] = l;
            return true;
        }
    }
    layer[l] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty() {
        assert!(hopcroft_karp(3, 3, &[]).is_empty());
    }

    #[test]
    fn complete_k22() {
        let m = hopcroft_karp(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy would match 0-0 and leave 1 stranded.
        let edges = [(0, 0), (0, 1), (1, 0)];
        let m = hopcroft_karp(2, 2, &edges);
        assert_eq!(m.len(), 2);
        let rights: Vec<_> = m.iter().map(|&e| edges[e].1).collect();
        assert!(rights.contains(&0) && rights.contains(&1));
    }

    #[test]
    fn parallel_edges_count_once() {
        assert_eq!(hopcroft_karp(1, 1, &[(0, 0), (0, 0)]).len(), 1);
    }
}
