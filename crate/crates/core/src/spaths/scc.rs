const UNSEEN: usize = usize::MAX;

/// Strongly connected components (iterative Tarjan).
///
/// Returns the component of every vertex and the component count. Components
/// are numbered in reverse topological order: an arc between two different
/// components always goes from the higher number to the lower one.
pub(crate) fn tarjan_scc(n: usize, adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut count = 0;
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));
        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < adj[v].len() {
                let w = adj[v][top.1];
                top.1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_tail() {
        // 0 <-> 1 -> 2
        let adj = vec![vec![1], vec![0, 2], vec![]];
        let (comp, count) = tarjan_scc(3, &adj);
        assert_eq!(count, 2);
        assert_eq!(comp[0], comp[1]);
        assert!(comp[0] > comp[2]);
    }

    #[test]
    fn dag_order() {
        let adj = vec![vec![1, 2], vec![3], vec![3], vec![]];
        let (comp, count) = tarjan_scc(4, &adj);
        assert_eq!(count, 4);
        for (u, out) in adj.iter().enumerate() {
            for &v in out {
                assert!(comp[u] > comp[v]);
            }
        }
    }
}
