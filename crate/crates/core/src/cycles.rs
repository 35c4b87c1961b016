//! Anchored depth-first enumeration of simple cycles in an edge-labelled
//! multigraph.
//!
//! Every cycle is reported once: it is found from its smallest vertex, and of
//! its two traversals only the one whose first edge id is smaller than its
//! closing edge id is kept. Parallel edges are distinct, so two parallel edges
//! between `a` and `b` form a cycle of two edges.

/// Adjacency list where each entry is `(neighbour, edge id)`.
pub(crate) type EdgeAdjacency = Vec<Vec<(usize, usize)>>;

/// Calls `visit` with the edge ids of every simple cycle, in traversal order.
pub(crate) fn for_each_cycle<F>(adj: &[Vec<(usize, usize)>], mut visit: F)
where
    F: FnMut(&[usize]),
{
    let n = adj.len();
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::with_capacity(n);
    for start in 0..n {
        on_path[start] = true;
        extend(adj, start, start, &mut on_path, &mut path, &mut visit);
        on_path[start] = false;
    }
}

fn extend<F>(
    adj: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    visit: &mut F,
) where
    F: FnMut(&[usize]),
{
    for &(next, edge) in &adj[at] {
        if next == start {
            // Closing edge must differ from the first edge and exceed it.
            if let Some(&first) = path.first() {
                if first < edge {
                    path.push(edge);
                    visit(path);
                    path.pop();
                }
            }
            continue;
        }
        if next < start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push(edge);
        extend(adj, start, next, on_path, path, visit);
        path.pop();
        on_path[next] = false;
    }
}
