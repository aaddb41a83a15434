use super::{Graph, GraphError, VertexSet};

/// Finds `X` with `|X| < m` such that every component of `t - X` has fewer
/// than `n_bound` vertices, for a tree `t` with `|t| < m * n_bound`.
///
/// Rooted at vertex 0. While the remaining root component is too large, the
/// deepest vertex whose subtree still has `n_bound` vertices (smallest index
/// on ties) is cut and the search continues in the root component.
pub fn tree_separator(t: &Graph, m: usize, n_bound: usize) -> Result<VertexSet, GraphError> {
    if m == 0 || n_bound == 0 {
        return Err(GraphError::Precondition(
            "m and n_bound must be positive".into(),
        ));
    }
    if t.n() == 0 {
        return Ok(VertexSet::EMPTY);
    }
    if !t.is_tree() {
        return Err(GraphError::NotATree);
    }
    if t.n() >= m * n_bound {
        return Err(GraphError::Precondition(format!(
            "tree order {} is not below m * n_bound = {}",
            t.n(),
            m * n_bound
        )));
    }
    let root = 0;
    let mut remaining = t.vertices();
    let mut cut = VertexSet::EMPTY;
    let mut budget = m;
    while remaining.len() >= n_bound {
        debug_assert!(budget > 1);
        let x = deepest_heavy_vertex(t, root, remaining, n_bound);
        cut.insert(x);
        budget -= 1;
        if x == root {
            break;
        }
        remaining.remove(x);
        remaining = t.reach(root, remaining);
    }
    Ok(cut)
}

/// Subtree sizes of `t[within]` rooted at `root`; returns the heavy vertex
/// none of whose children is heavy.
fn deepest_heavy_vertex(t: &Graph, root: usize, within: VertexSet, n_bound: usize) -> usize {
    let mut parent = [usize::MAX; 64];
    let mut order = vec![root];
    let mut seen = VertexSet::singleton(root);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for w in t.neighbors(v).intersection(within).difference(seen).iter() {
            seen.insert(w);
            parent[w] = v;
            order.push(w);
        }
        i += 1;
    }
    let mut size = [0usize; 64];
    let mut heavy_child = [false; 64];
    for &v in order.iter().rev() {
        size[v] += 1;
        if v != root {
            size[parent[v]] += size[v];
            if size[v] >= n_bound {
                heavy_child[parent[v]] = true;
            }
        }
    }
    order
        .iter()
        .copied()
        .filter(|&v| size[v] >= n_bound && !heavy_child[v])
        .min()
        .expect("root is heavy")
}
