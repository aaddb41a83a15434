//! Brute-force induced-subgraph and minor containment for small graphs.

use super::{connected_sets, Graph, GraphError, VertexSet};

pub const MAX_CONTAINMENT_ORDER: usize = 10;

fn check_caps(g: &Graph, h: &Graph) -> Result<(), GraphError> {
    if g.n() > MAX_CONTAINMENT_ORDER {
        return Err(GraphError::CapExceeded {
            order: g.n(),
            cap: MAX_CONTAINMENT_ORDER,
        });
    }
    if h.n() > MAX_CONTAINMENT_ORDER {
        return Err(GraphError::CapExceeded {
            order: h.n(),
            cap: MAX_CONTAINMENT_ORDER,
        });
    }
    Ok(())
}

/// Whether `h` is isomorphic to an induced subgraph of `g`.
pub fn contains_induced(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_caps(g, h)?;
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    fn place(g: &Graph, h: &Graph, image: &mut Vec<usize>, used: u64) -> bool {
        let i = image.len();
        if i == h.n() {
            return true;
        }
        for v in 0..g.n() {
            if used >> v & 1 == 1 || g.degree(v) < h.degree(i) {
                continue;
            }
            if image
                .iter()
                .enumerate()
                .all(|(j, &w)| h.has_edge(i, j) == g.has_edge(v, w))
            {
                image.push(v);
                if place(g, h, image, used | 1u64 << v) {
                    return true;
                }
                image.pop();
            }
        }
        false
    }
    Ok(place(g, h, &mut Vec::with_capacity(h.n()), 0))
}

/// Whether `h` is a minor of `g`: disjoint connected branch sets in `g`, one
/// per vertex of `h`, with an edge of `g` between the branch sets of every
/// edge of `h`.
pub fn contains_minor(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_caps(g, h)?;
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    if h.n() == 0 {
        return Ok(true);
    }
    let sets = connected_sets(g, g.n() - h.n() + 1, None);
    // place high-degree vertices of h first
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    fn place(
        g: &Graph,
        h: &Graph,
        sets: &[VertexSet],
        order: &[usize],
        branch: &mut Vec<Option<VertexSet>>,
        used: VertexSet,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let left = order.len() - depth - 1;
        let v = order[depth];
        for &s in sets {
            if !s.is_disjoint(used) || g.n() - used.len() - s.len() < left {
                continue;
            }
            let touch = g.neighborhood(s);
            let ok = h.neighbors(v).iter().all(|w| match branch[w] {
                Some(b) => !touch.is_disjoint(b),
                None => true,
            });
            if ok {
                branch[v] = Some(s);
                if place(g, h, sets, order, branch, used.union(s), depth + 1) {
                    return true;
                }
                branch[v] = None;
            }
        }
        false
    }
    let mut branch = vec![None; h.n()];
    Ok(place(g, h, &sets, &order, &mut branch, VertexSet::EMPTY, 0))
}
