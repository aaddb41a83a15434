//! Enumeration of connected vertex sets.
//!
//! Sets are grown from a root by adding one vertex of the current extension
//! (neighbors of the set not yet excluded); once a branch adding `w` is done,
//! `w` is excluded for its later siblings. Every connected set containing the
//! root is produced exactly once.

use std::ops::ControlFlow;

use super::{Graph, VertexSet};

struct Walk<'a, F> {
    g: &'a Graph,
    allowed: u64,
    max: usize,
    visit: F,
}

impl<F: FnMut(VertexSet) -> ControlFlow<()>> Walk<'_, F> {
    fn grow(&mut self, set: u64, ext: u64, excluded: u64) -> ControlFlow<()> {
        (self.visit)(VertexSet(set))?;
        if set.count_ones() as usize >= self.max {
            return ControlFlow::Continue(());
        }
        let mut excluded = excluded;
        let mut rest = ext;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next_set = set | 1u64 << w;
            let next_ext = (rest | self.g.adj_mask(w)) & self.allowed & !next_set & !excluded;
            self.grow(next_set, next_ext, excluded)?;
            excluded |= 1u64 << w;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every nonempty connected set of size at most `max_size`. With an
/// anchor, only sets containing it; otherwise sets are grouped by their least
/// vertex in increasing order. The visitor may stop the walk early.
pub fn for_each_connected_set<F>(
    g: &Graph,
    max_size: usize,
    anchor: Option<usize>,
    visit: F,
) -> ControlFlow<()>
where
    F: FnMut(VertexSet) -> ControlFlow<()>,
{
    if max_size == 0 || g.n() == 0 {
        return ControlFlow::Continue(());
    }
    let full = g.vertices().0;
    let mut walk = Walk {
        g,
        allowed: full,
        max: max_size,
        visit,
    };
    match anchor {
        Some(r) => {
            assert!(r < g.n(), "anchor {r} out of range");
            walk.grow(1u64 << r, g.adj_mask(r), 0)
        }
        None => {
            for r in 0..g.n() {
                // sets whose least vertex is r
                walk.allowed = full & !((1u64 << r) - 1);
                walk.grow(1u64 << r, g.adj_mask(r) & walk.allowed, 0)?;
            }
            ControlFlow::Continue(())
        }
    }
}

/// Collected form of [`for_each_connected_set`].
pub fn connected_sets(g: &Graph, max_size: usize, anchor: Option<usize>) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let _ = for_each_connected_set(g, max_size, anchor, |s| {
        out.push(s);
        ControlFlow::Continue(())
    });
    out
}
