//! Canonical forms and isomorphism-class enumeration for small graphs.
//!
//! The canonical form of a graph is the relabeling whose graph6 bit string
//! (upper triangle, column by column) is lexicographically least among all
//! relabelings that list vertices by their color-refinement class. Classes are
//! computed from isomorphism-invariant data only, so the result is a complete
//! invariant; the search is exhaustive over the permutations inside classes.

use std::collections::{BTreeMap, BTreeSet};

use super::{Graph, GraphError};

pub const MAX_CENSUS_ORDER: usize = 7;
const MAX_CANONICAL_ORDER: usize = 16;

/// Stable color refinement; returns each vertex's class index (classes
/// ordered canonically).
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let index: BTreeMap<&(usize, Vec<usize>), usize> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = sigs.iter().map(|s| index[s]).collect();
        let before = color.iter().collect::<BTreeSet<_>>().len();
        let after = index.len();
        color = next;
        if after == before {
            return color;
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    total_bits: u32,
    classes: Vec<usize>,
    slots: Vec<usize>,
    placed: Vec<usize>,
    used: u64,
    best: Option<(u128, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, key: u128) {
        let n = self.g.n();
        if pos == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => key < *b,
            };
            if better {
                self.best = Some((key, self.placed.clone()));
            }
            return;
        }
        let class = self.slots[pos];
        for v in 0..n {
            if self.used >> v & 1 == 1 || self.class_of(v) != class {
                continue;
            }
            let mut k = key;
            for &u in &self.placed {
                k = k << 1 | self.g.has_edge(u, v) as u128;
            }
            let done = (pos * (pos + 1) / 2) as u32;
            if let Some((b, _)) = &self.best {
                let prefix = b >> (self.total_bits - done);
                if k > prefix {
                    continue;
                }
            }
            self.used |= 1u64 << v;
            self.placed.push(v);
            self.run(pos + 1, k);
            self.placed.pop();
            self.used &= !(1u64 << v);
        }
    }

    fn class_of(&self, v: usize) -> usize {
        self.classes[v]
    }
}

/// Canonical relabeling of `g` (at most 16 vertices).
pub fn canonical_form(g: &Graph) -> Result<Graph, GraphError> {
    Ok(g.permute(&canonical_permutation(g)?))
}

/// `perm[v]` is the canonical position of vertex `v`.
pub fn canonical_permutation(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let n = g.n();
    if n > MAX_CANONICAL_ORDER {
        return Err(GraphError::CapExceeded {
            order: n,
            cap: MAX_CANONICAL_ORDER,
        });
    }
    let classes = refine(g);
    let mut slots = classes.clone();
    slots.sort_unstable();
    let mut search = Search {
        g,
        classes,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        slots,
        placed: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.run(0, 0);
    let order = search.best.map(|(_, p)| p).unwrap_or_default();
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(perm)
}

/// One canonical representative per isomorphism class on `n` vertices,
/// sorted by graph6 string.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>, GraphError> {
    if n > MAX_CENSUS_ORDER {
        return Err(GraphError::CapExceeded {
            order: n,
            cap: MAX_CENSUS_ORDER,
        });
    }
    let mut all = vec![Graph::empty(0)?];
    for k in 1..=n {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for base in &all {
            for nbhd in 0u64..(1u64 << (k - 1)) {
                let mut g = Graph::empty(k)?;
                for (u, v) in base.edges() {
                    g.add_edge(u, v)?;
                }
                for u in 0..k - 1 {
                    if nbhd >> u & 1 == 1 {
                        g.add_edge(u, k - 1)?;
                    }
                }
                let c = canonical_form(&g)?;
                next.entry(c.to_graph6()).or_insert(c);
            }
        }
        all = next.into_values().collect();
    }
    Ok(all
        .into_iter()
        .filter(|g| !connected_only || g.is_connected())
        .collect())
}

/// Isomorphism classes of trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(enumerate_graphs(n, true)?
        .into_iter()
        .filter(Graph::is_tree)
        .collect())
}
