//! Naive reference implementations used as test oracles. They share nothing
//! with the library beyond the `Graph` and `GroupSpec` accessors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use zsf::{Graph, GroupSpec};

/// Residue-vector addition done by hand.
pub fn add(factors: &[u32], a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter()
        .zip(b)
        .zip(factors)
        .map(|((x, y), n)| (x + y) % n)
        .collect()
}

pub fn all_elements(factors: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in factors {
        out = out
            .into_iter()
            .flat_map(|p| (0..n).map(move |r| [p.clone(), vec![r]].concat()))
            .collect();
    }
    out
}

pub fn is_zero(x: &[u32]) -> bool {
    x.iter().all(|&r| r == 0)
}

/// Connectivity of a vertex subset (bitmask) by depth-first search on `has_edge`.
pub fn connected(g: &Graph, set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let start = set.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for w in 0..g.n() {
            if set >> w & 1 == 1 && seen >> w & 1 == 0 && g.has_edge(v, w) {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == set
}

/// Every nonempty connected subset, as bitmasks (graphs up to ~16 vertices).
pub fn connected_subsets(g: &Graph) -> Vec<u64> {
    (1u64..1 << g.n()).filter(|&s| connected(g, s)).collect()
}

/// Smallest connected zero-sum subset size, or `None` if the labeling avoids zero.
pub fn naive_witness(g: &Graph, factors: &[u32], labels: &[Vec<u32>]) -> Option<usize> {
    let zero = vec![0; factors.len()];
    connected_subsets(g)
        .into_iter()
        .filter(|&s| {
            let sum = (0..g.n())
                .filter(|v| s >> v & 1 == 1)
                .fold(zero.clone(), |acc, v| add(factors, &acc, &labels[v]));
            is_zero(&sum)
        })
        .map(|s| s.count_ones() as usize)
        .min()
}

/// Forcing by scanning all `|G|^n` labelings.
pub fn naive_forcing(g: &Graph, group: &GroupSpec) -> bool {
    let factors = group.factors().to_vec();
    let elems = all_elements(&factors);
    let subsets = connected_subsets(g);
    let n = g.n();
    let mut idx = vec![0usize; n];
    loop {
        let avoiding = subsets.iter().all(|&s| {
            let sum = (0..n)
                .filter(|v| s >> v & 1 == 1)
                .fold(vec![0; factors.len()], |acc, v| {
                    add(&factors, &acc, &elems[idx[v]])
                });
            !is_zero(&sum)
        });
        if avoiding {
            return false;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return true;
            }
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Sums over connected sets containing `v`.
pub fn naive_q_set(
    g: &Graph,
    factors: &[u32],
    labels: &[Vec<u32>],
    v: usize,
) -> BTreeSet<Vec<u32>> {
    connected_subsets(g)
        .into_iter()
        .filter(|s| s >> v & 1 == 1)
        .map(|s| {
            (0..g.n())
                .filter(|u| s >> u & 1 == 1)
                .fold(vec![0; factors.len()], |acc, u| {
                    add(factors, &acc, &labels[u])
                })
        })
        .collect()
}

/// Davenport constant by scanning all multisets of nonzero elements.
pub fn naive_davenport(factors: &[u32]) -> usize {
    let elems: Vec<Vec<u32>> = all_elements(factors)
        .into_iter()
        .filter(|x| !is_zero(x))
        .collect();
    let order = elems.len() + 1;
    let mut best = 0;
    // multisets of length L as nondecreasing index sequences
    fn zero_sum_free(factors: &[u32], seq: &[&Vec<u32>]) -> bool {
        let k = seq.len();
        (1u64..1 << k).all(|m| {
            let s = (0..k)
                .filter(|i| m >> i & 1 == 1)
                .fold(vec![0; factors.len()], |acc, i| add(factors, &acc, seq[i]));
            !is_zero(&s)
        })
    }
    fn rec<'a>(
        factors: &[u32],
        elems: &'a [Vec<u32>],
        start: usize,
        seq: &mut Vec<&'a Vec<u32>>,
        best: &mut usize,
    ) {
        if !zero_sum_free(factors, seq) {
            return;
        }
        *best = (*best).max(seq.len());
        for i in start..elems.len() {
            seq.push(&elems[i]);
            rec(factors, elems, i, seq, best);
            seq.pop();
        }
    }
    if order == 1 {
        return 1;
    }
    rec(factors, &elems, 0, &mut Vec::new(), &mut best);
    best + 1
}

/// Canonical key by minimizing the adjacency bit string over all permutations.
pub fn brute_canonical_key(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    fn permutations(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut Option<Vec<bool>>) {
        let n = perm.len();
        if k == n {
            let mut bits = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    bits.push(g.has_edge(perm[i], perm[j]));
                }
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                *best = Some(bits);
            }
            return;
        }
        for i in k..n {
            perm.swap(k, i);
            permutations(k + 1, perm, g, best);
            perm.swap(k, i);
        }
    }
    permutations(0, &mut perm, g, &mut best);
    best.unwrap_or_default()
}

/// Disjoint union of two graphs.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut edges: Vec<(usize, usize)> = a.edges().collect();
    edges.extend(b.edges().map(|(u, v)| (u + a.n(), v + a.n())));
    Graph::from_edges(a.n() + b.n(), &edges).unwrap()
}
