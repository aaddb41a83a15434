use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// Disjoint nonempty connected vertex sets of one host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrambleFamily {
    members: Vec<VertexSet>,
}

impl BrambleFamily {
    pub fn new(g: &Graph, members: Vec<VertexSet>) -> Result<Self, GraphError> {
        let mut used = VertexSet::EMPTY;
        for &m in &members {
            if !m.is_subset(g.vertices()) {
                return Err(GraphError::Precondition(format!(
                    "bramble member {m:?} outside the graph"
                )));
            }
            if !g.is_connected_set(m) {
                return Err(GraphError::Precondition(format!(
                    "bramble member {m:?} is empty or disconnected"
                )));
            }
            if !m.is_disjoint(used) {
                return Err(GraphError::Precondition("bramble members overlap".into()));
            }
            used = used.union(m);
        }
        Ok(BrambleFamily { members })
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Whether every `X` with `|X| < k` leaves exactly one component of `g - X`
/// that entirely contains (hence avoids `X` on) some member.
pub fn is_scattered_bramble(g: &Graph, fam: &BrambleFamily, k: usize) -> bool {
    let n = g.n();
    let mut ok = true;
    for_each_subset_below(n, k, |x| {
        let rest = g.vertices().difference(x);
        let holding = g
            .components_within(rest)
            .into_iter()
            .filter(|c| fam.members().iter().any(|m| m.is_subset(*c)))
            .count();
        if holding != 1 {
            ok = false;
        }
        ok
    });
    ok
}

/// Calls `f` on every subset of `0..n` of size `< k`, until it returns false.
fn for_each_subset_below(n: usize, k: usize, mut f: impl FnMut(VertexSet) -> bool) {
    fn rec(
        start: usize,
        n: usize,
        left: usize,
        cur: VertexSet,
        f: &mut dyn FnMut(VertexSet) -> bool,
    ) -> bool {
        if !f(cur) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for v in start..n {
            let mut next = cur;
            next.insert(v);
            if !rec(v + 1, n, left - 1, next, f) {
                return false;
            }
        }
        true
    }
    if k == 0 {
        return;
    }
    rec(0, n, k - 1, VertexSet::EMPTY, &mut f);
}

/// Pairwise linkage form of the bramble condition: every two members are
/// joined by an edge or by `k` internally disjoint paths (Menger).
pub fn pairs_linked(g: &Graph, fam: &BrambleFamily, k: usize) -> bool {
    let ms = fam.members();
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let touching = !g.neighborhood(ms[i]).is_disjoint(ms[j]);
            if !touching && disjoint_paths(g, ms[i], ms[j], k) < k {
                return false;
            }
        }
    }
    true
}

/// Maximum number (capped at `cap`) of paths from `a` to `b` whose interiors
/// are pairwise disjoint and avoid `a` and `b`.
fn disjoint_paths(g: &Graph, a: VertexSet, b: VertexSet, cap: usize) -> usize {
    // nodes: 0 = source, 1 = sink, 2 + 2v = v_in, 3 + 2v = v_out
    let n = g.n();
    let size = 2 + 2 * n;
    let mut cap_m = vec![vec![0i32; size]; size];
    let inner = g.vertices().difference(a).difference(b);
    let v_in = |v: usize| 2 + 2 * v;
    let v_out = |v: usize| 3 + 2 * v;
    for v in inner.iter() {
        cap_m[v_in(v)][v_out(v)] = 1;
        if !g.neighbors(v).is_disjoint(a) {
            cap_m[0][v_in(v)] = 1;
        }
        if !g.neighbors(v).is_disjoint(b) {
            cap_m[v_out(v)][1] = 1;
        }
        for w in g.neighbors(v).intersection(inner).iter() {
            cap_m[v_out(v)][v_in(w)] = 1;
        }
    }
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; size];
        prev[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            if u == 1 {
                break;
            }
            for w in 0..size {
                if prev[w] == usize::MAX && cap_m[u][w] > 0 {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[1] == usize::MAX {
            break;
        }
        let mut w = 1;
        while w != 0 {
            let u = prev[w];
            cap_m[u][w] -= 1;
            cap_m[w][u] += 1;
            w = u;
        }
        flow += 1;
    }
    flow
}
