//! Explicit zero-avoiding labelings for paths, cycles, trees and spiders.
//!
//! All constructions work on element codes of the parent group. Recursive
//! steps pass a pair of nested subgroups `small <= big`: vertices of a
//! separator get coset representatives of a zero-sum-free sequence in
//! `big / small`, so any connected set meeting the separator sums outside
//! `small`, while the remaining components are labeled inside `small`.

use thiserror::Error;

use crate::abelian::{
    enumerate_subgroups, is_prime, zero_sum_free_codes, CosetTable, Element, GroupError, GroupSpec,
    QuotientMap, Subgroup,
};
use crate::engine::{check_labeling, CheckMode, EngineError, Labeling};
use crate::graphkit::{tree_separator, Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    /// The requested labeling cannot exist.
    #[error("no zero-avoiding labeling exists: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Consecutive differences of the first `n + 1` members of `h` in code order.
fn path_codes(g: &GroupSpec, h: &Subgroup, n: usize) -> Option<Vec<usize>> {
    let members = h.codes();
    if n >= members.len() {
        return None;
    }
    Some(
        (0..n)
            .map(|j| g.sub_code(members[j + 1], members[j]))
            .collect(),
    )
}

/// Difference labeling of `P_n` from the element enumeration in code order.
pub fn path_labeling(n: usize, g: &GroupSpec) -> Result<Labeling, ConstructError> {
    let codes = path_codes(g, &Subgroup::whole(g), n).ok_or_else(|| {
        ConstructError::Infeasible(format!(
            "P{n} is zero-forcing for {g} since {n} >= {}",
            g.order()
        ))
    })?;
    Ok(Labeling::from_codes(Graph::path(n)?, g.clone(), &codes)?)
}

/// Labels `x` by lifting a zero-sum-free sequence of `big / small`.
fn lift_separator(
    g: &GroupSpec,
    big: &Subgroup,
    small: &Subgroup,
    x: VertexSet,
    codes: &mut [usize],
) -> Result<(), ConstructError> {
    let table = CosetTable::new(g, big, small);
    let seq = zero_sum_free_codes(&table, x.len()).ok_or_else(|| {
        ConstructError::Precondition(format!(
            "separator of size {} is not below the Davenport constant of the quotient",
            x.len()
        ))
    })?;
    for (v, c) in x.iter().zip(seq) {
        codes[v] = table.lift(c);
    }
    Ok(())
}

/// Combines avoiding labelings of the components of `graph - x`, all with
/// values in `sub`, with a separator labeling whose nonempty partial sums
/// avoid `sub`.
///
/// `comp_labels[v]` is ignored for `v` in `x` and required elsewhere.
pub fn separator_lift(
    graph: &Graph,
    group: &GroupSpec,
    x: VertexSet,
    sub: &Subgroup,
    comp_labels: &[Option<Element>],
) -> Result<Labeling, ConstructError> {
    if comp_labels.len() != graph.n() {
        return Err(ConstructError::Precondition(
            "one label slot per vertex required".into(),
        ));
    }
    if !x.is_subset(graph.vertices()) {
        return Err(ConstructError::Precondition(
            "separator outside the graph".into(),
        ));
    }
    let mut codes = vec![0usize; graph.n()];
    let rest = graph.vertices().difference(x);
    for v in rest.iter() {
        let value = comp_labels[v].as_ref().ok_or_else(|| {
            ConstructError::Precondition(format!("vertex {v} has no component label"))
        })?;
        group.validate(value)?;
        if !sub.contains(group, value) {
            return Err(ConstructError::Precondition(format!(
                "label {value} of vertex {v} is outside the subgroup"
            )));
        }
        codes[v] = group.encode(value);
    }
    for comp in graph.components_within(rest) {
        let (h, map) = graph.induced(comp);
        let local: Vec<usize> = map.iter().map(|&v| codes[v]).collect();
        let l = Labeling::from_codes(h, group.clone(), &local)?;
        if !check_labeling(&l, CheckMode::Full).is_avoiding() {
            return Err(ConstructError::Precondition(format!(
                "component {:?} is not zero-avoiding",
                comp.to_vec()
            )));
        }
    }
    lift_separator(group, &Subgroup::whole(group), sub, x, &mut codes)?;
    Ok(Labeling::from_codes(graph.clone(), group.clone(), &codes)?)
}

/// Proper subgroups of `h` that are maximal below it, in enumeration order.
fn maximal_below(all: &[Subgroup], h: &Subgroup) -> Vec<Subgroup> {
    let proper: Vec<&Subgroup> = all
        .iter()
        .filter(|s| s.is_subgroup_of(h) && *s != h)
        .collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t != *s && s.is_subgroup_of(t)))
        .map(|s| (*s).clone())
        .collect()
}

fn tree_rec(
    t: &Graph,
    g: &GroupSpec,
    all: &[Subgroup],
    within: VertexSet,
    h: &Subgroup,
    codes: &mut [usize],
) -> Result<(), ConstructError> {
    debug_assert!(within.len() < h.order());
    if let Some(gen) = h.generator(g) {
        for v in within.iter() {
            codes[v] = gen;
        }
        return Ok(());
    }
    let sub = maximal_below(all, h)
        .into_iter()
        .next()
        .expect("a noncyclic group has maximal subgroups");
    let p = h.order() / sub.order();
    let (local, map) = t.induced(within);
    let x_local = tree_separator(&local, p, sub.order())?;
    let x = VertexSet::from_vertices(x_local.iter().map(|i| map[i]));
    for comp in t.components_within(within.difference(x)) {
        tree_rec(t, g, all, comp, &sub, codes)?;
    }
    lift_separator(g, h, &sub, x, codes)
}

/// Zero-avoiding labeling of a tree with fewer vertices than the group.
///
/// Cyclic groups label every vertex with a generator. Otherwise a maximal
/// subgroup of prime index `p` is chosen, a separator of fewer than `p`
/// vertices splits the tree into pieces smaller than the subgroup, the pieces
/// are labeled recursively inside it and the separator is lifted.
pub fn tree_labeling(t: &Graph, g: &GroupSpec) -> Result<Labeling, ConstructError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    if t.n() >= g.order() {
        return Err(ConstructError::Infeasible(format!(
            "a tree on {} vertices is zero-forcing for {g}",
            t.n()
        )));
    }
    let all = enumerate_subgroups(g)?;
    let mut codes = vec![0usize; t.n()];
    tree_rec(t, g, &all, t.vertices(), &Subgroup::whole(g), &mut codes)?;
    Ok(Labeling::from_codes(t.clone(), g.clone(), &codes)?)
}

/// A subgroup whose quotient is cyclic of order `m`.
pub fn subgroup_with_cyclic_quotient(g: &GroupSpec, m: usize) -> Result<Subgroup, ConstructError> {
    for s in enumerate_subgroups(g)? {
        if s.order() * m != g.order() {
            continue;
        }
        let q = QuotientMap::new(g, &s);
        if q.quotient_spec().is_cyclic() {
            return Ok(s);
        }
    }
    Err(ConstructError::Precondition(format!(
        "{g} has no subgroup with cyclic quotient of order {m}"
    )))
}

/// Zero-avoiding labeling of `C_n` for `n <= (m - 1) / m * |G|`, `m` the exponent.
///
/// Cuts at positions `ceil(i * n / (m - 1))` for `i < m - 1` leave arcs shorter
/// than `|G| / m`; arcs get path labelings inside a subgroup `H` with
/// `G / H = Z_m`, and the cuts are lifted from a zero-sum-free sequence of `Z_m`.
pub fn cycle_labeling(n: usize, g: &GroupSpec) -> Result<Labeling, ConstructError> {
    if n < 3 {
        return Err(ConstructError::Precondition(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    let m = g.exponent() as usize;
    if m < 2 || n * m > (m - 1) * g.order() {
        return Err(ConstructError::Infeasible(format!(
            "C{n} is zero-forcing for {g}: {n} > {}/{m} * {}",
            m.saturating_sub(1),
            g.order()
        )));
    }
    let h = subgroup_with_cyclic_quotient(g, m)?;
    let mut cuts: Vec<usize> = (0..m - 1).map(|i| (i * n).div_ceil(m - 1) % n).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let x = VertexSet::from_vertices(cuts.iter().copied());
    let c = Graph::cycle(n)?;
    let mut codes = vec![0usize; n];
    for arc in c.components_within(c.vertices().difference(x)) {
        // arcs never wrap since vertex 0 is always cut
        let labels = path_codes(g, &h, arc.len()).expect("arcs are shorter than the subgroup");
        for (v, code) in arc.iter().zip(labels) {
            codes[v] = code;
        }
    }
    lift_separator(g, &Subgroup::whole(g), &h, x, &mut codes)?;
    Ok(Labeling::from_codes(c, g.clone(), &codes)?)
}

/// Spider built from `A, B` in `Z_p` with `A + B != Z_p`.
///
/// With `C = Z_p \ -(A + B)` and the three sets in increasing order, vertex 0
/// is the center labeled `a1 + b1 + c1`; legs of `|A| - 1`, `|B| - 1` and
/// `|C| - 1` vertices follow, labeled by consecutive differences. The result
/// is zero-avoiding and has `|A| + |B| + |C| - 2` vertices.
pub fn spider_from_sumset(
    a: &[u32],
    b: &[u32],
    p: u32,
) -> Result<(Graph, Labeling), ConstructError> {
    if !is_prime(p as usize) {
        return Err(ConstructError::Precondition(format!("{p} is not prime")));
    }
    let g = GroupSpec::cyclic(p)?;
    let normalize = |s: &[u32], name: &str| -> Result<Vec<u32>, ConstructError> {
        if s.is_empty() {
            return Err(ConstructError::Precondition(format!("{name} is empty")));
        }
        if let Some(x) = s.iter().find(|&&x| x >= p) {
            return Err(ConstructError::Precondition(format!(
                "{x} is not a residue mod {p}"
            )));
        }
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(v)
    };
    let a = normalize(a, "A")?;
    let b = normalize(b, "B")?;
    let mut in_sum = vec![false; p as usize];
    for &x in &a {
        for &y in &b {
            in_sum[((x + y) % p) as usize] = true;
        }
    }
    // c is in C iff -c is not in A + B
    let c: Vec<u32> = (0..p)
        .filter(|&z| !in_sum[((p - z) % p) as usize])
        .collect();
    if c.is_empty() {
        return Err(ConstructError::Infeasible(
            "A + B covers the whole group".into(),
        ));
    }
    let order = a.len() + b.len() + c.len() - 2;
    let mut graph = Graph::empty(order)?;
    let mut labels = vec![(a[0] + b[0] + c[0]) % p];
    for set in [&a, &b, &c] {
        let mut prev = 0;
        for i in 1..set.len() {
            let v = labels.len();
            graph.add_edge(prev, v)?;
            labels.push(set[i] - set[i - 1]);
            prev = v;
        }
    }
    let values = labels.into_iter().map(|r| Element(vec![r])).collect();
    let l = Labeling::new(graph.clone(), g, values)?;
    Ok((graph, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn avoiding(l: &Labeling) -> bool {
        check_labeling(l, CheckMode::Full).is_avoiding()
    }

    fn residues(l: &Labeling) -> Vec<Vec<u32>> {
        l.values().iter().map(|x| x.0.clone()).collect()
    }

    #[test]
    fn paths() {
        let l = path_labeling(3, &grp("Z4")).unwrap();
        assert_eq!(residues(&l), vec![vec![1], vec![1], vec![1]]);
        assert!(avoiding(&l));
        assert_eq!(
            residues(&path_labeling(1, &grp("Z2")).unwrap()),
            vec![vec![1]]
        );
        assert!(matches!(
            path_labeling(4, &grp("Z4")),
            Err(ConstructError::Infeasible(_))
        ));
        assert!(avoiding(&path_labeling(7, &grp("Z2xZ4")).unwrap()));
    }

    #[test]
    fn star_lift() {
        let z4 = grp("Z4");
        let sub = Subgroup::generated_by(&z4, &[2]);
        for k in 1..=6 {
            let star = Graph::star(k).unwrap();
            let mut labels = vec![Some(Element(vec![2])); k + 1];
            labels[0] = None;
            let l = separator_lift(&star, &z4, VertexSet::singleton(0), &sub, &labels).unwrap();
            assert_eq!(l.values()[0], Element(vec![1]));
            assert!(avoiding(&l));
        }
    }

    #[test]
    fn lift_without_separator_is_union() {
        let z5 = grp("Z5");
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let labels: Vec<_> = [1, 1, 2, 2]
            .iter()
            .map(|&r| Some(Element(vec![r])))
            .collect();
        let l = separator_lift(&g, &z5, VertexSet::EMPTY, &Subgroup::whole(&z5), &labels).unwrap();
        assert_eq!(residues(&l), vec![vec![1], vec![1], vec![2], vec![2]]);
    }

    #[test]
    fn lift_on_a_cycle() {
        // C6 over Z2xZ4 with X = {0, 2, 4} and quotient Z4 by <(1,0)>
        let g = grp("Z2xZ4");
        let sub = Subgroup::generated_by(&g, &[g.encode(&Element(vec![1, 0]))]);
        let c6 = Graph::cycle(6).unwrap();
        let labels: Vec<_> = (0..6)
            .map(|v| (v % 2 == 1).then(|| Element(vec![1, 0])))
            .collect();
        let l =
            separator_lift(&c6, &g, VertexSet::from_vertices([0, 2, 4]), &sub, &labels).unwrap();
        assert!(avoiding(&l));
    }

    #[test]
    fn lift_errors() {
        let z4 = grp("Z4");
        let sub = Subgroup::generated_by(&z4, &[2]);
        let c6 = Graph::cycle(6).unwrap();
        // D(Z4 / {0,2}) = 2, so two separator vertices are too many
        let labels: Vec<_> = (0..6)
            .map(|v| (v % 3 != 0).then(|| Element(vec![2])))
            .collect();
        assert!(separator_lift(&c6, &z4, VertexSet::from_vertices([0, 3]), &sub, &labels).is_err());
        // components labeled 2,2 sum to zero
        let p3 = Graph::path(3).unwrap();
        let labels = vec![Some(Element(vec![2])), Some(Element(vec![2])), None];
        assert!(separator_lift(&p3, &z4, VertexSet::singleton(2), &sub, &labels).is_err());
        let labels = vec![Some(Element(vec![1])), None, None];
        assert!(separator_lift(&p3, &z4, VertexSet::from_vertices([1, 2]), &sub, &labels).is_err());
    }

    #[test]
    fn trees() {
        let z4 = grp("Z4");
        let star = Graph::star(2).unwrap();
        assert!(avoiding(&tree_labeling(&star, &z4).unwrap()));
        assert!(matches!(
            tree_labeling(&Graph::star(3).unwrap(), &z4),
            Err(ConstructError::Infeasible(_))
        ));
        let p7 = Graph::path(7).unwrap();
        assert!(avoiding(&tree_labeling(&p7, &grp("Z2xZ4")).unwrap()));
        let z5 = grp("Z5");
        assert!(avoiding(
            &tree_labeling(&Graph::star(3).unwrap(), &z5).unwrap()
        ));
        assert!(matches!(
            tree_labeling(&Graph::path(4).unwrap(), &z4),
            Err(ConstructError::Infeasible(_))
        ));
        assert!(tree_labeling(&Graph::cycle(3).unwrap(), &z4).is_err());
        let v = grp("Z2xZ2xZ2");
        assert!(avoiding(
            &tree_labeling(&Graph::star(6).unwrap(), &v).unwrap()
        ));
    }

    #[test]
    fn cycles() {
        let l = cycle_labeling(3, &grp("Z4")).unwrap();
        assert!(avoiding(&l));
        for n in 3..=6 {
            assert!(avoiding(&cycle_labeling(n, &grp("Z2xZ4")).unwrap()), "C{n}");
        }
        assert!(cycle_labeling(7, &grp("Z2xZ4")).is_err());
        assert!(cycle_labeling(2, &grp("Z4")).is_err());
        assert!(cycle_labeling(3, &grp("Z2xZ2")).is_err());
        assert!(avoiding(&cycle_labeling(5, &grp("Z6")).unwrap()));
    }

    #[test]
    fn spiders() {
        let (g, l) = spider_from_sumset(&[0, 1], &[0, 1], 5).unwrap();
        assert_eq!(g.n(), 4);
        assert!(avoiding(&l));
        let (g, l) = spider_from_sumset(&[0], &[0], 3).unwrap();
        assert_eq!(g.n(), 2);
        assert!(avoiding(&l));
        assert!(matches!(
            spider_from_sumset(&[0, 1], &[0, 1, 2], 3),
            Err(ConstructError::Infeasible(_))
        ));
        assert!(spider_from_sumset(&[0], &[0], 4).is_err());
        assert!(spider_from_sumset(&[], &[0], 5).is_err());
    }
}
