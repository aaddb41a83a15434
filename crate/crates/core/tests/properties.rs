mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::select;

use zsf::abelian::{enumerate_subgroups, groups_of_order, zero_sum_free_codes, QuotientMap};
use zsf::construct::{cycle_labeling, path_labeling, spider_from_sumset, tree_labeling};
use zsf::engine::{
    check_labeling, decide_zero_forcing, q_set, witness_bound, CheckMode, Labeling, SearchConfig,
};
use zsf::graphkit::{
    canonical_form, contains_induced, contains_minor, enumerate_graphs, is_scattered_bramble,
    pairs_linked, tree_separator, BrambleFamily,
};
use zsf::{Graph, GroupSpec, VertexSet};

use common::*;

fn groups_up_to(max: usize) -> Vec<GroupSpec> {
    (1..=max)
        .flat_map(|n| groups_of_order(n).unwrap())
        .collect()
}

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::empty(n).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)).prop_map(
            move |picks| {
                let mut t = Graph::empty(n).unwrap();
                for (i, p) in picks.iter().enumerate() {
                    t.add_edge(p.index(i + 1), i + 1).unwrap();
                }
                t
            },
        )
    })
}

fn arb_labeled(
    graph: impl Strategy<Value = Graph>,
    groups: Vec<GroupSpec>,
) -> impl Strategy<Value = Labeling> {
    (graph, select(groups)).prop_flat_map(|(g, group)| {
        let n = g.n();
        let order = group.order();
        prop::collection::vec(0..order, n)
            .prop_map(move |codes| Labeling::from_codes(g.clone(), group.clone(), &codes).unwrap())
    })
}

fn residues(l: &Labeling) -> Vec<Vec<u32>> {
    l.values().iter().map(|x| x.0.clone()).collect()
}

fn forcing(g: &Graph, group: &GroupSpec) -> bool {
    decide_zero_forcing(g, group, &SearchConfig::default())
        .unwrap()
        .is_forcing()
}

#[test]
fn decider_matches_naive_oracle() {
    for group in groups_up_to(6) {
        for n in 1..=5 {
            for g in enumerate_graphs(n, false).unwrap() {
                let v = decide_zero_forcing(&g, &group, &SearchConfig::default()).unwrap();
                assert_eq!(
                    v.is_forcing(),
                    naive_forcing(&g, &group),
                    "{} over {group}",
                    g.to_graph6()
                );
                if let Some(cert) = v.certificate() {
                    assert_eq!(naive_witness(&g, group.factors(), &residues(cert)), None);
                }
            }
        }
    }
}

#[test]
fn symmetry_and_parallel_search_agree_with_plain_search() {
    for group in groups_up_to(8) {
        for n in 1..=5 {
            for g in enumerate_graphs(n, true).unwrap() {
                let plain = forcing(&g, &group);
                for cfg in [
                    SearchConfig {
                        symmetry: true,
                        ..SearchConfig::default()
                    },
                    SearchConfig {
                        jobs: 3,
                        ..SearchConfig::default()
                    },
                ] {
                    let v = decide_zero_forcing(&g, &group, &cfg).unwrap();
                    assert_eq!(v.is_forcing(), plain, "{} over {group}", g.to_graph6());
                }
            }
        }
    }
}

#[test]
fn prime_groups_force_exactly_from_p_vertices() {
    for p in [2u32, 3, 5] {
        let group = GroupSpec::cyclic(p).unwrap();
        let p = p as usize;
        for g in enumerate_graphs(p, true).unwrap() {
            assert!(forcing(&g, &group));
        }
        for g in enumerate_graphs(p - 1, true).unwrap() {
            assert!(!forcing(&g, &group));
        }
    }
}

#[test]
fn path_and_cycle_constructions_exist_exactly_below_threshold() {
    for group in groups_up_to(8) {
        let order = group.order();
        let m = group.exponent() as usize;
        for n in 1..=order + 1 {
            let p = Graph::path(n).unwrap();
            assert_eq!(
                path_labeling(n, &group).is_ok(),
                !forcing(&p, &group),
                "P{n} over {group}"
            );
            if let Ok(l) = path_labeling(n, &group) {
                assert_eq!(naive_witness(&p, group.factors(), &residues(&l)), None);
            }
        }
        for n in 3..=order + 1 {
            let c = Graph::cycle(n).unwrap();
            let below = m >= 2 && n * m <= (m - 1) * order;
            assert_eq!(
                cycle_labeling(n, &group).is_ok(),
                below,
                "C{n} over {group}"
            );
            assert_eq!(forcing(&c, &group), !below, "C{n} over {group}");
            if let Ok(l) = cycle_labeling(n, &group) {
                assert_eq!(naive_witness(&c, group.factors(), &residues(&l)), None);
            }
        }
    }
}

#[test]
fn tree_labelings_for_every_small_tree() {
    for group in groups_up_to(8) {
        for n in 1..group.order() {
            for t in zsf::graphkit::enumerate_trees(n).unwrap() {
                let l = tree_labeling(&t, &group).unwrap();
                assert_eq!(
                    naive_witness(&t, group.factors(), &residues(&l)),
                    None,
                    "{} over {group}",
                    t.to_graph6()
                );
            }
        }
    }
}

#[test]
fn davenport_matches_brute_force() {
    for group in groups_up_to(9) {
        assert_eq!(
            group.davenport().unwrap(),
            naive_davenport(group.factors()),
            "{group}"
        );
    }
}

#[test]
fn davenport_between_exponent_and_order() {
    for group in groups_up_to(16) {
        let d = group.davenport().unwrap();
        assert!(
            group.exponent() as usize <= d && d <= group.order(),
            "{group}"
        );
        for len in 0..=group.order() {
            let found = group.zero_sum_free_sequence(len).unwrap();
            assert_eq!(found.is_some(), len < d, "{group} length {len}");
        }
    }
}

#[test]
fn quotient_maps_round_trip() {
    for group in groups_up_to(12) {
        for sub in enumerate_subgroups(&group).unwrap() {
            let q = QuotientMap::new(&group, &sub);
            assert_eq!(q.quotient_spec().order() * sub.order(), group.order());
            for c in 0..q.quotient_spec().order() {
                assert_eq!(q.project(&q.coset_rep(c)), c);
            }
            let elems = group.elements();
            for x in &elems {
                for y in &elems {
                    let lhs = q.project(&group.add(x, y).unwrap());
                    let rhs =
                        zsf::abelian::AddTable::add_codes(q.table(), q.project(x), q.project(y));
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(q.project(x) == 0, sub.contains(&group, x));
            }
            // a zero-sum-free sequence of the quotient exists exactly below its Davenport constant
            let d = q.davenport();
            assert!(zero_sum_free_codes(q.table(), d - 1).is_some());
            assert!(zero_sum_free_codes(q.table(), d).is_none());
        }
    }
}

#[test]
fn census_has_no_isomorphic_pairs() {
    for n in 1..=5 {
        let gs = enumerate_graphs(n, false).unwrap();
        let keys: BTreeSet<Vec<bool>> = gs.iter().map(brute_canonical_key).collect();
        assert_eq!(keys.len(), gs.len());
        // and covers every labeled graph on n vertices
        let all: BTreeSet<Vec<bool>> = (0u64..1 << (n * (n - 1) / 2))
            .map(|m| {
                brute_canonical_key(&graph_from_bits(
                    n,
                    &(0..n * (n - 1) / 2)
                        .map(|i| m >> i & 1 == 1)
                        .collect::<Vec<_>>(),
                ))
            })
            .collect();
        assert_eq!(all, keys);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn bounded_and_full_checks_agree(l in arb_labeled(arb_graph(1, 8), groups_up_to(8))) {
        let full = check_labeling(&l, CheckMode::Full);
        let bounded = check_labeling(&l, CheckMode::Bounded);
        prop_assert_eq!(full.is_avoiding(), bounded.is_avoiding());
        let naive = naive_witness(l.graph(), l.group().factors(), &residues(&l));
        prop_assert_eq!(naive.is_none(), full.is_avoiding());
        if let Some(size) = naive {
            prop_assert!(size <= witness_bound(l.group()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn q_set_recursion_matches_enumeration(l in arb_labeled(arb_tree(10), groups_up_to(8)), v in any::<prop::sample::Index>()) {
        let t = l.graph().clone();
        let v = v.index(t.n());
        let q = q_set(&t, &l, v).unwrap();
        let got: BTreeSet<Vec<u32>> = q.values.iter().map(|x| x.0.clone()).collect();
        prop_assert_eq!(got, naive_q_set(&t, l.group().factors(), &residues(&l), v));
    }

    #[test]
    fn q_sets_of_avoiding_prime_trees_are_large(t in arb_tree(6), p in select(vec![5u32, 7]), seed in any::<u64>()) {
        prop_assume!(t.n() < p as usize);
        let group = GroupSpec::cyclic(p).unwrap();
        // random nonzero labels until one avoids zero
        let mut state = seed | 1;
        let mut found = None;
        for _ in 0..2000 {
            let codes: Vec<usize> = (0..t.n()).map(|_| {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                1 + (state % (p as u64 - 1)) as usize
            }).collect();
            let l = Labeling::from_codes(t.clone(), group.clone(), &codes).unwrap();
            if naive_witness(&t, group.factors(), &residues(&l)).is_none() {
                found = Some(l);
                break;
            }
        }
        let l = found.expect("avoiding labeling exists below p");
        for v in 0..t.n() {
            prop_assert!(q_set(&t, &l, v).unwrap().values.len() >= t.n());
        }
    }

    #[test]
    fn separators_split_random_trees(t in arb_tree(40), m in 1usize..6) {
        let n_bound = t.n() / m + 1;
        let x = tree_separator(&t, m, n_bound).unwrap();
        prop_assert!(x.len() < m);
        for c in t.components_within(t.vertices().difference(x)) {
            prop_assert!(c.len() < n_bound);
        }
    }

    #[test]
    fn spiders_witness_cauchy_davenport(p in select(vec![3u32, 5, 7, 11]), a in any::<u64>(), b in any::<u64>()) {
        let pick = |mask: u64| -> Vec<u32> {
            let s: Vec<u32> = (0..p).filter(|i| mask >> i & 1 == 1).collect();
            if s.is_empty() { vec![0] } else { s }
        };
        let (a, b) = (pick(a), pick(b));
        let sums: BTreeSet<u32> = a.iter().flat_map(|x| b.iter().map(move |y| (x + y) % p)).collect();
        match spider_from_sumset(&a, &b, p) {
            Ok((g, l)) => {
                prop_assert!(sums.len() < p as usize);
                prop_assert_eq!(naive_witness(&g, &[p], &residues(&l)), None);
                prop_assert!(g.n() < p as usize);
                prop_assert!(sums.len() + 1 >= a.len() + b.len());
            }
            Err(_) => prop_assert_eq!(sums.len(), p as usize),
        }
    }

    #[test]
    fn constructions_avoid_zero(group in select(groups_up_to(16)), n in 1usize..20, t in arb_tree(12)) {
        if n < group.order() {
            let l = path_labeling(n, &group).unwrap();
            prop_assert!(check_labeling(&l, CheckMode::Full).is_avoiding());
        }
        if let Ok(l) = cycle_labeling(n, &group) {
            prop_assert!(check_labeling(&l, CheckMode::Full).is_avoiding());
        }
        if t.n() < group.order() {
            let l = tree_labeling(&t, &group).unwrap();
            prop_assert_eq!(naive_witness(&t, group.factors(), &residues(&l)), None);
        }
    }

    #[test]
    fn disconnected_graphs_force_through_a_component(a in arb_graph(1, 4), b in arb_graph(1, 4), group in select(groups_up_to(6))) {
        let u = disjoint_union(&a, &b);
        prop_assert_eq!(forcing(&u, &group), forcing(&a, &group) || forcing(&b, &group));
    }

    #[test]
    fn minors_of_forcing_graphs_transfer(g in arb_graph(1, 7), ops in prop::collection::vec((any::<bool>(), any::<prop::sample::Index>()), 0..4), group in select(groups_up_to(6))) {
        // h is obtained from g by deleting or contracting random edges/vertices
        let mut h = g.clone();
        for (contract, pick) in ops {
            let edges: Vec<(usize, usize)> = h.edges().collect();
            if contract && !edges.is_empty() {
                let (u, v) = edges[pick.index(edges.len())];
                let mut next = h.remove_vertex(v);
                let u2 = if u < v { u } else { u - 1 };
                for w in h.neighbors(v).iter().filter(|&w| w != u) {
                    let w2 = if w < v { w } else { w - 1 };
                    if !next.has_edge(u2, w2) {
                        next.add_edge(u2, w2).unwrap();
                    }
                }
                h = next;
            } else if h.n() > 1 {
                h = h.remove_vertex(pick.index(h.n()));
            }
        }
        prop_assert!(contains_minor(&g, &h).unwrap());
        if forcing(&h, &group) {
            prop_assert!(forcing(&g, &group));
        }
    }

    #[test]
    fn induced_subgraphs_are_found(g in arb_graph(1, 7), keep in any::<u64>()) {
        let set = VertexSet(keep & g.vertices().0);
        prop_assume!(!set.is_empty());
        let (h, _) = g.induced(set);
        prop_assert!(contains_induced(&g, &h).unwrap());
        prop_assert!(contains_minor(&g, &h).unwrap());
    }

    #[test]
    fn canonical_form_is_label_invariant(g in arb_graph(1, 8), perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = g.n();
        let perm: Vec<usize> = {
            let mut order: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
            order.truncate(n);
            order
        };
        let shuffled = g.permute(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&shuffled).unwrap());
    }

    #[test]
    fn menger_form_matches_bramble_definition(g in arb_graph(2, 7), assign in prop::collection::vec(0usize..4, 7), k in 1usize..4) {
        // members: connected pieces of vertex classes 1..=3, class 0 unused
        let mut members = Vec::new();
        for class in 1..4 {
            let set = VertexSet::from_vertices((0..g.n()).filter(|&v| assign[v] == class));
            if let Some(c) = g.components_within(set).into_iter().next() {
                members.push(c);
            }
        }
        let fam = BrambleFamily::new(&g, members).unwrap();
        prop_assume!(fam.len() >= k);
        prop_assert_eq!(is_scattered_bramble(&g, &fam, k), pairs_linked(&g, &fam, k));
    }
}
