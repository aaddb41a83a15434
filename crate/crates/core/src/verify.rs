//! Verification suites comparing engine verdicts with closed-form predictions.
//!
//! Each suite yields one row per instance. Rows are `pass`/`fail` when a
//! prediction exists, `unknown` when the search budget ran out, and `info`
//! for scan data that asserts nothing.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{groups_of_order, GroupSpec};
use crate::construct::tree_labeling;
use crate::engine::{
    check_labeling, decide_zero_forcing, q_set, witness_bound, witness_bound_formula, CheckMode,
    CheckOutcome, EngineError, Labeling, SearchConfig,
};
use crate::graphkit::{
    enumerate_graphs, enumerate_trees, for_each_connected_set, is_scattered_bramble, BrambleFamily,
    Graph, VertexSet, MAX_CENSUS_ORDER,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Unknown,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub status: RowStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<Row>,
    pub summary: String,
}

impl SuiteReport {
    fn new(suite: &str, rows: Vec<Row>) -> Self {
        let count = |s| rows.iter().filter(|r| r.status == s).count();
        let summary = format!(
            "{} rows: {} pass, {} fail, {} unknown, {} info",
            rows.len(),
            count(RowStatus::Pass),
            count(RowStatus::Fail),
            count(RowStatus::Unknown),
            count(RowStatus::Info)
        );
        SuiteReport {
            suite: suite.to_string(),
            rows,
            summary,
        }
    }

    pub fn count(&self, status: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// No failing and no unknown rows.
    pub fn all_passed(&self) -> bool {
        self.count(RowStatus::Fail) == 0 && self.count(RowStatus::Unknown) == 0
    }
}

#[derive(Debug)]
pub struct SuiteError(pub String);

impl std::fmt::Display for SuiteError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SuiteError {}

fn err<E: std::fmt::Display>(e: E) -> SuiteError {
    SuiteError(e.to_string())
}

fn word(forcing: bool) -> &'static str {
    if forcing {
        "forcing"
    } else {
        "not forcing"
    }
}

/// Row comparing a decider run with a predicted verdict.
fn verdict_row(
    instance: String,
    g: &Graph,
    group: &GroupSpec,
    expect: bool,
    cfg: &SearchConfig,
) -> Result<Row, SuiteError> {
    let (observed, status) = match decide_zero_forcing(g, group, cfg) {
        Ok(v) => {
            if let Some(cert) = v.certificate() {
                if !check_labeling(cert, CheckMode::Full).is_avoiding() {
                    return Ok(Row {
                        instance,
                        expected: word(expect).into(),
                        observed: "bad certificate".into(),
                        status: RowStatus::Fail,
                    });
                }
            }
            let f = v.is_forcing();
            (
                word(f).to_string(),
                if f == expect {
                    RowStatus::Pass
                } else {
                    RowStatus::Fail
                },
            )
        }
        Err(EngineError::BudgetExhausted { .. }) => {
            ("unknown (budget)".to_string(), RowStatus::Unknown)
        }
        Err(e) => return Err(err(e)),
    };
    Ok(Row {
        instance,
        expected: word(expect).into(),
        observed,
        status,
    })
}

/// `P_n` is forcing iff `n >= |G|`.
pub fn path_suite(
    group: &GroupSpec,
    max_n: usize,
    cfg: &SearchConfig,
) -> Result<SuiteReport, SuiteError> {
    let rows = (1..=max_n)
        .map(|n| {
            verdict_row(
                format!("P{n} over {group}"),
                &Graph::path(n).map_err(err)?,
                group,
                n >= group.order(),
                cfg,
            )
        })
        .collect::<Result<_, _>>()?;
    Ok(SuiteReport::new("path", rows))
}

/// For `Z_p`: connected graphs on `p` vertices are forcing, those on `p - 1` are not.
pub fn prime_suite(group: &GroupSpec, cfg: &SearchConfig) -> Result<SuiteReport, SuiteError> {
    if !group.is_prime_cyclic() {
        return Err(SuiteError(format!("{group} is not cyclic of prime order")));
    }
    let p = group.order();
    if p > MAX_CENSUS_ORDER {
        return Err(SuiteError(format!(
            "p = {p} exceeds the census cap {MAX_CENSUS_ORDER}"
        )));
    }
    let mut rows = Vec::new();
    for n in [p - 1, p] {
        for g in enumerate_graphs(n, true).map_err(err)? {
            rows.push(verdict_row(
                format!("{} over {group}", g.to_graph6()),
                &g,
                group,
                n >= p,
                cfg,
            )?);
        }
    }
    Ok(SuiteReport::new("prime", rows))
}

/// `C_n` is forcing iff `n >= 1 + (m - 1) / m * |G|`, `m` the exponent.
pub fn cycle_threshold_forcing(group: &GroupSpec, n: usize) -> bool {
    let m = group.exponent() as usize;
    n * m >= m + (m - 1) * group.order()
}

pub fn cycle_suite(
    group: &GroupSpec,
    max_n: usize,
    cfg: &SearchConfig,
) -> Result<SuiteReport, SuiteError> {
    let rows = (3..=max_n)
        .map(|n| {
            let c = Graph::cycle(n).map_err(err)?;
            verdict_row(
                format!("C{n} over {group}"),
                &c,
                group,
                cycle_threshold_forcing(group, n),
                cfg,
            )
        })
        .collect::<Result<_, _>>()?;
    Ok(SuiteReport::new("cycle", rows))
}

/// Trees below `|G|` vertices are not forcing and get a verified construction;
/// `P_|G|` is forcing.
pub fn tree_suite(group: &GroupSpec, cfg: &SearchConfig) -> Result<SuiteReport, SuiteError> {
    let order = group.order();
    if order > MAX_CENSUS_ORDER + 1 {
        return Err(SuiteError(format!(
            "trees below order {order} exceed the census cap"
        )));
    }
    let mut rows = Vec::new();
    for n in 1..order {
        for t in enumerate_trees(n).map_err(err)? {
            let name = format!("tree {} over {group}", t.to_graph6());
            rows.push(verdict_row(name.clone(), &t, group, false, cfg)?);
            let (observed, status) = match tree_labeling(&t, group) {
                Ok(l) if check_labeling(&l, CheckMode::Full).is_avoiding() => {
                    ("avoiding".to_string(), RowStatus::Pass)
                }
                Ok(_) => ("not avoiding".to_string(), RowStatus::Fail),
                Err(e) => (e.to_string(), RowStatus::Fail),
            };
            rows.push(Row {
                instance: format!("construct {name}"),
                expected: "avoiding".into(),
                observed,
                status,
            });
        }
    }
    rows.push(verdict_row(
        format!("P{order} over {group}"),
        &Graph::path(order).map_err(err)?,
        group,
        true,
        cfg,
    )?);
    Ok(SuiteReport::new("tree", rows))
}

/// Rows of an `r x r` grid form a scattered bramble of order `r`; when
/// `r >= D` and `r + 1 >= D` the grid must be forcing.
pub fn bramble_suite(group: &GroupSpec, cfg: &SearchConfig) -> Result<SuiteReport, SuiteError> {
    let d = group.davenport().map_err(err)?;
    let mut rows = Vec::new();
    for r in 2..=3 {
        let g = Graph::grid(r, r).map_err(err)?;
        let members = (0..r)
            .map(|i| VertexSet::from_vertices((0..r).map(|j| i * r + j)))
            .collect();
        let fam = BrambleFamily::new(&g, members).map_err(err)?;
        let ok = is_scattered_bramble(&g, &fam, r) && !is_scattered_bramble(&g, &fam, r + 1);
        rows.push(Row {
            instance: format!("rows of grid{r}x{r}"),
            expected: format!("scattered bramble of order exactly {r}"),
            observed: if ok { "yes".into() } else { "no".into() },
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
        });
        let name = format!("grid{r}x{r} over {group} (D = {d})");
        if fam.len() >= d && r + 1 >= d {
            rows.push(verdict_row(name, &g, group, true, cfg)?);
        } else {
            let observed = match decide_zero_forcing(&g, group, cfg) {
                Ok(v) => word(v.is_forcing()).to_string(),
                Err(e) => e.to_string(),
            };
            rows.push(Row {
                instance: name,
                expected: "no prediction".into(),
                observed,
                status: RowStatus::Info,
            });
        }
    }
    Ok(SuiteReport::new("bramble", rows))
}

/// Scans graphs on up to `max_vertices` vertices, comparing `Z_n` with the
/// other groups of order `n`. A graph forcing for `Z_n` but not for another
/// group is a counterexample row (`fail`); everything else passes.
pub fn monotone_suite(
    order: usize,
    max_vertices: usize,
    connected_only: bool,
    cfg: &SearchConfig,
) -> Result<SuiteReport, SuiteError> {
    let groups = groups_of_order(order).map_err(err)?;
    let min_vertices = if connected_only { 2 } else { 1 };
    let mut rows = Vec::new();
    for n in min_vertices..=max_vertices {
        for g in enumerate_graphs(n, connected_only).map_err(err)? {
            let mut verdicts = Vec::new();
            for grp in &groups {
                match decide_zero_forcing(&g, grp, cfg) {
                    Ok(v) => verdicts.push(Some(v.is_forcing())),
                    Err(EngineError::BudgetExhausted { .. }) => verdicts.push(None),
                    Err(e) => return Err(err(e)),
                }
            }
            let observed = groups
                .iter()
                .zip(&verdicts)
                .map(|(grp, v)| format!("{grp}: {}", v.map_or("unknown", word)))
                .collect::<Vec<_>>()
                .join(", ");
            let status = if verdicts.contains(&None) {
                RowStatus::Unknown
            } else if verdicts[0] == Some(true) && verdicts.contains(&Some(false)) {
                RowStatus::Fail
            } else {
                RowStatus::Pass
            };
            rows.push(Row {
                instance: g.to_graph6(),
                expected: format!(
                    "forcing for {} implies forcing for every group of order {order}",
                    groups[0]
                ),
                observed,
                status,
            });
        }
    }
    Ok(SuiteReport::new("monotone", rows))
}

/// Random tree on `n` vertices: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut t = Graph::empty(n).expect("n <= 64");
    for i in 1..n {
        t.add_edge(rng.gen_range(0..i), i).expect("fresh edge");
    }
    t
}

/// Random zero-avoiding labeling by randomized backtracking, if one exists.
fn random_avoiding(rng: &mut impl Rng, g: &Graph, group: &GroupSpec) -> Option<Labeling> {
    fn rec(
        rng: &mut impl Rng,
        g: &Graph,
        group: &GroupSpec,
        order: &[usize],
        pos: usize,
        codes: &mut Vec<usize>,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let prefix = VertexSet::from_vertices(order[..=pos].iter().copied());
        let mut choices: Vec<usize> = (1..group.order()).collect();
        choices.shuffle(rng);
        for x in choices {
            codes[v] = x;
            let (h, map) = g.induced(prefix);
            let anchor = map.iter().position(|&u| u == v).expect("v in prefix");
            let mut ok = true;
            let _ = for_each_connected_set(&h, h.n(), Some(anchor), |s| {
                let sum = s
                    .iter()
                    .fold(0, |acc, i| group.add_code(acc, codes[map[i]]));
                if sum == 0 {
                    ok = false;
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if ok && rec(rng, g, group, order, pos + 1, codes) {
                return true;
            }
        }
        false
    }
    let order = g.bfs_order();
    let mut codes = vec![0; g.n()];
    rec(rng, g, group, &order, 0, &mut codes)
        .then(|| Labeling::from_codes(g.clone(), group.clone(), &codes).expect("valid codes"))
}

/// Q-set of `v` by direct enumeration of connected sets containing it.
pub fn q_set_brute(l: &Labeling, v: usize) -> std::collections::BTreeSet<crate::abelian::Element> {
    let mut out = std::collections::BTreeSet::new();
    let _ = for_each_connected_set(l.graph(), l.graph().n(), Some(v), |s| {
        out.insert(l.sum(s));
        ControlFlow::Continue(())
    });
    out
}

/// Random zero-avoiding labeled trees over each `Z_p`: the Q-set recursion
/// matches enumeration and `|Q(t, T)| >= |T|` at every vertex.
pub fn qset_suite(
    primes: &[u32],
    count: usize,
    max_vertices: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &p in primes {
        let group = GroupSpec::cyclic(p).map_err(err)?;
        // avoiding labelings of trees exist only below p vertices
        let top = max_vertices.min(p as usize - 1).max(1);
        for i in 0..count {
            let n = rng.gen_range(1..=top);
            let t = random_tree(&mut rng, n);
            let l = random_avoiding(&mut rng, &t, &group)
                .ok_or_else(|| SuiteError("tree below p has no avoiding labeling".into()))?;
            let mut ok = true;
            let mut smallest = usize::MAX;
            for v in 0..n {
                let q = q_set(&t, &l, v).map_err(err)?;
                ok &= q.values == q_set_brute(&l, v);
                smallest = smallest.min(q.values.len());
            }
            ok &= smallest >= n;
            rows.push(Row {
                instance: format!("Z{p} tree #{i} {}", t.to_graph6()),
                expected: format!("Q-sets match enumeration, min |Q| >= {n}"),
                observed: format!("min |Q| = {smallest}"),
                status: if ok { RowStatus::Pass } else { RowStatus::Fail },
            });
        }
    }
    Ok(SuiteReport::new("qset", rows))
}

/// Random labeled graphs: bounded and full checks agree on whether a witness
/// exists. The last row reproduces the `Z2xZ2` / `P4` labeling whose only
/// witness is larger than the unrepaired bound.
pub fn witness_suite(
    count: usize,
    max_vertices: usize,
    max_order: usize,
    seed: u64,
) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut groups = Vec::new();
    for n in 1..=max_order {
        groups.extend(groups_of_order(n).map_err(err)?);
    }
    let mut rows = Vec::new();
    for i in 0..count {
        let group = groups.choose(&mut rng).expect("nonempty").clone();
        let n = rng.gen_range(1..=max_vertices);
        let mut g = Graph::empty(n).map_err(err)?;
        let density: f64 = rng.gen_range(0.2..0.8);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    g.add_edge(u, v).map_err(err)?;
                }
            }
        }
        let codes: Vec<usize> = (0..n).map(|_| rng.gen_range(0..group.order())).collect();
        let l = Labeling::from_codes(g.clone(), group.clone(), &codes).map_err(err)?;
        let full = check_labeling(&l, CheckMode::Full).is_avoiding();
        let bounded = check_labeling(&l, CheckMode::Bounded).is_avoiding();
        rows.push(Row {
            instance: format!("#{i} {} over {group}", g.to_graph6()),
            expected: format!("full: {}", if full { "avoiding" } else { "witness" }),
            observed: format!(
                "bounded (s = {}): {}",
                witness_bound(&group),
                if bounded { "avoiding" } else { "witness" }
            ),
            status: if full == bounded {
                RowStatus::Pass
            } else {
                RowStatus::Fail
            },
        });
    }
    rows.push(unrepaired_bound_row().map_err(err)?);
    Ok(SuiteReport::new("witness", rows))
}

fn unrepaired_bound_row() -> Result<Row, EngineError> {
    let group: GroupSpec = "Z2xZ2".parse()?;
    let p4 = Graph::path(4)?;
    let codes: Vec<usize> = [[1, 0], [0, 1], [1, 0], [0, 1]]
        .iter()
        .map(|r| group.encode(&group.element(r.to_vec()).expect("valid residues")))
        .collect();
    let l = Labeling::from_codes(p4.clone(), group.clone(), &codes)?;
    let mut witnesses = Vec::new();
    let _ = for_each_connected_set(&p4, 4, None, |s| {
        if l.sum(s) == group.zero() {
            witnesses.push(s.len());
        }
        ControlFlow::Continue(())
    });
    let formula = witness_bound_formula(&group).unwrap_or(0);
    let bounded = check_labeling(&l, CheckMode::Bounded);
    let ok = witnesses == vec![4] && formula == 3 && matches!(bounded, CheckOutcome::Witness(_));
    Ok(Row {
        instance: "P4 over Z2xZ2 labeled (1,0),(0,1),(1,0),(0,1)".into(),
        expected: "unique witness of size 4 > unrepaired bound 3".into(),
        observed: format!(
            "witness sizes {witnesses:?}, unrepaired bound {formula}, repaired bound {}",
            witness_bound(&group)
        ),
        status: if ok { RowStatus::Pass } else { RowStatus::Fail },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn small_suites_pass() {
        let cfg = SearchConfig::default();
        assert!(path_suite(&grp("Z5"), 7, &cfg).unwrap().all_passed());
        assert!(prime_suite(&grp("Z3"), &cfg).unwrap().all_passed());
        assert!(cycle_suite(&grp("Z4"), 4, &cfg).unwrap().all_passed());
        assert!(tree_suite(&grp("Z2xZ2"), &cfg).unwrap().all_passed());
        assert!(prime_suite(&grp("Z4"), &cfg).is_err());
    }

    #[test]
    fn seeded_suites_are_deterministic() {
        let a = qset_suite(&[5], 10, 10, 7).unwrap();
        assert_eq!(a, qset_suite(&[5], 10, 10, 7).unwrap());
        assert!(a.all_passed());
        let w = witness_suite(20, 6, 6, 3).unwrap();
        assert_eq!(w, witness_suite(20, 6, 6, 3).unwrap());
        assert!(w.all_passed());
    }

    #[test]
    fn monotone_default_scan_size() {
        let r = monotone_suite(4, 5, true, &SearchConfig::default()).unwrap();
        assert_eq!(r.rows.len(), 1 + 2 + 6 + 21);
        assert_eq!(r.count(RowStatus::Fail), 0);
    }
}
