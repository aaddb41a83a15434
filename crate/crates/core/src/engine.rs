//! Zero-avoiding checks for single labelings, Q-sets on trees, and the
//! exhaustive zero-forcing decider.
//!
//! The decider labels vertices in breadth-first order, so the labeled prefix
//! of each component stays connected. Before choosing a label for vertex `v`
//! it collects the sums `S` of all nonempty `B` in the prefix with `B + v`
//! connected and `|B| < witness_bound`; a label `x` is allowed only when
//! `x != 0` and `-x` is not in `S`. Every connected zero-sum set of size at
//! most the bound is therefore rejected when its last vertex is labeled, and
//! by the small-witness bound no larger zero-sum set can exist alone.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{iter_bits, Element, GroupError, GroupSpec};
use crate::graphkit::{for_each_connected_set, Graph, GraphError, VertexSet};

/// Default cap on the number of labels tried by [`decide_zero_forcing`].
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("search budget of {budget} labels exhausted; verdict unknown")]
    BudgetExhausted { budget: u64, explored: u64 },
    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A total map from the vertices of a graph to group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    graph: Graph,
    group: GroupSpec,
    values: Vec<Element>,
}

impl Labeling {
    pub fn new(graph: Graph, group: GroupSpec, values: Vec<Element>) -> Result<Self, EngineError> {
        if values.len() != graph.n() {
            return Err(EngineError::InvalidLabeling(format!(
                "{} labels for a graph on {} vertices",
                values.len(),
                graph.n()
            )));
        }
        for x in &values {
            group.validate(x)?;
        }
        Ok(Labeling {
            graph,
            group,
            values,
        })
    }

    pub fn from_codes(
        graph: Graph,
        group: GroupSpec,
        codes: &[usize],
    ) -> Result<Self, EngineError> {
        let values = codes.iter().map(|&c| group.decode(c)).collect();
        Labeling::new(graph, group, values)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn codes(&self) -> Vec<usize> {
        self.values.iter().map(|x| self.group.encode(x)).collect()
    }

    /// Label sum of a vertex set.
    pub fn sum(&self, set: VertexSet) -> Element {
        let codes = self.codes();
        self.group.decode(sum_codes(&self.group, &codes, set))
    }
}

fn sum_codes(group: &GroupSpec, codes: &[usize], set: VertexSet) -> usize {
    set.iter().fold(0, |acc, v| group.add_code(acc, codes[v]))
}

/// A nonempty connected vertex set with label sum zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Scan every connected set.
    Full,
    /// Scan connected sets up to [`witness_bound`] vertices.
    Bounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Avoiding,
    Witness(Witness),
}

impl CheckOutcome {
    pub fn is_avoiding(&self) -> bool {
        matches!(self, CheckOutcome::Avoiding)
    }
}

/// Size of a witness that always exists when some witness does.
///
/// 1 for the trivial group, `p` for `Z_p`, and otherwise
/// `max(|G|, ceil((|G| - 2)(D - 1) / 2) + 1)`. The `|G|` term covers zero-sum
/// sets found along a path on `|G|` vertices, which the formula alone misses
/// (e.g. `Z2xZ2` on `P4`).
pub fn witness_bound(group: &GroupSpec) -> usize {
    match witness_bound_formula(group) {
        None if group.is_trivial() => 1,
        None => group.order(),
        Some(f) => f.max(group.order()),
    }
}

/// The unrepaired `(|G| - 2)(D - 1) / 2 + 1` term, for groups of order at
/// least 4 that are not cyclic of prime order.
pub fn witness_bound_formula(group: &GroupSpec) -> Option<usize> {
    let n = group.order();
    if n < 4 || group.is_prime_cyclic() {
        return None;
    }
    let d = group
        .davenport()
        .expect("orders up to MAX_ORDER are within the Davenport cap");
    Some(((n - 2) * (d - 1)).div_ceil(2) + 1)
}

/// First witness in connected-set enumeration order, or `Avoiding`.
pub fn check_labeling(l: &Labeling, mode: CheckMode) -> CheckOutcome {
    let g = l.graph();
    let limit = match mode {
        CheckMode::Full => g.n(),
        CheckMode::Bounded => witness_bound(l.group()).min(g.n()),
    };
    let codes = l.codes();
    let mut found = None;
    let _ = for_each_connected_set(g, limit, None, |set| {
        if sum_codes(l.group(), &codes, set) == 0 {
            found = Some(Witness { vertices: set });
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    found.map_or(CheckOutcome::Avoiding, CheckOutcome::Witness)
}

/// Values `l(A)` over connected sets `A` containing `vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSet {
    pub vertex: usize,
    pub values: BTreeSet<Element>,
}

/// Q-set of a vertex of a labeled tree, by the recursion
/// `Q(t) = {l(t)} + sum over children c of (Q(c) + {0})`.
pub fn q_set(t: &Graph, l: &Labeling, vertex: usize) -> Result<QSet, EngineError> {
    if !t.is_tree() {
        return Err(GraphError::NotATree.into());
    }
    if l.graph() != t {
        return Err(EngineError::InvalidLabeling(
            "labeling belongs to another graph".into(),
        ));
    }
    if vertex >= t.n() {
        return Err(GraphError::VertexOutOfRange { vertex, n: t.n() }.into());
    }
    let group = l.group();
    let codes = l.codes();
    fn rec(t: &Graph, group: &GroupSpec, codes: &[usize], v: usize, parent: Option<usize>) -> u64 {
        let mut acc = 1u64 << codes[v];
        for w in t.neighbors(v).iter() {
            if Some(w) != parent {
                let child = rec(t, group, codes, w, Some(v)) | 1;
                acc = group.sumset_mask(acc, child);
            }
        }
        acc
    }
    let mask = rec(t, group, &codes, vertex, None);
    Ok(QSet {
        vertex,
        values: iter_bits(mask).map(|c| group.decode(c)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of labels tried before giving up.
    pub budget: u64,
    /// Worker threads for the fan-out over the first vertex's labels.
    pub jobs: usize,
    /// Restrict each component's first label to automorphism-orbit representatives.
    pub symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            jobs: 1,
            symmetry: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Labels assigned during the search.
    pub explored: u64,
    /// Labels excluded by the incremental zero-sum check.
    pub pruned: u64,
    pub components: usize,
    pub witness_bound: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Forcing,
    /// Carries a zero-avoiding labeling.
    NotForcing(Labeling),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn is_forcing(&self) -> bool {
        matches!(self.outcome, Outcome::Forcing)
    }

    pub fn certificate(&self) -> Option<&Labeling> {
        match &self.outcome {
            Outcome::Forcing => None,
            Outcome::NotForcing(l) => Some(l),
        }
    }
}

struct Shared {
    explored: AtomicU64,
    pruned: AtomicU64,
    found: AtomicBool,
    exhausted: AtomicBool,
    budget: u64,
}

struct Component<'a> {
    g: &'a Graph,
    group: &'a GroupSpec,
    order: Vec<usize>,
    bound: usize,
    shared: &'a Shared,
}

enum Step {
    Found,
    Exhausted,
    Abort,
}

impl Component<'_> {
    /// Codes `s` such that some nonempty `B` in `labeled` with `B + v`
    /// connected and `|B| < bound` has sum `s`.
    fn reachable_sums(&self, v: usize, labeled: u64, labels: &[usize; 64]) -> u64 {
        let allowed = labeled | 1u64 << v;
        let full = self.group.full_mask();
        let mut sums = 0u64;
        let mut stack: Vec<(u64, u64, u64, usize)> =
            vec![(1u64 << v, self.g.adj_mask(v) & allowed, 0, 0)];
        // explicit stack of (set, extension, excluded, sum without v)
        while let Some((set, ext, excluded, sum)) = stack.pop() {
            if set != 1u64 << v {
                sums |= 1u64 << sum;
                if sums | 1 == full {
                    break;
                }
            }
            if set.count_ones() as usize >= self.bound {
                continue;
            }
            let mut excl = excluded;
            let mut rest = ext;
            let mut children = Vec::new();
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next_set = set | 1u64 << w;
                let next_ext = (rest | self.g.adj_mask(w)) & allowed & !next_set & !excl;
                children.push((
                    next_set,
                    next_ext,
                    excl,
                    self.group.add_code(sum, labels[w]),
                ));
                excl |= 1u64 << w;
            }
            stack.extend(children.into_iter().rev());
        }
        sums
    }

    fn domain(&self, pos: usize, labeled: u64, labels: &[usize; 64]) -> Vec<usize> {
        let v = self.order[pos];
        let forbidden = if pos == 0 {
            0
        } else {
            self.reachable_sums(v, labeled, labels)
        };
        let dom: Vec<usize> = (1..self.group.order())
            .filter(|&x| forbidden >> self.group.neg_code(x) & 1 == 0)
            .collect();
        let excluded = (self.group.order() - 1 - dom.len()) as u64;
        if excluded > 0 {
            self.shared.pruned.fetch_add(excluded, Ordering::Relaxed);
        }
        dom
    }

    fn dfs(&self, pos: usize, labeled: u64, labels: &mut [usize; 64]) -> Option<Step> {
        if pos == self.order.len() {
            return Some(Step::Found);
        }
        if self.shared.found.load(Ordering::Relaxed)
            || self.shared.exhausted.load(Ordering::Relaxed)
        {
            return Some(Step::Abort);
        }
        let v = self.order[pos];
        for x in self.domain(pos, labeled, labels) {
            if let Some(step) = self.assign(pos, v, x, labeled, labels) {
                return Some(step);
            }
        }
        None
    }

    fn assign(
        &self,
        pos: usize,
        v: usize,
        x: usize,
        labeled: u64,
        labels: &mut [usize; 64],
    ) -> Option<Step> {
        let n = self.shared.explored.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.shared.budget {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            return Some(Step::Exhausted);
        }
        labels[v] = x;
        self.dfs(pos + 1, labeled | 1u64 << v, labels)
    }

    /// Zero-avoiding labels (codes, indexed by vertex) for this component, or
    /// `Ok(None)` if none exist.
    fn solve(&self, jobs: usize, orbit_reps: Option<&[usize]>) -> Result<Option<[usize; 64]>, ()> {
        let first = self.order[0];
        let mut dom = self.domain(0, 0, &[0; 64]);
        if let Some(reps) = orbit_reps {
            dom.retain(|&x| reps[x] == x);
        }
        let run = |x: usize| -> Option<[usize; 64]> {
            let mut labels = [0usize; 64];
            match self.assign(0, first, x, 0, &mut labels) {
                Some(Step::Found) => {
                    self.shared.found.store(true, Ordering::Relaxed);
                    Some(labels)
                }
                _ => None,
            }
        };
        let result = if jobs <= 1 {
            dom.iter().find_map(|&x| run(x))
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .expect("thread pool");
            pool.install(|| dom.par_iter().find_map_any(|&x| run(x)))
        };
        match result {
            Some(labels) => Ok(Some(labels)),
            None if self.shared.exhausted.load(Ordering::Relaxed) => Err(()),
            None => Ok(None),
        }
    }
}

/// Decides whether `g` is zero-forcing for `group`.
///
/// Components are searched independently: the graph is forcing iff some
/// component is, and otherwise the per-component certificates combine into
/// one. Running out of budget is reported as [`EngineError::BudgetExhausted`],
/// never as a verdict.
pub fn decide_zero_forcing(
    g: &Graph,
    group: &GroupSpec,
    cfg: &SearchConfig,
) -> Result<Verdict, EngineError> {
    let start = Instant::now();
    let bound = witness_bound(group);
    let shared = Shared {
        explored: AtomicU64::new(0),
        pruned: AtomicU64::new(0),
        found: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        budget: cfg.budget,
    };
    let orbit_reps = cfg.symmetry.then(|| group.automorphism_orbit_reps(10_000));
    let components = g.components();
    let bfs = g.bfs_order();
    let mut codes = vec![0usize; g.n()];
    let mut forcing = false;
    for comp in &components {
        let order: Vec<usize> = bfs.iter().copied().filter(|&v| comp.contains(v)).collect();
        let c = Component {
            g,
            group,
            order,
            bound,
            shared: &shared,
        };
        shared.found.store(false, Ordering::Relaxed);
        match c.solve(cfg.jobs.max(1), orbit_reps.as_deref()) {
            Ok(Some(labels)) => {
                for v in comp.iter() {
                    codes[v] = labels[v];
                }
            }
            Ok(None) => {
                forcing = true;
                break;
            }
            Err(()) => {
                return Err(EngineError::BudgetExhausted {
                    budget: cfg.budget,
                    explored: shared.explored.load(Ordering::Relaxed),
                })
            }
        }
    }
    let stats = SearchStats {
        explored: shared.explored.load(Ordering::Relaxed).min(cfg.budget),
        pruned: shared.pruned.load(Ordering::Relaxed),
        components: components.len(),
        witness_bound: bound,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let outcome = if forcing {
        Outcome::Forcing
    } else {
        let cert = Labeling::from_codes(g.clone(), group.clone(), &codes)?;
        if !check_labeling(&cert, CheckMode::Bounded).is_avoiding() {
            return Err(EngineError::InvalidLabeling(
                "search produced a labeling with a zero-sum set".into(),
            ));
        }
        Outcome::NotForcing(cert)
    };
    Ok(Verdict { outcome, stats })
}
