//! Induced-minimal and minor-minimal zero-forcing graphs up to an order cap.
//!
//! Only connected graphs are scanned: a disconnected graph is forcing iff
//! one of its components is, so a minimal forcing graph has one component.
//! Graphs are processed by increasing order. Since being forcing is closed
//! under taking induced supergraphs, a connected graph is minimal iff it is
//! forcing and no one-vertex deletion is; a deletion is looked up through the
//! canonical forms of its components, all of which were scanned earlier. A
//! graph with a forcing deletion is forcing without running the decider.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::GroupSpec;
use crate::engine::{decide_zero_forcing, EngineError, SearchConfig};
use crate::graphkit::{
    canonical_form, contains_minor, enumerate_graphs, graph6, Graph, GraphError,
};

pub const MAX_OBSTRUCTION_ORDER: usize = 7;
pub const MAX_OBSTRUCTION_GROUP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("order cap {0} exceeds {MAX_OBSTRUCTION_ORDER}")]
    OrderCap(usize),
    #[error("group order {0} exceeds {MAX_OBSTRUCTION_GROUP}")]
    GroupCap(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Forcing,
    NotForcing,
    Unknown,
}

/// Per-graph scan result: graph6, status, minimal, undecided, decider ran.
type Scanned = (String, Status, bool, bool, bool);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub group: String,
    pub order_cap: usize,
    /// Canonical graph6 strings, by order then string.
    pub induced_minimal: Vec<String>,
    pub minor_minimal: Vec<String>,
    pub complete: bool,
    pub note: String,
    /// Graphs whose status could not be settled within the search budget.
    pub unknown: Vec<String>,
    /// Number of graphs handed to the decider.
    pub decided: usize,
}

impl ObstructionReport {
    pub fn induced_minimal_graphs(&self) -> Vec<Graph> {
        decode_all(&self.induced_minimal)
    }

    pub fn minor_minimal_graphs(&self) -> Vec<Graph> {
        decode_all(&self.minor_minimal)
    }
}

fn decode_all(codes: &[String]) -> Vec<Graph> {
    codes
        .iter()
        .map(|s| graph6::decode(s).expect("report holds valid graph6"))
        .collect()
}

fn key(g: &Graph) -> Result<String, GraphError> {
    Ok(canonical_form(g)?.to_graph6())
}

/// Status of a possibly disconnected graph from its components' statuses.
fn combined(g: &Graph, known: &BTreeMap<String, Status>) -> Result<Status, GraphError> {
    let mut status = Status::NotForcing;
    for comp in g.components() {
        let (h, _) = g.induced(comp);
        match known.get(&key(&h)?).copied().unwrap_or(Status::Unknown) {
            Status::Forcing => return Ok(Status::Forcing),
            Status::Unknown => status = Status::Unknown,
            Status::NotForcing => {}
        }
    }
    Ok(status)
}

/// Scans connected graphs on up to `order_cap` vertices.
pub fn minimal_induced_obstructions(
    group: &GroupSpec,
    order_cap: usize,
    cfg: &SearchConfig,
) -> Result<ObstructionReport, ObstructionError> {
    if order_cap > MAX_OBSTRUCTION_ORDER {
        return Err(ObstructionError::OrderCap(order_cap));
    }
    if group.order() > MAX_OBSTRUCTION_GROUP {
        return Err(ObstructionError::GroupCap(group.order()));
    }
    let mut known: BTreeMap<String, Status> = BTreeMap::new();
    let mut minimal = Vec::new();
    let mut unknown = Vec::new();
    let mut decided = 0;
    for n in 1..=order_cap {
        let graphs = enumerate_graphs(n, true)?;
        let results: Vec<Result<Scanned, ObstructionError>> = graphs
            .par_iter()
            .map(|g| {
                let mut deletions = Status::NotForcing;
                for v in 0..n {
                    match combined(&g.remove_vertex(v), &known)? {
                        Status::Forcing => {
                            deletions = Status::Forcing;
                            break;
                        }
                        Status::Unknown => deletions = Status::Unknown,
                        Status::NotForcing => {}
                    }
                }
                let (status, ran) = if deletions == Status::Forcing {
                    (Status::Forcing, false)
                } else {
                    match decide_zero_forcing(g, group, cfg) {
                        Ok(v) if v.is_forcing() => (Status::Forcing, true),
                        Ok(_) => (Status::NotForcing, true),
                        Err(EngineError::BudgetExhausted { .. }) => (Status::Unknown, true),
                        Err(e) => return Err(e.into()),
                    }
                };
                let is_min = status == Status::Forcing && deletions == Status::NotForcing;
                let undecided = status == Status::Unknown
                    || (status == Status::Forcing && deletions == Status::Unknown);
                Ok((g.to_graph6(), status, is_min, undecided, ran))
            })
            .collect();
        for r in results {
            let (code, status, is_min, undecided, ran) = r?;
            if is_min {
                minimal.push(code.clone());
            }
            if undecided {
                unknown.push(code.clone());
            }
            decided += ran as usize;
            known.insert(code, status);
        }
    }
    let (complete, note) = completeness(group, order_cap);
    let mut report = ObstructionReport {
        group: group.to_string(),
        order_cap,
        induced_minimal: minimal,
        minor_minimal: Vec::new(),
        complete: complete && unknown.is_empty(),
        note,
        unknown,
        decided,
    };
    report.minor_minimal = minor_minimal_set(&report)?
        .iter()
        .map(Graph::to_graph6)
        .collect();
    Ok(report)
}

fn completeness(group: &GroupSpec, cap: usize) -> (bool, String) {
    if group.is_trivial() {
        (
            cap >= 1,
            "every nonempty graph is forcing for the trivial group; K1 is the only minimal one"
                .into(),
        )
    } else if group.is_prime_cyclic() && cap >= group.order() {
        (
            true,
            format!(
                "for Z_p a graph is forcing iff it has at least p vertices, so the minimal ones are the connected graphs on {} vertices",
                group.order()
            ),
        )
    } else {
        (
            false,
            format!("scan limited to connected graphs on at most {cap} vertices"),
        )
    }
}

/// Members of `report.induced_minimal` that have no other member as a minor.
pub fn minor_minimal_set(report: &ObstructionReport) -> Result<Vec<Graph>, GraphError> {
    let members = report.induced_minimal_graphs();
    let mut out = Vec::new();
    for (i, g) in members.iter().enumerate() {
        let mut minimal = true;
        for (j, h) in members.iter().enumerate() {
            if i != j && h.n() <= g.n() && contains_minor(g, h)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(g.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(group: &str, cap: usize) -> ObstructionReport {
        minimal_induced_obstructions(&group.parse().unwrap(), cap, &SearchConfig::default())
            .unwrap()
    }

    #[test]
    fn z2_and_z3() {
        let r = report("Z2", 3);
        assert_eq!(r.induced_minimal, vec!["A_".to_string()]);
        assert_eq!(r.minor_minimal, r.induced_minimal);
        assert!(r.complete);

        let r = report("Z3", 4);
        let p3 = key(&Graph::path(3).unwrap()).unwrap();
        let k3 = key(&Graph::complete(3).unwrap()).unwrap();
        let mut expected = vec![p3.clone(), k3];
        expected.sort();
        let mut got = r.induced_minimal.clone();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(r.minor_minimal, vec![p3]);
        assert!(r.complete);
    }

    #[test]
    fn trivial_group() {
        let r = report("Z1", 3);
        assert_eq!(r.induced_minimal, vec!["@".to_string()]);
        assert!(r.complete);
    }

    #[test]
    fn caps() {
        let cfg = SearchConfig::default();
        assert!(minimal_induced_obstructions(&"Z4".parse().unwrap(), 8, &cfg).is_err());
        assert!(minimal_induced_obstructions(&"Z9".parse().unwrap(), 3, &cfg).is_err());
        assert!(!report("Z4", 4).complete);
    }

    #[test]
    fn json_round_trip() {
        let r = report("Z3", 3);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ObstructionReport>(&text).unwrap(), r);
    }
}
