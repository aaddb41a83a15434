//! JSON report schemas shared by the CLI and the tests.
//!
//! Labelings are written as maps from vertex index to residue vectors, so a
//! `decide` certificate can be fed back to `check` unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{Element, GroupError, GroupSpec};
use crate::engine::{CheckOutcome, EngineError, Labeling, SearchStats, Verdict};
use crate::graphkit::{canonical_form, graph6, Graph, GraphError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("bad label list: {0}")]
    Labels(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type LabelMap = BTreeMap<usize, Vec<u32>>;

pub fn label_map(l: &Labeling) -> LabelMap {
    l.values()
        .iter()
        .enumerate()
        .map(|(v, x)| (v, x.0.clone()))
        .collect()
}

/// Rebuilds a labeling from a vertex map; every vertex must be present.
pub fn labeling_from_map(
    graph: &Graph,
    group: &GroupSpec,
    map: &LabelMap,
) -> Result<Labeling, ReportError> {
    let mut values = Vec::with_capacity(graph.n());
    for v in 0..graph.n() {
        let r = map
            .get(&v)
            .ok_or_else(|| ReportError::Labels(format!("vertex {v} has no label")))?;
        values.push(group.element(r.clone())?);
    }
    if map.len() != graph.n() {
        return Err(ReportError::Labels(
            "labels given for vertices outside the graph".into(),
        ));
    }
    Ok(Labeling::new(graph.clone(), group.clone(), values)?)
}

/// Parses `1,1,0` (cyclic) or `1:0,0:1` (residues joined by `:`), one entry
/// per vertex in order.
pub fn parse_labels(group: &GroupSpec, text: &str) -> Result<Vec<Element>, ReportError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let residues: Result<Vec<i64>, _> = item
                .trim()
                .split(':')
                .map(|r| r.trim().parse::<i64>())
                .collect();
            let residues = residues
                .map_err(|_| ReportError::Labels(format!("'{item}' is not a residue vector")))?;
            Ok(group.element_mod(&residues)?)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Forcing,
    NotForcing,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecideReport {
    pub group: String,
    /// Input graph; certificate indices refer to its vertices.
    pub graph6: String,
    pub canonical_graph6: Option<String>,
    pub verdict: VerdictKind,
    pub certificate: Option<LabelMap>,
    pub stats: Option<SearchStats>,
    pub error: Option<String>,
}

impl DecideReport {
    pub fn new(graph: &Graph, group: &GroupSpec, result: &Result<Verdict, EngineError>) -> Self {
        let canonical_graph6 = canonical_form(graph).ok().map(|c| c.to_graph6());
        let base = DecideReport {
            group: group.to_string(),
            graph6: graph.to_graph6(),
            canonical_graph6,
            verdict: VerdictKind::Unknown,
            certificate: None,
            stats: None,
            error: None,
        };
        match result {
            Ok(v) => DecideReport {
                verdict: if v.is_forcing() {
                    VerdictKind::Forcing
                } else {
                    VerdictKind::NotForcing
                },
                certificate: v.certificate().map(label_map),
                stats: Some(v.stats.clone()),
                ..base
            },
            Err(e) => DecideReport {
                error: Some(e.to_string()),
                ..base
            },
        }
    }

    pub fn graph(&self) -> Result<Graph, ReportError> {
        Ok(graph6::decode(&self.graph6)?)
    }

    pub fn certificate_labeling(&self) -> Result<Option<Labeling>, ReportError> {
        let group: GroupSpec = self.group.parse()?;
        match &self.certificate {
            None => Ok(None),
            Some(map) => Ok(Some(labeling_from_map(&self.graph()?, &group, map)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub group: String,
    pub graph6: String,
    pub avoiding: bool,
    pub witness: Option<Vec<usize>>,
}

impl CheckReport {
    pub fn new(l: &Labeling, outcome: &CheckOutcome) -> Self {
        CheckReport {
            group: l.group().to_string(),
            graph6: l.graph().to_graph6(),
            avoiding: outcome.is_avoiding(),
            witness: match outcome {
                CheckOutcome::Avoiding => None,
                CheckOutcome::Witness(w) => Some(w.vertices.to_vec()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub construction: String,
    pub group: String,
    pub graph6: String,
    pub edges: String,
    pub labels: LabelMap,
    pub verified: bool,
}

impl ConstructReport {
    pub fn new(construction: &str, l: &Labeling, verified: bool) -> Self {
        ConstructReport {
            construction: construction.to_string(),
            group: l.group().to_string(),
            graph6: l.graph().to_graph6(),
            edges: l.graph().to_edge_list(),
            labels: label_map(l),
            verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavenportReport {
    pub group: String,
    pub davenport: usize,
    /// A longest zero-sum-free sequence.
    pub zero_sum_free: Vec<Vec<u32>>,
}

impl DavenportReport {
    pub fn new(group: &GroupSpec) -> Result<Self, ReportError> {
        let d = group.davenport()?;
        let seq = group.zero_sum_free_sequence(d - 1)?.unwrap_or_default();
        Ok(DavenportReport {
            group: group.to_string(),
            davenport: d,
            zero_sum_free: seq.into_iter().map(|x| x.0).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{decide_zero_forcing, SearchConfig};

    #[test]
    fn labels_parse() {
        let v: GroupSpec = "Z2xZ2".parse().unwrap();
        let xs = parse_labels(&v, "1:0, 0:1").unwrap();
        assert_eq!(xs, vec![Element(vec![1, 0]), Element(vec![0, 1])]);
        let z4: GroupSpec = "Z4".parse().unwrap();
        assert_eq!(
            parse_labels(&z4, "1,5,-1").unwrap(),
            vec![Element(vec![1]), Element(vec![1]), Element(vec![3])]
        );
        assert!(parse_labels(&z4, "1:0").is_err());
        assert!(parse_labels(&z4, "a").is_err());
    }

    #[test]
    fn decide_report_round_trip() {
        let g = Graph::star(3).unwrap();
        let group: GroupSpec = "Z4".parse().unwrap();
        let r = DecideReport::new(
            &g,
            &group,
            &decide_zero_forcing(&g, &group, &SearchConfig::default()),
        );
        let text = serde_json::to_string(&r).unwrap();
        let back: DecideReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let cert = back.certificate_labeling().unwrap().unwrap();
        assert!(crate::engine::check_labeling(&cert, crate::engine::CheckMode::Full).is_avoiding());
        assert!(text.contains("\"verdict\":\"not_forcing\""));
    }

    #[test]
    fn incomplete_maps_rejected() {
        let g = Graph::path(2).unwrap();
        let group: GroupSpec = "Z3".parse().unwrap();
        let map: LabelMap = [(0, vec![1])].into_iter().collect();
        assert!(labeling_from_map(&g, &group, &map).is_err());
        let map: LabelMap = [(0, vec![1]), (1, vec![1]), (2, vec![1])]
            .into_iter()
            .collect();
        assert!(labeling_from_map(&g, &group, &map).is_err());
    }
}
