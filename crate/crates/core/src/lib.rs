//! Zero-forcing graphs for finite abelian groups.
//!
//! A graph is *zero-forcing* for a finite abelian group when every labeling
//! of its vertices by group elements has a nonempty connected vertex set whose
//! labels sum to zero. This crate decides that property by exhaustive search,
//! builds zero-avoiding labelings for paths, cycles, trees and spiders, and
//! computes minimal obstruction sets for small groups.

pub mod abelian;
pub mod construct;
pub mod engine;
pub mod graphkit;
pub mod obstructions;
pub mod report;
pub mod verify;

pub use abelian::{Element, GroupError, GroupSpec, QuotientMap, Subgroup};
pub use engine::{
    check_labeling, decide_zero_forcing, CheckMode, CheckOutcome, Labeling, SearchConfig, Verdict,
};
pub use graphkit::{Graph, GraphError, VertexSet};
