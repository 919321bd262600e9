//! Exact tooling for L(p,q)-edge-labelling: the constraint checker, a
//! backtracking solver, hardness gadgets, reductions from classical NP-hard
//! problems and a registry of brute-force lemma checks.

pub mod error;
pub mod format;
pub mod gadgets;
pub mod graph;
pub mod reductions;
pub mod regime;
pub mod solver;
pub mod verify;

#[cfg(test)]
mod proptests;

pub use error::{Error, Result};
pub use graph::{ConflictReport, EdgeLabelling, Graph, Params, Relation, Violation};
pub use regime::{dispatch, Regime, RegimeSpec, SourceKind};
pub use solver::{ProjectionTable, SearchBudget, Solver};
