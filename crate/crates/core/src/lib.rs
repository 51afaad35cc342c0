//! Regular path queries over edge-labelled multigraphs.
//!
//! A query (a regular expression or an automaton) is matched against the
//! walks of a [`Database`]. Besides plain walk semantics, the engine supports
//! the filtered semantics that keep only trails, simple walks, projections of
//! simple or trail runs of the run database, or binding trails of the
//! expression. For each of them it answers tuple membership, evaluation,
//! multiplicity counting and walk membership.
//!
//! The [`sat`] and [`topo`] modules generate the hardness instances used to
//! cross-check the counting and encoding machinery.

pub mod automaton;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod product;
pub mod regex;
pub mod sat;
pub mod semantics;
pub mod topo;

pub use automaton::Automaton;
pub use error::{Error, Result};
pub use graph::{Database, Edge, EdgeId, VertexId, Walk, WalkBag};
pub use product::RunDatabase;
pub use regex::Regex;
pub use semantics::{Guards, Query, SemanticsMode};

