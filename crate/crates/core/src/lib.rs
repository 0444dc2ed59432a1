//! Exact desk-scale search for Turán-type extremal graph problems.
//!
//! The crate builds the classical extremal graphs, evaluates graph
//! parameters, decides membership in graph classes defined by forbidden
//! (possibly structured) patterns, and runs isomorph-free exhaustive
//! searches to compute extremal values and related invariants on small
//! vertex counts.

pub mod canon;
pub mod coloring;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod graph;
pub mod parameters;
pub mod search;
pub mod structures;

pub use error::{Error, Result};
pub use graph::{Edge, Embedding, Graph, VertexSet};
