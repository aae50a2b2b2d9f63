//! Cut problems on enriched graphs (multigraphs and partially reflexive
//! graphs): exact solvers, hardness reductions, kernelization engines,
//! polynomial algorithms for restricted classes and a complexity classifier.

pub mod error;
pub mod graph;

pub use error::{Error, Result};
pub use graph::{EnrichedGraph, SimplePattern, Vertex};
pub mod pattern;
pub mod cut;
pub mod nae;
pub mod gadgets;
pub mod kernel;
pub mod poly;
pub mod classify;
pub mod corpus;
pub mod fuzz;
