//! Cops and robber games with speeds, phases and capture radius: exact
//! solvers, dismantling recognizers, structural decompositions,
//! hyperbolicity, explicit strategies and a crosscheck harness.

pub mod corpus;
pub mod decomposition;
pub mod dismantling;
pub mod format;
pub mod game;
pub mod graph;
pub mod hyperbolicity;
pub mod strategy;

pub use graph::{Graph, GraphError, Radius};
