//! Graph algorithms parameterized by vertex integrity.
//!
//! The crate is organized bottom-up: [`graph`] and [`integrity`] provide the
//! structural primitives, [`types`] canonicalizes components relative to a
//! separator, [`ilp`] is the exact integer-programming engine, and the
//! modules under [`solvers`] and [`poly`] combine them into the actual
//! algorithms. [`oracles`] holds brute-force reference implementations that
//! share no code with the solvers, and [`reductions`] builds the hardness
//! gadgets as instance generators.

pub mod error;
pub mod flow;
pub mod format;
pub mod generate;
pub mod graph;
pub mod ilp;
pub mod integrity;
pub mod oracles;
pub mod poly;
pub mod reductions;
pub mod solvers;
pub mod types;

pub use error::{Error, Result};
pub use graph::{anchored_isomorphic, Edge, Graph, GraphBuilder, VertexSubset};
pub use integrity::{vertex_cover_min, vertex_integrity, vi_k_set, ViSet};
