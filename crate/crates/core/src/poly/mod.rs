//! Polynomial-time and XP special cases at the edge of the hardness
//! results: Graph Motif at vertex integrity 3, binary-weight orientation at
//! vertex cover 2, and Steiner Forest by vertex cover.

pub mod motif;
pub mod orientation;
pub mod steiner;

pub use motif::{degree_constrained_subgraph, graph_motif_vi3};
pub use orientation::binary_mmoo_vc2;
pub use steiner::{steiner_forest_xp_vc, usf_kernelize, usf_solve, KernelStep, UsfKernel};
