//! Exact, desk-scale implementations of pathwidth machinery: path
//! decompositions and their transforms, an exact pathwidth solver with an
//! independent interval-supergraph oracle, ternary-tree obstruction families,
//! an OR-cross-composition into bounded-pathwidth instances, kernel-derived
//! quasi-orders with obstruction sets, and nondeterministic kernels simulated
//! by exhaustive enumerators.
//!
//! Every algorithm is exact and capped at sizes where brute force is feasible;
//! the point is verifying combinatorial claims, not performance at scale.

pub mod composition;
pub mod decomp;
pub mod encoding;
pub mod genorder;
pub mod graph;
pub mod obstructions;
pub mod pwsolver;
pub mod quasiorder;

pub use graph::{Graph, GraphError};
pub use decomp::{PathDecomposition, DecompError};
pub use pwsolver::{PwResult, SolverError};
