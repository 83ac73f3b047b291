//! Exact optimization on graphs of small bipartite treewidth.
//!
//! The crate validates rooted bipartite tree decompositions, runs a generic
//! dynamic program over annotated problems, and ships exact plugins for
//! weighted vertex cover, clique-subgraph cover, odd cycle transversal and
//! maximum weighted cut. It also provides constructive colouring, odd-minor
//! oracles, subgraph packing, and brute-force oracles for cross-checking.

pub mod boundaried;
pub mod canon;
pub mod decomposition;
pub mod dp;
pub mod error;
pub mod extint;
pub mod flow;
pub mod generators;
pub mod graph;
pub mod guard;
pub mod oracles;
pub mod packing;
pub mod partition;
pub mod problems;

pub use decomposition::RootedDecomposition;
pub use dp::{solve, ProblemPlugin};
pub use error::{Error, Result};
pub use extint::{Direction, ExtInt};
pub use graph::{Graph, Vertex, VertexSet, Weight};
pub use partition::AnnotatedPartition;
