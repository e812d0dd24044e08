//! Minimum spanning trees under imposed (mandatory) edges.
//!
//! - [`graph`]: weighted multigraph and its edge-list text format.
//! - [`mst`]: Kruskal MST, optionally with an imposed edge set contracted first.
//! - [`tree_analysis`]: tree paths, replacement edges/costs, optimality checks.
//! - [`imposition`]: imposing edges one at a time by swapping out replacement edges.
//! - [`bound`]: `cost(T) + Σ r-cost(T, e)` as a lower bound for trees containing the imposed set.
//! - [`oracle`]: brute-force spanning tree enumeration for small graphs.
//! - [`verify`]: solver-vs-oracle property checks.

pub mod bound;
pub mod cli;
pub mod error;
pub mod graph;
pub mod imposition;
pub mod mst;
pub mod oracle;
pub mod random;
pub mod tree_analysis;
pub mod union_find;
pub mod verify;

#[cfg(test)]
mod testutil;

pub use bound::{lower_bound, BoundReport, Contribution};
pub use error::{Error, Result};
pub use graph::{parse_graph, Edge, EdgeId, Graph, NodeId};
pub use imposition::{impose_all, ImpositionState, Step};
pub use mst::{constrained_mst, minimum_spanning_tree, ImposedSet, SpanningTree};
pub use oracle::{
    brute_min_tree, enumerate_spanning_trees, EnumerationBudget, MinTree, TreeCatalog,
};
pub use tree_analysis::{
    check_cut_optimality, check_path_optimality, replacement, replacement_table, ExtCost,
    Replacement,
};
