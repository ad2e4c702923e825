//! Workbench for spectral Turán-type extremal problems on small graphs:
//! constructions, spectral radius and rewiring moves, forbidden-subgraph
//! logic, symmetric subgraphs, exhaustive EX/SPEX search and seeded
//! property harnesses.

pub mod canon;
pub mod enumerate;
pub mod extremal;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod spectral;
pub mod subgraph;
pub mod symmetry;
pub mod theorems;

pub use enumerate::{enumerate_graphs, Catalog, SearchError};
pub use extremal::{ex_search, spex_search, SearchReport};
pub use graph::{Distance, Graph, GraphError, Kind, VertexSet, MAX_ORDER};
pub use subgraph::ForbiddenFamily;
