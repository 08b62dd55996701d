//! Solvers for graph modification problems: exact algorithms with data
//! reduction and bounds, the heuristics they are measured against, and
//! brute-force reference solvers for small instances.

pub mod anonymity;
pub mod bench;
pub mod cluster_editing;
pub mod cut;
pub mod fast;
pub mod error;
pub mod graph;
pub mod hcd;
pub mod ilc;
pub mod instances;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod tuner;
pub mod vc;

pub use error::GraphError;
pub use graph::{connected_components, Edge, EdgeSet, EditSet, Graph, Partition, Vertex};
