//! Workbench for sparse 4-critical graphs.

pub mod bounds;
pub mod canon;
pub mod coloring;
pub mod constructions;
pub mod flow;
pub mod format;
pub mod graph;
pub mod grotzsch;
pub mod planar;
pub mod potential;
pub mod random;
pub mod search;
pub mod structure;

pub use canon::{canonical_label, CanonicalLabel};
pub use format::{parse_any, parse_dimacs, parse_graph6, write_dimacs, write_graph6, FormatError};
pub use graph::{Graph, GraphError, Vertex, VertexSet, MAX_VERTICES};
