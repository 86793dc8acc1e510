//! Twin-width and Weisfeiler-Leman toolkit: contraction sequences, exact and
//! heuristic twin-width, canonization of twin-width-1 graphs, modular
//! decomposition, k-WL refinement, pebble games, instance generators and
//! structural checks on half-graphs and rank-connectivity.

pub mod error;
pub mod experiment;
pub mod format;
pub mod generators;
pub mod graph;
pub mod iso;
pub mod matching;
pub mod modular;
pub mod search;
pub mod structure;
pub mod trigraph;
pub mod tww1;
pub mod wl;

pub use error::{
    CanonError, ContractionError, ExperimentError, GeneratorError, GraphError, ModuleError,
    StructureError, WlError,
};
pub use graph::{atomic_type, AtomicType, BipartiteView, Color, ColoredGraph, Vertex};
pub use trigraph::{ContractionSequence, Trigraph, WidthReport};
