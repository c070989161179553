//! Ordered graphs, ordered Ramsey numbers and the constructive embedding
//! machinery around them.

mod bits;
pub mod constructions;
pub mod embedder;
pub mod error;
pub mod format;
pub mod graph;
pub mod patterns;
pub mod ramsey;
pub mod stochastic;

pub use bits::VertexSet;
pub use error::{Error, Result};
pub use graph::{
    contains, contains_within, edges_between, interval_chromatic_number, interval_partition,
    Color, Coloring, Embedding, IntervalPartition, LoopedOrderedGraph, OrderedGraph,
    UnorderedGraph,
};
