//! Node ranking with graph filters.
//!
//! Scores diffuse from a personalization signal over a normalized adjacency
//! operator. Filters ([`filters::PageRank`], [`filters::HeatKernel`],
//! [`filters::GenericGraphFilter`]), post-processors ([`postprocess`]) and
//! the [`tuner::ParameterTuner`] all implement [`RankingAlgorithm`], so they
//! can be composed and benchmarked interchangeably.
//!
//! ```
//! use std::sync::Arc;
//! use noderank::{filters::PageRank, Graph, GraphSignal, RankingAlgorithm};
//!
//! let graph = Arc::new(Graph::from_edge_list(["a b", "b c", "c a", "c d"], false)?);
//! let seeds = GraphSignal::from_map(graph.clone(), Some([("a", 1.0)]))?;
//! let scores = PageRank::new(0.85)?.rank(&graph, &seeds)?;
//! assert!(scores.get("a").unwrap() > scores.get("d").unwrap());
//! # Ok::<(), noderank::Error>(())
//! ```

pub mod alg_spec;
pub mod algorithm;
pub mod backend;
pub mod benchmarks;
pub mod cli;
mod error;
pub mod filters;
pub mod graph;
pub mod measures;
pub mod normalize;
pub mod postprocess;
pub mod signal;
pub mod sparse;
mod split;
pub mod tuner;

pub use algorithm::{GraphFilter, RankingAlgorithm, SharedAlgorithm};
pub use backend::DenseBlock;
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, GraphToken};
pub use normalize::{normalize_adjacency, NormalizationMode, NormalizedAdjacency, Preprocessor};
pub use signal::GraphSignal;
pub use split::split;
