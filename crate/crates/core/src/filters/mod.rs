//! Graph filters: personalized PageRank, heat kernel and generic polynomial
//! filters over a normalized adjacency `A'`.

mod convergence;
mod generic;
mod heat_kernel;
mod pagerank;

use std::sync::Arc;

pub use convergence::{ConvergenceManager, ConvergenceRun, ErrorNorm, IterationReport};
pub use generic::GenericGraphFilter;
pub use heat_kernel::HeatKernel;
pub use pagerank::PageRank;

use crate::algorithm::{ensure_bound, normalized_personalization};
use crate::backend::DenseBlock;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::normalize::{NormalizedAdjacency, Preprocessor};
use crate::signal::GraphSignal;

/// Per-filter propagation over an already normalized operator.
pub(crate) trait Propagation {
    fn preprocessor(&self) -> &Arc<Preprocessor>;

    fn propagate_block(
        &self,
        adjacency: &NormalizedAdjacency,
        columns: &DenseBlock,
    ) -> Result<(DenseBlock, IterationReport)>;
}

pub(crate) fn propagate_with<F: Propagation + ?Sized>(
    filter: &F,
    graph: &Graph,
    columns: &DenseBlock,
) -> Result<(DenseBlock, IterationReport)> {
    if columns.rows() != graph.node_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.node_count(),
            found: columns.rows(),
        });
    }
    if columns.cols() == 0 {
        return Err(Error::InvalidParameter("at least one column is required".into()));
    }
    let adjacency = filter.preprocessor().get(graph);
    let (out, report) = filter.propagate_block(&adjacency, columns)?;
    if !out.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok((out, report))
}

pub(crate) fn rank_with<F: Propagation + ?Sized>(
    filter: &F,
    graph: &Arc<Graph>,
    personalization: &GraphSignal,
) -> Result<(GraphSignal, IterationReport)> {
    ensure_bound(graph, personalization)?;
    let p = normalized_personalization(graph, personalization)?;
    let (out, report) = propagate_with(filter, graph, &DenseBlock::from_column(p))?;
    Ok((GraphSignal::new(graph.clone(), out.into_data())?, report))
}

macro_rules! impl_filter_contract {
    ($ty:ty) => {
        impl $crate::algorithm::RankingAlgorithm for $ty {
            fn rank(
                &self,
                graph: &std::sync::Arc<$crate::graph::Graph>,
                personalization: &$crate::signal::GraphSignal,
            ) -> $crate::error::Result<$crate::signal::GraphSignal> {
                $crate::filters::rank_with(self, graph, personalization).map(|(s, _)| s)
            }
        }

        impl $crate::algorithm::GraphFilter for $ty {
            fn propagate(
                &self,
                graph: &$crate::graph::Graph,
                columns: &$crate::backend::DenseBlock,
            ) -> $crate::error::Result<$crate::backend::DenseBlock> {
                $crate::filters::propagate_with(self, graph, columns).map(|(b, _)| b)
            }
        }

        impl $ty {
            /// Like `rank`, also reporting iteration count and final error.
            pub fn rank_with_report(
                &self,
                graph: &std::sync::Arc<$crate::graph::Graph>,
                personalization: &$crate::signal::GraphSignal,
            ) -> $crate::error::Result<($crate::signal::GraphSignal, IterationReport)> {
                $crate::filters::rank_with(self, graph, personalization)
            }
        }
    };
}
pub(crate) use impl_filter_contract;

fn default_preprocessor() -> Arc<Preprocessor> {
    Arc::new(Preprocessor::default())
}
