use std::fmt::Debug;
use std::sync::Arc;

use crate::backend::DenseBlock;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::signal::GraphSignal;

/// Anything that scores the nodes of a graph from a personalization signal.
///
/// Filters, post-processor wrappers and tuners all implement this, so they
/// can be swapped freely in experiments. Implementations never modify the
/// input signal and always return a finite signal bound to `graph`.
pub trait RankingAlgorithm: Send + Sync + Debug {
    fn rank(&self, graph: &Arc<Graph>, personalization: &GraphSignal) -> Result<GraphSignal>;
}

pub type SharedAlgorithm = Arc<dyn RankingAlgorithm>;

/// A linear graph filter that can also push raw prediction columns through
/// the graph.
pub trait GraphFilter: RankingAlgorithm {
    /// Applies the filter to each column of `columns` independently. No
    /// sum-normalization is performed.
    fn propagate(&self, graph: &Graph, columns: &DenseBlock) -> Result<DenseBlock>;
}

pub(crate) fn ensure_bound(graph: &Graph, signal: &GraphSignal) -> Result<()> {
    if signal.is_bound_to(graph) {
        Ok(())
    } else {
        Err(Error::GraphMismatch)
    }
}

/// Validates a personalization and scales it to sum 1.
pub(crate) fn normalized_personalization(graph: &Graph, p: &GraphSignal) -> Result<Vec<f64>> {
    ensure_bound(graph, p)?;
    if let Some(v) = p.values().iter().find(|v| **v < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "personalization must be nonnegative, found {v}"
        )));
    }
    let total = p.sum();
    if total <= 0.0 {
        return Err(Error::ZeroPersonalization);
    }
    Ok(p.values().iter().map(|v| v / total).collect())
}
