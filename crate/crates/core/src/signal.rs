//! Dense per-node scores bound to a graph.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct GraphSignal {
    graph: Arc<Graph>,
    values: Vec<f64>,
}

impl GraphSignal {
    /// Binds `values` to `graph`; values must be finite and one per node.
    pub fn new(graph: Arc<Graph>, values: Vec<f64>) -> Result<Self> {
        if values.len() != graph.node_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.node_count(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(GraphSignal { graph, values })
    }

    pub fn ones(graph: Arc<Graph>) -> Self {
        let n = graph.node_count();
        GraphSignal {
            graph,
            values: vec![1.0; n],
        }
    }

    pub fn zeros(graph: Arc<Graph>) -> Self {
        let n = graph.node_count();
        GraphSignal {
            graph,
            values: vec![0.0; n],
        }
    }

    /// Signal with value 1 on each listed node index and 0 elsewhere.
    pub fn indicator(graph: Arc<Graph>, nodes: &[usize]) -> Result<Self> {
        let n = graph.node_count();
        let mut values = vec![0.0; n];
        for &u in nodes {
            if u >= n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u + 1,
                });
            }
            values[u] = 1.0;
        }
        Ok(GraphSignal { graph, values })
    }

    /// Listed nodes take their value, others 0. With no entries at all
    /// (`None`) the signal is all ones.
    pub fn from_map<'a, I>(graph: Arc<Graph>, entries: Option<I>) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let Some(entries) = entries else {
            return Ok(GraphSignal::ones(graph));
        };
        let mut values = vec![0.0; graph.node_count()];
        for (id, value) in entries {
            let u = graph.require_index(id)?;
            values[u] = value;
        }
        GraphSignal::new(graph, values)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<f64> {
        self.graph.index_of(id).map(|u| self.values[u])
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_bound_to(&self, graph: &Graph) -> bool {
        self.graph.token() == graph.token()
    }

    pub fn ensure_same_graph(&self, other: &GraphSignal) -> Result<()> {
        if self.graph.token() == other.graph.token() {
            Ok(())
        } else {
            Err(Error::GraphMismatch)
        }
    }

    /// Elementwise combination of two signals on the same graph.
    pub fn zip_with(&self, other: &GraphSignal, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.ensure_same_graph(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        GraphSignal::new(self.graph.clone(), values)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        GraphSignal::new(self.graph.clone(), self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pairs each node id with its score.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.graph
            .node_ids()
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
    }
}
