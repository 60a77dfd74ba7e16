use std::sync::Arc;

use super::{Measure, Polarity};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::signal::GraphSignal;

/// `cut(S, V∖S) / min(vol(S), vol(V∖S))`, with every stored edge counted
/// once in the cut and once per endpoint in the volumes.
pub fn conductance(graph: &Graph, members: &[usize]) -> Result<f64> {
    let n = graph.node_count();
    let mut inside = vec![false; n];
    for &u in members {
        if u >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u + 1,
            });
        }
        inside[u] = true;
    }
    let size = inside.iter().filter(|&&x| x).count();
    if size == 0 || size == n {
        return Err(Error::InvalidParameter(
            "conductance needs a nonempty proper node subset".into(),
        ));
    }
    let mut cut = 0usize;
    let mut vol_in = 0usize;
    let mut vol_out = 0usize;
    for &(u, v) in graph.edges() {
        if inside[u] != inside[v] {
            cut += 1;
        }
        for w in [u, v] {
            if inside[w] {
                vol_in += 1;
            } else {
                vol_out += 1;
            }
        }
    }
    let denominator = vol_in.min(vol_out);
    if denominator == 0 {
        return Err(Error::InsufficientData(
            "one side of the cut has zero volume".into(),
        ));
    }
    Ok(cut as f64 / denominator as f64)
}

/// Unsupervised measure: conductance of the node set whose score is at least
/// half the maximum score.
#[derive(Debug, Clone)]
pub struct Conductance {
    graph: Arc<Graph>,
}

impl Conductance {
    pub fn new(graph: Arc<Graph>) -> Self {
        Conductance { graph }
    }

    pub fn members(scores: &GraphSignal) -> Vec<usize> {
        let threshold = 0.5 * scores.max();
        scores
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 0.0 && s >= threshold)
            .map(|(u, _)| u)
            .collect()
    }
}

impl Measure for Conductance {
    fn evaluate(&self, scores: &GraphSignal) -> Result<f64> {
        if !scores.is_bound_to(&self.graph) {
            return Err(Error::GraphMismatch);
        }
        conductance(&self.graph, &Conductance::members(scores))
    }

    fn polarity(&self) -> Polarity {
        Polarity::LowerIsBetter
    }
}
