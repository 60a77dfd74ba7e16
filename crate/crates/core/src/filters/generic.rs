use std::sync::Arc;

use super::{default_preprocessor, impl_filter_contract, ConvergenceManager, IterationReport, Propagation};
use crate::backend::DenseBlock;
use crate::error::{Error, Result};
use crate::normalize::{NormalizedAdjacency, Preprocessor};

/// Polynomial filter `Σ_{k=0}^{K-1} w_k A'^k p`. Weight `k` multiplies the
/// `k`-hop term, so `[1]` is the identity.
#[derive(Debug, Clone)]
pub struct GenericGraphFilter {
    weights: Vec<f64>,
    preprocessor: Arc<Preprocessor>,
    convergence: ConvergenceManager,
}

impl GenericGraphFilter {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("filter needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidParameter(format!("filter weight {w} is not finite")));
        }
        Ok(GenericGraphFilter {
            weights,
            preprocessor: default_preprocessor(),
            convergence: ConvergenceManager::default(),
        })
    }

    pub fn with_preprocessor(mut self, preprocessor: Arc<Preprocessor>) -> Self {
        self.preprocessor = preprocessor;
        self
    }

    pub fn with_convergence(mut self, convergence: ConvergenceManager) -> Self {
        self.convergence = convergence;
        self
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

impl Propagation for GenericGraphFilter {
    fn preprocessor(&self) -> &Arc<Preprocessor> {
        &self.preprocessor
    }

    fn propagate_block(
        &self,
        adjacency: &NormalizedAdjacency,
        columns: &DenseBlock,
    ) -> Result<(DenseBlock, IterationReport)> {
        let mut acc = columns.scaled(self.weights[0]);
        let mut term = columns.clone();
        for &w in &self.weights[1..] {
            term = adjacency.spmm(&term)?;
            if !term.is_finite() {
                return Err(Error::NonFinite);
            }
            acc.add_scaled(w, &term);
        }
        Ok((
            acc,
            IterationReport {
                iterations: self.weights.len() - 1,
                last_error: 0.0,
            },
        ))
    }
}

impl_filter_contract!(GenericGraphFilter);
