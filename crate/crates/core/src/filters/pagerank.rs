use std::sync::Arc;

use super::{default_preprocessor, impl_filter_contract, ConvergenceManager, IterationReport, Propagation};
use crate::backend::DenseBlock;
use crate::error::{Error, Result};
use crate::normalize::{NormalizedAdjacency, Preprocessor};

/// Personalized PageRank: the fixed point of `r = αA'r + (1-α)p`, found by
/// power iteration starting from `p`.
#[derive(Debug, Clone)]
pub struct PageRank {
    alpha: f64,
    preprocessor: Arc<Preprocessor>,
    convergence: ConvergenceManager,
}

impl PageRank {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "PageRank alpha must lie in (0, 1), got {alpha}"
            )));
        }
        Ok(PageRank {
            alpha,
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

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn convergence(&self) -> &ConvergenceManager {
        &self.convergence
    }
}

impl Propagation for PageRank {
    fn preprocessor(&self) -> &Arc<Preprocessor> {
        &self.preprocessor
    }

    fn propagate_block(
        &self,
        adjacency: &NormalizedAdjacency,
        columns: &DenseBlock,
    ) -> Result<(DenseBlock, IterationReport)> {
        let teleport = columns.scaled(1.0 - self.alpha);
        let mut run = self.convergence.start();
        let mut ranks = columns.clone();
        loop {
            let mut next = adjacency.spmm(&ranks)?.scaled(self.alpha);
            next.add_scaled(1.0, &teleport);
            let error = run.block_error(&ranks, &next);
            ranks = next;
            if run.step(error)? {
                return Ok((ranks, run.report()));
            }
        }
    }
}

impl_filter_contract!(PageRank);
