use std::sync::Arc;

use super::{default_preprocessor, impl_filter_contract, ConvergenceManager, IterationReport, Propagation};
use crate::backend::{self, DenseBlock};
use crate::error::{Error, Result};
use crate::normalize::{NormalizedAdjacency, Preprocessor};

/// Heat kernel `e^{-t} Σ_k t^k/k! A'^k p`.
///
/// Terms follow the recurrence `term_{k+1} = t/(k+1) · A' term_k` and are
/// accumulated until the L1 norm of the newest term (worst column) drops
/// below the tolerance.
#[derive(Debug, Clone)]
pub struct HeatKernel {
    t: f64,
    preprocessor: Arc<Preprocessor>,
    convergence: ConvergenceManager,
}

impl HeatKernel {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "heat kernel t must be positive, got {t}"
            )));
        }
        Ok(HeatKernel {
            t,
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

    pub fn t(&self) -> f64 {
        self.t
    }
}

impl Propagation for HeatKernel {
    fn preprocessor(&self) -> &Arc<Preprocessor> {
        &self.preprocessor
    }

    fn propagate_block(
        &self,
        adjacency: &NormalizedAdjacency,
        columns: &DenseBlock,
    ) -> Result<(DenseBlock, IterationReport)> {
        let mut term = columns.scaled((-self.t).exp());
        let mut acc = term.clone();
        let mut run = self.convergence.start();
        let mut k = 0usize;
        loop {
            term = adjacency.spmm(&term)?.scaled(self.t / (k + 1) as f64);
            acc.add_scaled(1.0, &term);
            k += 1;
            let size = term.columns().iter().map(|c| backend::l1(c)).fold(0.0, f64::max);
            if run.step(size)? {
                return Ok((acc, run.report()));
            }
        }
    }
}

impl_filter_contract!(HeatKernel);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::RankingAlgorithm;
    use crate::graph::Graph;
    use crate::signal::GraphSignal;

    #[test]
    fn path_matches_hyperbolic_closed_form() {
        // A' = [[0,1],[1,0]]: e^{tA'} = [[cosh t, sinh t], [sinh t, cosh t]]
        let g = Arc::new(Graph::from_edge_list(["a b"], false).unwrap());
        let p = GraphSignal::from_map(g.clone(), Some([("a", 1.0)])).unwrap();
        let r = HeatKernel::new(3.0).unwrap().rank(&g, &p).unwrap();
        let e = (-3.0f64).exp();
        assert!((r.values()[0] - e * 3.0f64.cosh()).abs() < 1e-9);
        assert!((r.values()[1] - e * 3.0f64.sinh()).abs() < 1e-9);
        assert!((r.values()[0] - 0.501240).abs() < 1e-6);
        assert!((r.values()[1] - 0.498760).abs() < 1e-6);
    }

    #[test]
    fn tiny_t_returns_personalization() {
        let g = Arc::new(Graph::from_edge_list(["a b", "b c"], false).unwrap());
        let p = GraphSignal::from_map(g.clone(), Some([("a", 1.0)])).unwrap();
        let r = HeatKernel::new(1e-12).unwrap().rank(&g, &p).unwrap();
        assert!((r.values()[0] - 1.0).abs() < 1e-9);
        assert!(r.values()[1].abs() < 1e-9);
    }

    #[test]
    fn triangle_uniform() {
        let g = Arc::new(Graph::from_edge_list(["a b", "b c", "c a"], false).unwrap());
        let r = HeatKernel::new(5.0).unwrap().rank(&g, &GraphSignal::ones(g.clone())).unwrap();
        for v in r.values() {
            assert!((v - 1.0 / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_t() {
        assert!(HeatKernel::new(0.0).is_err());
        assert!(HeatKernel::new(-1.0).is_err());
        assert!(HeatKernel::new(f64::INFINITY).is_err());
    }

    #[test]
    fn zero_personalization_rejected() {
        let g = Arc::new(Graph::from_edge_list(["a b"], false).unwrap());
        assert!(matches!(
            HeatKernel::new(3.0).unwrap().rank(&g, &GraphSignal::zeros(g.clone())),
            Err(Error::ZeroPersonalization)
        ));
    }
}
