//! Wrappers that transform a base algorithm's scores while keeping the
//! [`RankingAlgorithm`] contract.

use std::sync::Arc;

use indexmap::IndexMap;

use crate::algorithm::{RankingAlgorithm, SharedAlgorithm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::signal::GraphSignal;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NormalizeMethod {
    #[default]
    Max,
    Sum,
}

/// Divides the base output by its max (or sum). All-zero output passes
/// through unchanged.
#[derive(Debug, Clone)]
pub struct Normalize {
    base: SharedAlgorithm,
    method: NormalizeMethod,
}

impl Normalize {
    pub fn new(base: SharedAlgorithm) -> Self {
        Normalize {
            base,
            method: NormalizeMethod::Max,
        }
    }

    pub fn with_method(mut self, method: NormalizeMethod) -> Self {
        self.method = method;
        self
    }

    pub fn wrap(base: SharedAlgorithm) -> SharedAlgorithm {
        Arc::new(Normalize::new(base))
    }
}

pub fn normalize_scores(scores: &GraphSignal, method: NormalizeMethod) -> Result<GraphSignal> {
    let denominator = match method {
        NormalizeMethod::Max => scores.max(),
        NormalizeMethod::Sum => scores.sum(),
    };
    if scores.values().iter().all(|&v| v == 0.0) {
        return Ok(scores.clone());
    }
    if denominator == 0.0 || !denominator.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "cannot normalize scores by {denominator}"
        )));
    }
    scores.map(|v| v / denominator)
}

impl RankingAlgorithm for Normalize {
    fn rank(&self, graph: &Arc<Graph>, personalization: &GraphSignal) -> Result<GraphSignal> {
        let scores = self.base.rank(graph, personalization)?;
        normalize_scores(&scores, self.method)
    }
}

/// Debiases scores by dividing them by the reference algorithm's response to
/// a uniform personalization. Nodes where the reference score is zero get 0.
#[derive(Debug, Clone)]
pub struct Sweep {
    base: SharedAlgorithm,
    reference: SharedAlgorithm,
}

impl Sweep {
    /// Uses `base` as its own reference.
    pub fn new(base: SharedAlgorithm) -> Self {
        Sweep {
            reference: base.clone(),
            base,
        }
    }

    pub fn with_reference(mut self, reference: SharedAlgorithm) -> Self {
        self.reference = reference;
        self
    }

    pub fn wrap(base: SharedAlgorithm) -> SharedAlgorithm {
        Arc::new(Sweep::new(base))
    }
}

pub fn sweep_ratio(scores: &GraphSignal, uniform: &GraphSignal) -> Result<GraphSignal> {
    scores.zip_with(uniform, |r, u| if u > 0.0 { r / u } else { 0.0 })
}

impl RankingAlgorithm for Sweep {
    fn rank(&self, graph: &Arc<Graph>, personalization: &GraphSignal) -> Result<GraphSignal> {
        let scores = self.base.rank(graph, personalization)?;
        let uniform = self.reference.rank(graph, &GraphSignal::ones(graph.clone()))?;
        sweep_ratio(&scores, &uniform)
    }
}

pub type Variation = Box<dyn Fn(SharedAlgorithm) -> SharedAlgorithm + Send + Sync>;

/// Emits `"{alg}{variation}"` for every pair, e.g. `"ppr.85" + "+Sweep"`.
/// The input map is left alone; merging is up to the caller.
pub fn create_variations(
    algorithms: &IndexMap<String, SharedAlgorithm>,
    variations: &IndexMap<String, Variation>,
) -> Result<IndexMap<String, SharedAlgorithm>> {
    let mut out = IndexMap::new();
    for (alg_name, alg) in algorithms {
        for (suffix, wrap) in variations {
            let name = format!("{alg_name}{suffix}");
            if algorithms.contains_key(&name) || out.contains_key(&name) {
                return Err(Error::NameCollision(name));
            }
            out.insert(name, wrap(alg.clone()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Returns fixed scores regardless of input.
    #[derive(Debug)]
    struct Fixed(Vec<f64>);

    impl RankingAlgorithm for Fixed {
        fn rank(&self, graph: &Arc<Graph>, _p: &GraphSignal) -> Result<GraphSignal> {
            GraphSignal::new(graph.clone(), self.0.clone())
        }
    }

    /// Returns `personalized` for non-uniform input and `uniform` otherwise.
    #[derive(Debug)]
    struct TwoFaced {
        personalized: Vec<f64>,
        uniform: Vec<f64>,
    }

    impl RankingAlgorithm for TwoFaced {
        fn rank(&self, graph: &Arc<Graph>, p: &GraphSignal) -> Result<GraphSignal> {
            let all_ones = p.values().iter().all(|&v| v == 1.0);
            let values = if all_ones { &self.uniform } else { &self.personalized };
            GraphSignal::new(graph.clone(), values.clone())
        }
    }

    fn path() -> Arc<Graph> {
        Arc::new(Graph::from_edge_list(["a b"], false).unwrap())
    }

    fn run(alg: &dyn RankingAlgorithm) -> Vec<f64> {
        let g = path();
        let p = GraphSignal::indicator(g.clone(), &[0]).unwrap();
        alg.rank(&g, &p).unwrap().into_values()
    }

    #[test]
    fn normalize_max() {
        assert_eq!(run(&Normalize::new(Arc::new(Fixed(vec![2.0, 4.0])))), vec![0.5, 1.0]);
    }

    #[test]
    fn normalize_all_zero_passes_through() {
        assert_eq!(run(&Normalize::new(Arc::new(Fixed(vec![0.0, 0.0])))), vec![0.0, 0.0]);
    }

    #[test]
    fn normalize_sum() {
        let n = Normalize::new(Arc::new(Fixed(vec![1.0, 3.0]))).with_method(NormalizeMethod::Sum);
        assert_eq!(run(&n), vec![0.25, 0.75]);
    }

    #[test]
    fn sweep_divides_by_uniform_response() {
        let base = Arc::new(TwoFaced {
            personalized: vec![0.6, 0.2],
            uniform: vec![0.3, 0.2],
        });
        let out = run(&Sweep::new(base));
        assert!((out[0] - 2.0).abs() < 1e-15);
        assert!((out[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sweep_zero_reference_gives_zero() {
        let base = Arc::new(TwoFaced {
            personalized: vec![0.6, 0.2],
            uniform: vec![0.3, 0.0],
        });
        assert_eq!(run(&Sweep::new(base)), vec![2.0, 0.0]);
    }

    #[test]
    fn sweep_separate_reference() {
        let s = Sweep::new(Arc::new(Fixed(vec![1.0, 1.0]))).with_reference(Arc::new(Fixed(vec![0.5, 0.25])));
        assert_eq!(run(&s), vec![2.0, 4.0]);
    }

    fn algs(names: &[&str]) -> IndexMap<String, SharedAlgorithm> {
        names
            .iter()
            .map(|n| (n.to_string(), Arc::new(Fixed(vec![1.0, 2.0])) as SharedAlgorithm))
            .collect()
    }

    #[test]
    fn variations_named_with_suffix() {
        let mut vars: IndexMap<String, Variation> = IndexMap::new();
        vars.insert("+Sweep".into(), Box::new(Sweep::wrap));
        let out = create_variations(&algs(&["ppr.85"]), &vars).unwrap();
        assert_eq!(out.keys().collect::<Vec<_>>(), vec!["ppr.85+Sweep"]);
    }

    #[test]
    fn empty_variations() {
        let out = create_variations(&algs(&["a", "b"]), &IndexMap::new()).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn cartesian_product() {
        let mut vars: IndexMap<String, Variation> = IndexMap::new();
        vars.insert("+Sweep".into(), Box::new(Sweep::wrap));
        vars.insert("+norm".into(), Box::new(Normalize::wrap));
        let out = create_variations(&algs(&["a", "b"]), &vars).unwrap();
        assert_eq!(
            out.keys().collect::<Vec<_>>(),
            vec!["a+Sweep", "a+norm", "b+Sweep", "b+norm"]
        );
    }

    #[test]
    fn collision_detected() {
        let mut vars: IndexMap<String, Variation> = IndexMap::new();
        vars.insert("+Sweep".into(), Box::new(Sweep::wrap));
        let err = create_variations(&algs(&["a", "a+Sweep"]), &vars).unwrap_err();
        assert!(matches!(err, Error::NameCollision(name) if name == "a+Sweep"));
    }
}
