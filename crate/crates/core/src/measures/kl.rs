use super::{exclusion_mask, Measure, Polarity};
use crate::error::{Error, Result};
use crate::signal::GraphSignal;

/// `Σ P(v) ln((P(v)+ε)/(Q(v)+ε))` with the target `P` and the scores `Q`
/// each normalized to sum 1 over the non-excluded nodes.
#[derive(Debug, Clone)]
pub struct KlDivergence {
    target: GraphSignal,
    exclude: Vec<usize>,
    epsilon: f64,
}

impl KlDivergence {
    pub fn new(target: GraphSignal, exclude: Vec<usize>) -> Self {
        KlDivergence {
            target,
            exclude,
            epsilon: 1e-12,
        }
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }
}

fn included_distribution(values: &[f64], excluded: &[bool], what: &str) -> Result<Vec<f64>> {
    let kept: Vec<f64> = values
        .iter()
        .zip(excluded)
        .filter(|(_, &x)| !x)
        .map(|(&v, _)| v)
        .collect();
    if kept.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidParameter(format!("{what} must be nonnegative")));
    }
    let total: f64 = kept.iter().sum();
    if total <= 0.0 {
        return Err(Error::InsufficientData(format!(
            "{what} sums to zero over the included nodes"
        )));
    }
    Ok(kept.into_iter().map(|v| v / total).collect())
}

impl Measure for KlDivergence {
    fn evaluate(&self, scores: &GraphSignal) -> Result<f64> {
        scores.ensure_same_graph(&self.target)?;
        let excluded = exclusion_mask(scores.len(), &self.exclude)?;
        let p = included_distribution(self.target.values(), &excluded, "target")?;
        let q = included_distribution(scores.values(), &excluded, "scores")?;
        let eps = self.epsilon;
        Ok(p.iter()
            .zip(&q)
            .filter(|(&pv, _)| pv > 0.0)
            .map(|(&pv, &qv)| pv * ((pv + eps) / (qv + eps)).ln())
            .sum())
    }

    fn polarity(&self) -> Polarity {
        Polarity::LowerIsBetter
    }
}
