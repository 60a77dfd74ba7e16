//! Supervised and unsupervised evaluation of score signals.

mod auc;
mod conductance;
mod kl;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use auc::{auc_brute_force, auc_from_labels, Auc};
pub use conductance::{conductance, Conductance};
pub use kl::KlDivergence;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::signal::GraphSignal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    HigherIsBetter,
    LowerIsBetter,
}

impl Polarity {
    /// Maps a raw measure value to "larger is better".
    pub fn orient(self, value: f64) -> f64 {
        match self {
            Polarity::HigherIsBetter => value,
            Polarity::LowerIsBetter => -value,
        }
    }
}

pub trait Measure: Send + Sync + fmt::Debug {
    fn evaluate(&self, scores: &GraphSignal) -> Result<f64>;
    fn polarity(&self) -> Polarity;
}

/// Builds a supervised measure from known positives and excluded nodes.
pub trait MeasureFactory: Send + Sync + fmt::Debug {
    fn build(&self, graph: &Arc<Graph>, positives: &[usize], exclude: &[usize]) -> Result<Box<dyn Measure>>;
    fn polarity(&self) -> Polarity;
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    #[default]
    Auc,
    /// KL divergence of the scores from the indicator of the positives.
    Kl,
}

impl MeasureFactory for MeasureKind {
    fn build(&self, graph: &Arc<Graph>, positives: &[usize], exclude: &[usize]) -> Result<Box<dyn Measure>> {
        Ok(match self {
            MeasureKind::Auc => Box::new(Auc::new(positives.to_vec(), exclude.to_vec())),
            MeasureKind::Kl => {
                let target = GraphSignal::indicator(graph.clone(), positives)?;
                Box::new(KlDivergence::new(target, exclude.to_vec()))
            }
        })
    }

    fn polarity(&self) -> Polarity {
        match self {
            MeasureKind::Auc => Polarity::HigherIsBetter,
            MeasureKind::Kl => Polarity::LowerIsBetter,
        }
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auc" => Ok(MeasureKind::Auc),
            "kl" | "kldivergence" => Ok(MeasureKind::Kl),
            other => Err(Error::InvalidParameter(format!("unknown measure `{other}`"))),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureKind::Auc => "auc",
            MeasureKind::Kl => "kl",
        })
    }
}

pub(crate) fn exclusion_mask(n: usize, exclude: &[usize]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &u in exclude {
        *mask.get_mut(u).ok_or(Error::DimensionMismatch {
            expected: n,
            found: u + 1,
        })? = true;
    }
    Ok(mask)
}
