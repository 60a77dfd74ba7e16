use std::cmp::Ordering;

use super::{exclusion_mask, Measure, Polarity};
use crate::error::{Error, Result};
use crate::signal::GraphSignal;

/// Area under the ROC curve of `scores` against a positive node set,
/// ignoring excluded nodes.
#[derive(Debug, Clone)]
pub struct Auc {
    positives: Vec<usize>,
    exclude: Vec<usize>,
}

impl Auc {
    pub fn new(positives: Vec<usize>, exclude: Vec<usize>) -> Self {
        Auc { positives, exclude }
    }
}

impl Measure for Auc {
    fn evaluate(&self, scores: &GraphSignal) -> Result<f64> {
        let n = scores.len();
        let excluded = exclusion_mask(n, &self.exclude)?;
        let positive = exclusion_mask(n, &self.positives)?;
        let (labels, kept): (Vec<bool>, Vec<f64>) = scores
            .values()
            .iter()
            .enumerate()
            .filter(|(u, _)| !excluded[*u])
            .map(|(u, &s)| (positive[u], s))
            .unzip();
        auc_from_labels(&labels, &kept)
    }

    fn polarity(&self) -> Polarity {
        Polarity::HigherIsBetter
    }
}

fn class_counts(labels: &[bool], scores: &[f64]) -> Result<(usize, usize)> {
    if labels.len() != scores.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            found: scores.len(),
        });
    }
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::InsufficientData(format!(
            "AUC needs both classes ({positives} positives, {negatives} negatives)"
        )));
    }
    Ok((positives, negatives))
}

/// Mann-Whitney AUC with midranks for tied scores; O(n log n).
pub fn auc_from_labels(labels: &[bool], scores: &[f64]) -> Result<f64> {
    let (positives, negatives) = class_counts(labels, scores)?;
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::NonFinite);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap_or(Ordering::Equal));

    let mut positive_rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // 1-based ranks start+1 ..= end share their mean
        let midrank = (start + 1 + end) as f64 / 2.0;
        let tied_positives = order[start..end].iter().filter(|&&i| labels[i]).count();
        positive_rank_sum += midrank * tied_positives as f64;
        start = end;
    }
    let p = positives as f64;
    let u = positive_rank_sum - p * (p + 1.0) / 2.0;
    Ok(u / (p * negatives as f64))
}

/// Counts correctly ordered (positive, negative) pairs, ties as one half.
pub fn auc_brute_force(labels: &[bool], scores: &[f64]) -> Result<f64> {
    let (positives, negatives) = class_counts(labels, scores)?;
    let mut wins = 0.0;
    for (&si, _) in scores.iter().zip(labels).filter(|(_, &l)| l) {
        for (&sj, _) in scores.iter().zip(labels).filter(|(_, &l)| !l) {
            if si > sj {
                wins += 1.0;
            } else if si == sj {
                wins += 0.5;
            }
        }
    }
    Ok(wins / (positives * negatives) as f64)
}
