//! Online hyperparameter tuning by grid-refined block coordinate descent.
//!
//! The personalization's seeds are split into a training part, used to rank,
//! and a validation part, used as ground truth for the measure. Each round
//! visits the coordinates in order, evaluates `divisions` equidistant values
//! across the coordinate's current interval and keeps the best one; the
//! interval is then recentered on the incumbent and shrunk. The final ranking
//! re-runs the best configuration on the full personalization.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algorithm::{ensure_bound, RankingAlgorithm, SharedAlgorithm};
use crate::backend::BackendKind;
use crate::error::{Error, Result};
use crate::filters::{ConvergenceManager, GenericGraphFilter};
use crate::graph::Graph;
use crate::measures::{MeasureFactory, MeasureKind};
use crate::normalize::Preprocessor;
use crate::signal::GraphSignal;
use crate::split::split;

pub type Factory = Arc<dyn Fn(&[f64]) -> Result<SharedAlgorithm> + Send + Sync>;

#[derive(Clone)]
pub struct ParameterTuner {
    factory: Factory,
    min_vals: Vec<f64>,
    max_vals: Vec<f64>,
    integer_mask: Vec<bool>,
    measure: Arc<dyn MeasureFactory>,
    deviation_tol: f64,
    divisions: usize,
    shrink: f64,
    max_rounds: usize,
    validation_fraction: f64,
    rng_seed: u64,
    tuning_backend: BackendKind,
}

impl fmt::Debug for ParameterTuner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParameterTuner")
            .field("min_vals", &self.min_vals)
            .field("max_vals", &self.max_vals)
            .field("integer_mask", &self.integer_mask)
            .field("measure", &self.measure)
            .field("deviation_tol", &self.deviation_tol)
            .field("divisions", &self.divisions)
            .field("shrink", &self.shrink)
            .field("max_rounds", &self.max_rounds)
            .field("validation_fraction", &self.validation_fraction)
            .field("rng_seed", &self.rng_seed)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TuneReport {
    pub best_params: Vec<f64>,
    /// Measure value at `best_params`, in the measure's own orientation.
    pub best_objective: f64,
    /// Distinct parameter vectors evaluated.
    pub evaluations: usize,
    pub rounds: usize,
    /// Candidates whose construction, ranking or evaluation failed.
    pub failures: usize,
    /// Incumbent objective after each coordinate update.
    #[serde(skip)]
    pub trace: Vec<f64>,
}

impl ParameterTuner {
    pub fn new(factory: Factory, min_vals: Vec<f64>, max_vals: Vec<f64>) -> Result<Self> {
        if min_vals.len() != max_vals.len() {
            return Err(Error::DimensionMismatch {
                expected: min_vals.len(),
                found: max_vals.len(),
            });
        }
        if min_vals.is_empty() {
            return Err(Error::InvalidParameter("parameter box is empty".into()));
        }
        for (i, (lo, hi)) in min_vals.iter().zip(&max_vals).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {i}: need min < max, got [{lo}, {hi}]"
                )));
            }
        }
        let d = min_vals.len();
        Ok(ParameterTuner {
            factory,
            min_vals,
            max_vals,
            integer_mask: vec![false; d],
            measure: Arc::new(MeasureKind::Auc),
            deviation_tol: 0.005,
            divisions: 5,
            shrink: 0.5,
            max_rounds: 10,
            validation_fraction: 0.5,
            rng_seed: 0,
            tuning_backend: BackendKind::Native,
        })
    }

    pub fn with_integer_mask(mut self, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != self.min_vals.len() {
            return Err(Error::DimensionMismatch {
                expected: self.min_vals.len(),
                found: mask.len(),
            });
        }
        self.integer_mask = mask;
        Ok(self)
    }

    pub fn with_measure(mut self, measure: Arc<dyn MeasureFactory>) -> Self {
        self.measure = measure;
        self
    }

    pub fn with_deviation_tol(mut self, deviation_tol: f64) -> Result<Self> {
        if !(deviation_tol > 0.0 && deviation_tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "deviation_tol must be positive, got {deviation_tol}"
            )));
        }
        self.deviation_tol = deviation_tol;
        Ok(self)
    }

    pub fn with_divisions(mut self, divisions: usize) -> Result<Self> {
        if divisions < 2 {
            return Err(Error::InvalidParameter("divisions must be at least 2".into()));
        }
        self.divisions = divisions;
        Ok(self)
    }

    pub fn with_shrink(mut self, shrink: f64) -> Result<Self> {
        if !(shrink > 0.0 && shrink < 1.0) {
            return Err(Error::InvalidParameter(format!("shrink must lie in (0, 1), got {shrink}")));
        }
        self.shrink = shrink;
        Ok(self)
    }

    pub fn with_max_rounds(mut self, max_rounds: usize) -> Result<Self> {
        if max_rounds == 0 {
            return Err(Error::InvalidParameter("max_rounds must be positive".into()));
        }
        self.max_rounds = max_rounds;
        Ok(self)
    }

    pub fn with_validation_fraction(mut self, fraction: f64) -> Result<Self> {
        if !(fraction > 0.0 && fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "validation_fraction must lie in (0, 1), got {fraction}"
            )));
        }
        self.validation_fraction = fraction;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn with_tuning_backend(mut self, backend: BackendKind) -> Self {
        self.tuning_backend = backend;
        self
    }

    pub fn min_vals(&self) -> &[f64] {
        &self.min_vals
    }

    pub fn max_vals(&self) -> &[f64] {
        &self.max_vals
    }

    pub fn measure(&self) -> &Arc<dyn MeasureFactory> {
        &self.measure
    }

    pub fn tuning_backend(&self) -> BackendKind {
        self.tuning_backend
    }

    fn snap(&self, i: usize, value: f64) -> f64 {
        let v = if self.integer_mask[i] { value.round() } else { value };
        v.clamp(self.min_vals[i], self.max_vals[i])
    }

    /// Tunes on a split of `personalization` and ranks with the winner.
    pub fn tune(&self, graph: &Arc<Graph>, personalization: &GraphSignal) -> Result<(GraphSignal, TuneReport)> {
        ensure_bound(graph, personalization)?;
        let (train, validation) =
            split_personalization(personalization, 1.0 - self.validation_fraction, self.rng_seed)?;
        let train_nodes: Vec<usize> = nonzero(&train);
        let polarity = self.measure.polarity();

        // higher is better internally; failures score -inf
        let objective = |params: &[f64]| -> f64 {
            let value = (self.factory)(params)
                .and_then(|alg| alg.rank(graph, &train))
                .and_then(|scores| {
                    self.measure
                        .build(graph, &validation, &train_nodes)?
                        .evaluate(&scores)
                });
            match value {
                Ok(v) if v.is_finite() => polarity.orient(v),
                _ => f64::NEG_INFINITY,
            }
        };

        let mut search = Search {
            memo: HashMap::new(),
            failures: 0,
        };
        let d = self.min_vals.len();
        let mut incumbent: Vec<f64> = (0..d)
            .map(|i| self.snap(i, 0.5 * (self.min_vals[i] + self.max_vals[i])))
            .collect();
        // the start point is only a location; scores come from the grids
        let mut incumbent_score = f64::NEG_INFINITY;
        let original: Vec<f64> = (0..d).map(|i| self.max_vals[i] - self.min_vals[i]).collect();
        let mut width = original.clone();
        let mut lo = self.min_vals.clone();
        let mut hi = self.max_vals.clone();
        let mut trace = Vec::new();
        let mut rounds = 0;

        for _ in 0..self.max_rounds {
            rounds += 1;
            let mut spread = Spread::default();
            for i in 0..d {
                let mut values: Vec<f64> = (0..self.divisions)
                    .map(|j| self.snap(i, lo[i] + (hi[i] - lo[i]) * j as f64 / (self.divisions - 1) as f64))
                    .collect();
                values.dedup();
                let candidates: Vec<Vec<f64>> = values
                    .iter()
                    .map(|&v| {
                        let mut c = incumbent.clone();
                        c[i] = v;
                        c
                    })
                    .collect();
                let scores = search.evaluate(&candidates, &objective);

                let mut best = (incumbent[i], incumbent_score);
                for (&v, &s) in values.iter().zip(&scores) {
                    spread.add(s);
                    if s > best.1 || (s == best.1 && v < best.0) {
                        best = (v, s);
                    }
                }
                incumbent[i] = best.0;
                incumbent_score = best.1;
                trace.push(polarity.orient(incumbent_score));

                width[i] *= self.shrink;
                lo[i] = (incumbent[i] - width[i] / 2.0).max(self.min_vals[i]);
                hi[i] = (incumbent[i] + width[i] / 2.0).min(self.max_vals[i]);
            }
            let narrow = (0..d).all(|i| width[i] <= self.deviation_tol * original[i]);
            if narrow || spread.is_flat() {
                break;
            }
        }

        if incumbent_score == f64::NEG_INFINITY {
            return Err(Error::AllCandidatesFailed);
        }
        let report = TuneReport {
            best_objective: polarity.orient(incumbent_score),
            best_params: incumbent,
            evaluations: search.memo.len(),
            rounds,
            failures: search.failures,
            trace,
        };
        let ranks = (self.factory)(&report.best_params)?.rank(graph, personalization)?;
        Ok((ranks, report))
    }
}

impl RankingAlgorithm for ParameterTuner {
    fn rank(&self, graph: &Arc<Graph>, personalization: &GraphSignal) -> Result<GraphSignal> {
        self.tune(graph, personalization).map(|(scores, _)| scores)
    }
}

struct Search {
    memo: HashMap<Vec<u64>, f64>,
    failures: usize,
}

impl Search {
    /// Scores candidates, evaluating only those not seen before.
    fn evaluate(&mut self, candidates: &[Vec<f64>], objective: &(dyn Fn(&[f64]) -> f64 + Sync)) -> Vec<f64> {
        let key = |c: &[f64]| c.iter().map(|v| v.to_bits()).collect::<Vec<u64>>();
        let mut fresh: Vec<&Vec<f64>> = candidates
            .iter()
            .filter(|c| !self.memo.contains_key(&key(c)))
            .collect();
        fresh.dedup();
        let computed: Vec<f64> = fresh.par_iter().map(|c| objective(c)).collect();
        for (c, s) in fresh.into_iter().zip(computed) {
            if s == f64::NEG_INFINITY {
                self.failures += 1;
            }
            self.memo.insert(key(c), s);
        }
        candidates.iter().map(|c| self.memo[&key(c)]).collect()
    }
}

#[derive(Default)]
struct Spread {
    min: Option<f64>,
    max: Option<f64>,
}

impl Spread {
    fn add(&mut self, s: f64) {
        if s.is_finite() {
            self.min = Some(self.min.map_or(s, |m| m.min(s)));
            self.max = Some(self.max.map_or(s, |m| m.max(s)));
        }
    }

    /// No candidate in the round distinguished itself.
    fn is_flat(&self) -> bool {
        match (self.min, self.max) {
            (Some(lo), Some(hi)) => hi - lo < 1e-12,
            _ => true,
        }
    }
}

fn nonzero(signal: &GraphSignal) -> Vec<usize> {
    signal
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0.0)
        .map(|(u, _)| u)
        .collect()
}

/// Splits the nonzero entries of `p` at random. The training signal keeps
/// the values of a `fraction` of them; the rest form the validation set.
pub fn split_personalization(p: &GraphSignal, fraction: f64, seed: u64) -> Result<(GraphSignal, Vec<usize>)> {
    let seeds = nonzero(p);
    if seeds.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "tuning needs at least 2 nonzero personalization entries, found {}",
            seeds.len()
        )));
    }
    let (train, mut validation) = split(&seeds, fraction, seed)?;
    let mut values = vec![0.0; p.len()];
    for u in train {
        values[u] = p.values()[u];
    }
    validation.sort_unstable();
    Ok((GraphSignal::new(p.graph().clone(), values)?, validation))
}

/// Factory for uniform-weight filters `[x; round(K)]` over params `(x, K)`.
pub fn uniform_filter_factory(preprocessor: Arc<Preprocessor>, convergence: ConvergenceManager) -> Factory {
    Arc::new(move |params: &[f64]| {
        let hops = params[1].round() as usize;
        let filter = GenericGraphFilter::new(vec![params[0]; hops])?
            .with_preprocessor(preprocessor.clone())
            .with_convergence(convergence);
        Ok(Arc::new(filter) as SharedAlgorithm)
    })
}

/// Tuner over uniform-weight polynomial filters `[x; K]` with
/// `x ∈ [0.5, 0.99]` and integer `K ∈ [5, 20]`, scored by AUC.
pub fn default_tuner(preprocessor: Arc<Preprocessor>) -> ParameterTuner {
    let factory = uniform_filter_factory(preprocessor, ConvergenceManager::default());
    ParameterTuner::new(factory, vec![0.5, 5.0], vec![0.99, 20.0])
        .and_then(|t| t.with_integer_mask(vec![false, true]))
        .expect("default box is valid")
}
