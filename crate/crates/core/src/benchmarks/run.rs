use std::sync::Arc;

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::{CommunitySelection, CommunityTask};
use crate::algorithm::SharedAlgorithm;
use crate::error::{Error, Result};
use crate::measures::{MeasureFactory, MeasureKind};
use crate::signal::GraphSignal;
use crate::split::split;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkConfig {
    pub fraction_of_training: f64,
    pub seed: u64,
    pub measure: MeasureKind,
    pub community_selection: CommunitySelection,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        BenchmarkConfig {
            fraction_of_training: 0.5,
            seed: 0,
            measure: MeasureKind::Auc,
            community_selection: CommunitySelection::Largest,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellFailure {
    pub dataset: String,
    pub algorithm: String,
    pub error: String,
}

/// Measure values indexed by (dataset, algorithm). `None` marks a failed cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkResult {
    pub datasets: Vec<String>,
    pub algorithms: Vec<String>,
    pub values: Vec<Vec<Option<f64>>>,
    pub failures: Vec<CellFailure>,
    pub config: BenchmarkConfig,
}

impl BenchmarkResult {
    pub fn get(&self, dataset: &str, algorithm: &str) -> Option<f64> {
        let r = self.datasets.iter().position(|d| d == dataset)?;
        let c = self.algorithms.iter().position(|a| a == algorithm)?;
        self.values[r][c]
    }

    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Training/test split of one community, shared by every algorithm.
#[derive(Debug, Clone)]
pub struct CommunitySplit {
    pub training: Vec<usize>,
    pub test: Vec<usize>,
}

pub fn split_community(community: &[usize], fraction: f64, seed: u64) -> Result<CommunitySplit> {
    let (mut training, mut test) = split(community, fraction, seed)?;
    training.sort_unstable();
    test.sort_unstable();
    Ok(CommunitySplit { training, test })
}

/// Scores one algorithm on one task: seeds are the training members, the
/// measure's positives are the held-out members, and the training members
/// are excluded from evaluation.
pub fn evaluate_cell(
    algorithm: &SharedAlgorithm,
    task: &CommunityTask,
    split: &CommunitySplit,
    measure: &dyn MeasureFactory,
) -> Result<f64> {
    let personalization = GraphSignal::indicator(task.graph.clone(), &split.training)?;
    let scores = algorithm.rank(&task.graph, &personalization)?;
    measure
        .build(&task.graph, &split.test, &split.training)?
        .evaluate(&scores)
}

/// Runs every algorithm on every task. Loader errors abort the run;
/// algorithm errors are recorded per cell and the run continues.
pub fn benchmark_run<I>(
    algorithms: &IndexMap<String, SharedAlgorithm>,
    loader: I,
    config: &BenchmarkConfig,
) -> Result<BenchmarkResult>
where
    I: IntoIterator<Item = Result<CommunityTask>>,
{
    if algorithms.is_empty() {
        return Err(Error::InvalidParameter("no algorithms to benchmark".into()));
    }
    let tasks: Vec<CommunityTask> = loader.into_iter().collect::<Result<_>>()?;
    if tasks.is_empty() {
        return Err(Error::InvalidParameter("no datasets to benchmark".into()));
    }
    let splits: Vec<CommunitySplit> = tasks
        .iter()
        .map(|t| {
            split_community(&t.community, config.fraction_of_training, config.seed)
                .map_err(|e| Error::Dataset(format!("{}: {e}", t.name)))
        })
        .collect::<Result<_>>()?;

    let algs: Vec<(&String, &SharedAlgorithm)> = algorithms.iter().collect();
    let cells: Vec<(usize, usize)> = (0..tasks.len())
        .flat_map(|r| (0..algs.len()).map(move |c| (r, c)))
        .collect();
    let measure: Arc<dyn MeasureFactory> = Arc::new(config.measure);
    let outcomes: Vec<Result<f64>> = cells
        .par_iter()
        .map(|&(r, c)| evaluate_cell(algs[c].1, &tasks[r], &splits[r], measure.as_ref()))
        .collect();

    let mut values = vec![vec![None; algs.len()]; tasks.len()];
    let mut failures = Vec::new();
    for (&(r, c), outcome) in cells.iter().zip(outcomes) {
        match outcome {
            Ok(v) if v.is_finite() => values[r][c] = Some(v),
            Ok(v) => failures.push(CellFailure {
                dataset: tasks[r].name.clone(),
                algorithm: algs[c].0.clone(),
                error: format!("non-finite measure value {v}"),
            }),
            Err(e) => failures.push(CellFailure {
                dataset: tasks[r].name.clone(),
                algorithm: algs[c].0.clone(),
                error: e.to_string(),
            }),
        }
    }
    Ok(BenchmarkResult {
        datasets: tasks.iter().map(|t| t.name.clone()).collect(),
        algorithms: algs.iter().map(|(name, _)| (*name).clone()).collect(),
        values,
        failures,
        config: config.clone(),
    })
}
