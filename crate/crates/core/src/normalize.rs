//! Adjacency normalization and the shared preprocessor cache.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::backend::DenseBlock;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphToken};
use crate::sparse::CsrMatrix;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalizationMode {
    /// `D^-1/2 Ã D^-1/2` (out-degree on rows, in-degree on columns).
    #[default]
    Symmetric,
    /// `Ã D^-1`, column-stochastic wherever the column is nonzero.
    Column,
    /// `Ã` unscaled.
    None,
}

impl FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(NormalizationMode::Symmetric),
            "column" | "col" => Ok(NormalizationMode::Column),
            "none" => Ok(NormalizationMode::None),
            other => Err(Error::InvalidParameter(format!(
                "unknown normalization `{other}`"
            ))),
        }
    }
}

impl fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormalizationMode::Symmetric => "symmetric",
            NormalizationMode::Column => "column",
            NormalizationMode::None => "none",
        })
    }
}

/// A normalized adjacency operator `A'` tied to the graph it came from.
#[derive(Debug, Clone)]
pub struct NormalizedAdjacency {
    mode: NormalizationMode,
    renormalized: bool,
    matrix: CsrMatrix,
    source: GraphToken,
}

impl NormalizedAdjacency {
    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    pub fn renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn source(&self) -> GraphToken {
        self.source
    }

    pub fn node_count(&self) -> usize {
        self.matrix.rows()
    }

    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.matrix.spmv(x)
    }

    pub fn spmm(&self, x: &DenseBlock) -> Result<DenseBlock> {
        self.matrix.spmm(x)
    }
}

/// Builds `A'` from `graph`. `A[u][v] = 1` for every stored edge `u -> v`
/// (both orientations when undirected); `renormalized` adds `I` first.
/// Zero-degree rows and columns stay zero.
pub fn normalize_adjacency(graph: &Graph, mode: NormalizationMode, renormalized: bool) -> NormalizedAdjacency {
    let n = graph.node_count();
    let loop_weight = if renormalized { 1.0 } else { 0.0 };
    let row_degree: Vec<f64> = (0..n)
        .map(|u| graph.out_degree(u) as f64 + loop_weight)
        .collect();
    let col_degree: Vec<f64> = (0..n)
        .map(|v| graph.in_degree(v) as f64 + loop_weight)
        .collect();

    let scale = |u: usize, v: usize| -> f64 {
        match mode {
            NormalizationMode::Symmetric => 1.0 / (row_degree[u] * col_degree[v]).sqrt(),
            NormalizationMode::Column => 1.0 / col_degree[v],
            NormalizationMode::None => 1.0,
        }
    };

    let mut triplets = Vec::with_capacity(2 * graph.edge_count() + if renormalized { n } else { 0 });
    for u in 0..n {
        for &v in graph.neighbors(u) {
            triplets.push((u, v, scale(u, v)));
        }
        if renormalized {
            triplets.push((u, u, scale(u, u)));
        }
    }
    let matrix = CsrMatrix::from_triplets(n, n, &triplets).expect("graph indices are in range");
    NormalizedAdjacency {
        mode,
        renormalized,
        matrix,
        source: graph.token(),
    }
}

/// Shared normalization settings with an optional per-graph cache.
///
/// With `assume_immutability` each graph is normalized at most once; the
/// cache is keyed by graph token. Without it nothing is retained.
#[derive(Debug)]
pub struct Preprocessor {
    mode: NormalizationMode,
    renormalized: bool,
    assume_immutability: bool,
    cache: RwLock<HashMap<GraphToken, Arc<NormalizedAdjacency>>>,
    computations: AtomicUsize,
}

impl Default for Preprocessor {
    fn default() -> Self {
        Preprocessor::new(NormalizationMode::Symmetric)
    }
}

impl Preprocessor {
    pub fn new(mode: NormalizationMode) -> Self {
        Preprocessor {
            mode,
            renormalized: false,
            assume_immutability: false,
            cache: RwLock::new(HashMap::new()),
            computations: AtomicUsize::new(0),
        }
    }

    pub fn renormalize(mut self, renormalized: bool) -> Self {
        self.renormalized = renormalized;
        self
    }

    pub fn assume_immutability(mut self, assume: bool) -> Self {
        self.assume_immutability = assume;
        self
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn mode(&self) -> NormalizationMode {
        self.mode
    }

    pub fn is_renormalized(&self) -> bool {
        self.renormalized
    }

    pub fn assumes_immutability(&self) -> bool {
        self.assume_immutability
    }

    /// Number of normalizations actually computed so far.
    pub fn computations(&self) -> usize {
        self.computations.load(Ordering::SeqCst)
    }

    pub fn get(&self, graph: &Graph) -> Arc<NormalizedAdjacency> {
        if !self.assume_immutability {
            return Arc::new(self.compute(graph));
        }
        let token = graph.token();
        if let Some(hit) = self.cache.read().expect("cache lock poisoned").get(&token) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute(graph));
        // a concurrent first request may also have computed; keep the first stored
        self.cache
            .write()
            .expect("cache lock poisoned")
            .entry(token)
            .or_insert(computed)
            .clone()
    }

    fn compute(&self, graph: &Graph) -> NormalizedAdjacency {
        self.computations.fetch_add(1, Ordering::SeqCst);
        normalize_adjacency(graph, self.mode, self.renormalized)
    }

    pub fn cached_graphs(&self) -> usize {
        self.cache.read().expect("cache lock poisoned").len()
    }
}
