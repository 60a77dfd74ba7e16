//! Graph generators and dense reference computations shared by the
//! integration tests. The oracles only use the graph's edge list, so they
//! do not depend on the library's normalization or iteration code.

#![allow(dead_code)]

use std::sync::Arc;

use noderank::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

/// Erdos-Renyi graph on nodes "0".."n-1"; isolated nodes are kept.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Arc<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Arc::new(Graph::from_index_edges(n, &edges, false).unwrap())
}

/// Random graph with exactly `m` distinct undirected edges.
pub fn random_graph_with_edges(n: usize, m: usize, seed: u64) -> Arc<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        }
    }
    Arc::new(Graph::from_index_edges(n, &edges, false).unwrap())
}

/// Stochastic block model. Returns the graph and the member indices of
/// each block.
pub fn sbm(sizes: &[usize], p_in: f64, p_out: f64, seed: u64) -> (Arc<Graph>, Vec<Vec<usize>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block = Vec::new();
    let mut blocks = Vec::new();
    for (b, &size) in sizes.iter().enumerate() {
        let start = block.len();
        block.extend(std::iter::repeat_n(b, size));
        blocks.push((start..start + size).collect::<Vec<_>>());
    }
    let n = block.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block[u] == block[v] { p_in } else { p_out };
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    (Arc::new(Graph::from_index_edges(n, &edges, false).unwrap()), blocks)
}

/// Dense 0/1 adjacency (both orientations for undirected graphs).
pub fn dense_adjacency(graph: &Graph) -> Dense {
    let n = graph.node_count();
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v) in graph.edges() {
        a[u][v] = 1.0;
        if !graph.is_directed() {
            a[v][u] = 1.0;
        }
    }
    a
}

/// `D^-1/2 A D^-1/2` with zero rows and columns for isolated nodes.
pub fn dense_symmetric(graph: &Graph) -> Dense {
    let a = dense_adjacency(graph);
    let n = a.len();
    let deg: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let mut out = vec![vec![0.0; n]; n];
    for u in 0..n {
        for v in 0..n {
            if a[u][v] != 0.0 {
                out[u][v] = a[u][v] / (deg[u] * deg[v]).sqrt();
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] != 0.0 {
                for j in 0..m {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Dense, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                let pivot_row = a[col].clone();
                for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= factor * p;
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    x
}

/// `exp(m)` by scaling and squaring with a 30-term Taylor series.
pub fn expm(m: &Dense) -> Dense {
    let n = m.len();
    let norm = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    while norm / 2f64.powi(squarings) > 0.5 {
        squarings += 1;
    }
    let scale = 2f64.powi(-squarings);
    let scaled: Dense = m.iter().map(|row| row.iter().map(|v| v * scale).collect()).collect();
    let mut result: Dense = (0..n).map(|i| (0..n).map(|j| f64::from(i == j)).collect()).collect();
    let mut term = result.clone();
    for k in 1..30 {
        term = matmul(&term, &scaled);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..n {
            for j in 0..n {
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

pub fn scaled_to_sum_one(p: &[f64]) -> Vec<f64> {
    let s: f64 = p.iter().sum();
    p.iter().map(|v| v / s).collect()
}

/// `(1 - alpha) (I - alpha A')^-1 p / sum(p)`
pub fn pagerank_oracle(graph: &Graph, alpha: f64, p: &[f64]) -> Vec<f64> {
    let a = dense_symmetric(graph);
    let n = a.len();
    let system: Dense = (0..n)
        .map(|i| (0..n).map(|j| f64::from(i == j) - alpha * a[i][j]).collect())
        .collect();
    let rhs: Vec<f64> = scaled_to_sum_one(p).iter().map(|v| (1.0 - alpha) * v).collect();
    solve(system, rhs)
}

/// `e^-t exp(t A') p / sum(p)`
pub fn heat_kernel_oracle(graph: &Graph, t: f64, p: &[f64]) -> Vec<f64> {
    let a = dense_symmetric(graph);
    let ta: Dense = a.iter().map(|row| row.iter().map(|v| t * v).collect()).collect();
    let e = expm(&ta);
    matvec(&e, &scaled_to_sum_one(p)).into_iter().map(|v| (-t).exp() * v).collect()
}

/// All-pairs AUC with ties counted as one half.
pub fn brute_auc(labels: &[bool], scores: &[f64]) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for i in 0..labels.len() {
        for j in 0..labels.len() {
            if labels[i] && !labels[j] {
                pairs += 1.0;
                if scores[i] > scores[j] {
                    wins += 1.0;
                } else if scores[i] == scores[j] {
                    wins += 0.5;
                }
            }
        }
    }
    wins / pairs
}

pub fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn l1_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}
pub mod invariants;
