//! Contract invariants as plain checks, so the property suite and the
//! acceptance suite drive the same code.

use std::collections::HashSet;
use std::sync::Arc;

use indexmap::IndexMap;
use noderank::benchmarks::{benchmark_run, format_table, BenchmarkConfig, CommunityTask, TableStyle};
use noderank::filters::{ConvergenceManager, GenericGraphFilter, HeatKernel, PageRank};
use noderank::measures::conductance;
use noderank::{split, DenseBlock, Graph, GraphFilter, GraphSignal, SharedAlgorithm};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Check = Result<(), TestCaseError>;

/// (graph, seed) with at least one edge.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = (Arc<Graph>, u64)> {
    (2..=max_n, 0.15f64..0.7, any::<u64>())
        .prop_map(|(n, p, seed)| (random_graph(n, p, seed), seed))
        .prop_filter("needs an edge", |(g, _)| g.edge_count() > 0)
}

/// Nonnegative, sparse-ish, with at least one positive entry.
pub fn personalization(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut p: Vec<f64> = (0..n)
        .map(|_| if rng.random::<f64>() < 0.4 { rng.random::<f64>() } else { 0.0 })
        .collect();
    let k = rng.random_range(0..n);
    p[k] += 1.0;
    p
}

pub fn tight() -> ConvergenceManager {
    ConvergenceManager::default().with_tol(1e-13).unwrap().with_max_iters(100_000).unwrap()
}

pub fn filters() -> Vec<(&'static str, Arc<dyn GraphFilter>)> {
    vec![
        ("ppr.85", Arc::new(PageRank::new(0.85).unwrap().with_convergence(tight()))),
        ("hk3", Arc::new(HeatKernel::new(3.0).unwrap())),
        ("gf", Arc::new(GenericGraphFilter::new(vec![0.5, 0.3, 0.2, 0.1]).unwrap())),
    ]
}

pub fn scale_invariance((g, seed): (Arc<Graph>, u64), c: f64) -> Check {
    let p = personalization(g.node_count(), seed);
    let scaled: Vec<f64> = p.iter().map(|v| c * v).collect();
    for (name, f) in filters() {
        let a = f.rank(&g, &GraphSignal::new(g.clone(), p.clone()).unwrap()).unwrap();
        let b = f.rank(&g, &GraphSignal::new(g.clone(), scaled.clone()).unwrap()).unwrap();
        prop_assert!(sup_diff(a.values(), b.values()) <= 1e-9, "{name}");
    }
    Ok(())
}

pub fn propagate_linearity((g, seed): (Arc<Graph>, u64), a: f64, b: f64) -> Check {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut block = || {
        let data: Vec<f64> = (0..2 * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        DenseBlock::from_row_major(n, 2, data).unwrap()
    };
    let x = block();
    let y = block();
    let mut mix = x.scaled(a);
    mix.add_scaled(b, &y);
    for (name, f) in filters() {
        let lhs = f.propagate(&g, &mix).unwrap();
        let mut rhs = f.propagate(&g, &x).unwrap().scaled(a);
        rhs.add_scaled(b, &f.propagate(&g, &y).unwrap());
        prop_assert!(sup_diff(lhs.data(), rhs.data()) <= 1e-9, "{name}");
    }
    Ok(())
}

/// Rebuilds the graph from shuffled, randomly flipped edge lines, which
/// permutes node indices, and compares results node by node.
pub fn relabeling_invariance((g, seed): (Arc<Graph>, u64)) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<String> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (u, v) = (g.node_id(u), g.node_id(v));
            if rng.random() {
                format!("{u} {v}")
            } else {
                format!("{v} {u}")
            }
        })
        .collect();
    lines.shuffle(&mut rng);
    // isolated nodes only exist in `g`; keep the comparison to the shared ones
    let h = Arc::new(Graph::from_edge_list(&lines, false).unwrap());
    let n = g.node_count();
    let p = personalization(n, seed);
    let seeds: Vec<(&str, f64)> = (0..n)
        .filter(|&u| h.index_of(g.node_id(u)).is_some())
        .map(|u| (g.node_id(u), p[u]))
        .collect();
    prop_assume!(seeds.iter().any(|(_, v)| *v > 0.0));
    let pg = GraphSignal::from_map(g.clone(), Some(seeds.iter().copied())).unwrap();
    let ph = GraphSignal::from_map(h.clone(), Some(seeds.iter().copied())).unwrap();
    for (name, f) in filters() {
        let rg = f.rank(&g, &pg).unwrap();
        let rh = f.rank(&h, &ph).unwrap();
        for (id, v) in rh.iter() {
            prop_assert!((rg.get(id).unwrap() - v).abs() <= 1e-9, "{name} node {id}");
        }
    }
    let s: Vec<usize> = (0..h.node_count()).filter(|u| u % 2 == 0).collect();
    prop_assume!(s.len() < h.node_count());
    let s_in_g: Vec<usize> = s.iter().map(|&u| g.require_index(h.node_id(u)).unwrap()).collect();
    if let (Ok(cg), Ok(ch)) = (conductance(&g, &s_in_g), conductance(&h, &s)) {
        prop_assert!((cg - ch).abs() <= 1e-12);
    }
    Ok(())
}

pub fn split_partition(n: usize, fraction: f64, seed: u64) -> Check {
    let items: Vec<usize> = (0..n).map(|i| i * 7 + 3).collect();
    let (a, b) = split(&items, fraction, seed).unwrap();
    prop_assert!(!a.is_empty() && !b.is_empty());
    prop_assert_eq!(a.len() + b.len(), n);
    let sa: HashSet<_> = a.iter().collect();
    let sb: HashSet<_> = b.iter().collect();
    prop_assert!(sa.is_disjoint(&sb));
    let all: HashSet<_> = sa.union(&sb).copied().collect();
    prop_assert_eq!(all, items.iter().collect::<HashSet<_>>());
    prop_assert_eq!(split(&items, fraction, seed).unwrap(), (a, b));
    Ok(())
}

pub fn benchmark_determinism(seed: u64, bench_seed: u64) -> Check {
    let (g, blocks) = sbm(&[15, 15], 0.3, 0.05, seed);
    let tasks = || {
        vec![Ok(CommunityTask {
            name: "sbm".into(),
            graph: g.clone(),
            community: blocks[0].clone(),
        })]
    };
    let mut algs: IndexMap<String, SharedAlgorithm> = IndexMap::new();
    algs.insert("ppr.85".into(), Arc::new(PageRank::new(0.85).unwrap()));
    algs.insert("hk3".into(), Arc::new(HeatKernel::new(3.0).unwrap()));
    let config = BenchmarkConfig {
        seed: bench_seed,
        ..BenchmarkConfig::default()
    };
    let first = benchmark_run(&algs, tasks(), &config).unwrap();
    let second = benchmark_run(&algs, tasks(), &config).unwrap();
    prop_assert_eq!(&first, &second);
    prop_assert_eq!(
        format_table(&first, TableStyle::Text, 2),
        format_table(&second, TableStyle::Text, 2)
    );
    Ok(())
}
