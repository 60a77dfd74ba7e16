mod common;

use std::collections::HashSet;
use std::sync::Arc;

use noderank::benchmarks::{format_table, BenchmarkConfig, TableStyle};
use noderank::filters::{ConvergenceManager, ErrorNorm, HeatKernel, PageRank};
use noderank::measures::{auc_from_labels, conductance, Auc, KlDivergence, Measure};
use noderank::postprocess::{normalize_scores, sweep_ratio, NormalizeMethod};
use noderank::tuner::default_tuner;
use noderank::{normalize_adjacency, Graph, GraphSignal, NormalizationMode, Preprocessor, RankingAlgorithm};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::invariants::{self, graph_strategy, personalization};
use common::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(128)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rank_is_scale_invariant(input in graph_strategy(20), c in 1e-3f64..1e3) {
        invariants::scale_invariance(input, c)?;
    }

    #[test]
    fn propagate_is_linear(input in graph_strategy(20), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        invariants::propagate_linearity(input, a, b)?;
    }

    #[test]
    fn relabeling_does_not_change_scores(input in graph_strategy(20)) {
        invariants::relabeling_invariance(input)?;
    }

    #[test]
    fn split_is_a_partition(n in 2usize..200, fraction in 0.01f64..0.99, seed in any::<u64>()) {
        invariants::split_partition(n, fraction, seed)?;
    }

    #[test]
    fn benchmark_is_deterministic(seed in any::<u64>(), bench_seed in any::<u64>()) {
        invariants::benchmark_determinism(seed, bench_seed)?;
    }

    #[test]
    fn text_and_latex_show_the_same_numbers(values in prop::collection::vec(prop::option::of(0.0f64..=1.0), 6)) {
        let result = noderank::benchmarks::BenchmarkResult {
            datasets: vec!["x".into(), "y".into()],
            algorithms: vec!["a".into(), "b".into(), "c".into()],
            values: vec![values[..3].to_vec(), values[3..].to_vec()],
            failures: vec![],
            config: BenchmarkConfig::default(),
        };
        let numbers = |s: &str| -> Vec<String> {
            s.split(|c: char| c.is_whitespace() || c == '&' || c == '\\')
                .filter(|t| t.starts_with('.') || t.starts_with("1.") || t.starts_with("0.") || *t == "--")
                .map(str::to_string)
                .collect()
        };
        let text = format_table(&result, TableStyle::Text, 2);
        let latex = format_table(&result, TableStyle::Latex, 2);
        prop_assert_eq!(numbers(&text), numbers(&latex));
        prop_assert_eq!(numbers(&text).len(), 6);
    }

    #[test]
    fn training_nodes_never_affect_auc(n in 6usize..60, seed in any::<u64>(), extreme in prop::sample::select(vec![-1e9, 0.0, 1e9])) {
        let g = random_graph(n, 0.1, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes: Vec<usize> = (0..n).collect();
        nodes.shuffle(&mut rng);
        let training = nodes[..2].to_vec();
        let positives = nodes[2..4].to_vec();
        let scores: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let mut tampered = scores.clone();
        for &u in &training {
            tampered[u] = extreme;
        }
        let auc = Auc::new(positives, training);
        let a = auc.evaluate(&GraphSignal::new(g.clone(), scores).unwrap()).unwrap();
        let b = auc.evaluate(&GraphSignal::new(g.clone(), tampered).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn spmv_matches_dense((g, seed) in graph_strategy(10), renorm in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..g.node_count()).map(|_| rng.random_range(-1.0..1.0)).collect();
        for mode in [NormalizationMode::Symmetric, NormalizationMode::Column, NormalizationMode::None] {
            let adj = normalize_adjacency(&g, mode, renorm);
            let dense = adj.matrix().to_dense();
            prop_assert!(sup_diff(&adj.spmv(&x).unwrap(), &matvec(&dense, &x)) <= 1e-12);
        }
        // and against an operator assembled here from the edge list
        if !renorm {
            let oracle = dense_symmetric(&g);
            let adj = normalize_adjacency(&g, NormalizationMode::Symmetric, false);
            prop_assert!(sup_diff(&adj.spmv(&x).unwrap(), &matvec(&oracle, &x)) <= 1e-12);
        }
    }

    #[test]
    fn symmetric_operator_is_its_transpose((g, _) in graph_strategy(30), renorm in any::<bool>()) {
        let adj = normalize_adjacency(&g, NormalizationMode::Symmetric, renorm);
        prop_assert_eq!(adj.matrix().to_dense(), adj.matrix().transpose().to_dense());
    }

    #[test]
    fn column_mode_columns_sum_to_one((g, _) in graph_strategy(30), renorm in any::<bool>()) {
        let dense = normalize_adjacency(&g, NormalizationMode::Column, renorm).matrix().to_dense();
        let n = g.node_count();
        for v in 0..n {
            let sum: f64 = dense.iter().map(|row| row[v]).sum();
            let isolated = g.neighbors(v).is_empty() && !renorm;
            if isolated {
                prop_assert_eq!(sum, 0.0);
            } else {
                prop_assert!((sum - 1.0).abs() <= 1e-12, "column {v} sums to {sum}");
            }
        }
    }

    #[test]
    fn cache_holds_one_entry_per_graph((g, _) in graph_strategy(15), requests in 1usize..8) {
        let cached = Preprocessor::default().assume_immutability(true);
        let uncached = Preprocessor::default();
        for _ in 0..requests {
            cached.get(&g);
            uncached.get(&g);
        }
        prop_assert_eq!(cached.computations(), 1);
        prop_assert_eq!(cached.cached_graphs(), 1);
        prop_assert_eq!(uncached.computations(), requests);
        prop_assert_eq!(uncached.cached_graphs(), 0);
    }

    #[test]
    fn pagerank_residual_is_small((g, seed) in graph_strategy(25), alpha in 0.05f64..0.95) {
        let tol = 1e-9;
        let conv = ConvergenceManager::default().with_error_norm(ErrorNorm::Supremum);
        let r = PageRank::new(alpha).unwrap().with_convergence(conv)
            .rank(&g, &GraphSignal::new(g.clone(), personalization(g.node_count(), seed)).unwrap())
            .unwrap();
        let p_hat = scaled_to_sum_one(&personalization(g.node_count(), seed));
        let ar = matvec(&dense_symmetric(&g), r.values());
        let residual = r.values().iter().zip(&ar).zip(&p_hat)
            .map(|((r, ar), p)| (r - alpha * ar - (1.0 - alpha) * p).abs())
            .fold(0.0, f64::max);
        prop_assert!(residual < 10.0 * tol, "residual {residual}");
    }

    #[test]
    fn column_pagerank_keeps_mass(n in 2usize..25, seed in any::<u64>()) {
        // a spanning path guarantees no isolated nodes
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        for u in 0..n {
            for v in u + 2..n {
                if rng.random::<f64>() < 0.2 {
                    edges.push((u, v));
                }
            }
        }
        let g = Arc::new(Graph::from_index_edges(n, &edges, false).unwrap());
        let pre = Arc::new(Preprocessor::new(NormalizationMode::Column));
        let r = PageRank::new(0.85).unwrap().with_preprocessor(pre)
            .rank(&g, &GraphSignal::new(g.clone(), personalization(n, seed)).unwrap())
            .unwrap();
        prop_assert!((r.sum() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn heat_kernel_matches_matrix_exponential((g, seed) in graph_strategy(20), t in 0.5f64..6.0) {
        let p = personalization(g.node_count(), seed);
        let r = HeatKernel::new(t).unwrap().rank(&g, &GraphSignal::new(g.clone(), p.clone()).unwrap()).unwrap();
        prop_assert!(l1_diff(r.values(), &heat_kernel_oracle(&g, t, &p)) <= 1e-6);
    }

    #[test]
    fn auc_matches_brute_force(
        labels in prop::collection::vec(any::<bool>(), 2..50),
        levels in 1u32..20,
        seed in any::<u64>(),
    ) {
        prop_assume!(labels.iter().any(|&l| l) && labels.iter().any(|&l| !l));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // few distinct levels force ties
        let scores: Vec<f64> = labels.iter().map(|_| rng.random_range(0..levels) as f64 / levels as f64).collect();
        let fast = auc_from_labels(&labels, &scores).unwrap();
        prop_assert!((fast - brute_auc(&labels, &scores)).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&fast));
        // strictly increasing transform
        let warped: Vec<f64> = scores.iter().map(|s| (3.0 * s).exp() - 7.0).collect();
        prop_assert!((auc_from_labels(&labels, &warped).unwrap() - fast).abs() < 1e-12);
    }

    #[test]
    fn auc_of_negated_scores_complements(labels in prop::collection::vec(any::<bool>(), 2..50), seed in any::<u64>()) {
        prop_assume!(labels.iter().any(|&l| l) && labels.iter().any(|&l| !l));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // distinct with probability one
        let scores: Vec<f64> = labels.iter().map(|_| rng.random()).collect();
        let negated: Vec<f64> = scores.iter().map(|s| -s).collect();
        let sum = auc_from_labels(&labels, &scores).unwrap() + auc_from_labels(&labels, &negated).unwrap();
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kl_is_nonnegative_and_zero_on_equal(n in 2usize..40, seed in any::<u64>(), c in 0.1f64..10.0) {
        let g = random_graph(n, 0.1, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
        let scores: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 1e-3).collect();
        let kl = KlDivergence::new(GraphSignal::new(g.clone(), target.clone()).unwrap(), vec![]);
        prop_assert!(kl.evaluate(&GraphSignal::new(g.clone(), scores).unwrap()).unwrap() >= 0.0);
        let same: Vec<f64> = target.iter().map(|v| c * v).collect();
        prop_assert!(kl.evaluate(&GraphSignal::new(g.clone(), same).unwrap()).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn conductance_is_one_for_a_lone_node((g, _) in graph_strategy(25)) {
        let total: usize = (0..g.node_count()).map(|u| g.neighbors(u).len()).sum();
        let u = (0..g.node_count()).find(|&u| {
            let d = g.neighbors(u).len();
            d > 0 && 2 * d <= total
        });
        prop_assume!(u.is_some());
        prop_assert_eq!(conductance(&g, &[u.unwrap()]).unwrap(), 1.0);
    }

    #[test]
    fn sweep_scales_with_base_and_keeps_order(k in 2usize..5, n in 6usize..20, c in 0.01f64..100.0, seed in any::<u64>()) {
        // circulant graph: every node has degree 2 * (k - 1)
        let k = k.min(n / 2);
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (1..k).map(move |s| (u, (u + s) % n))).collect();
        let g = Arc::new(Graph::from_index_edges(n, &edges, false).unwrap());
        let ppr = PageRank::new(0.85).unwrap();
        let r = ppr.rank(&g, &GraphSignal::new(g.clone(), personalization(n, seed)).unwrap()).unwrap();
        let u = ppr.rank(&g, &GraphSignal::ones(g.clone())).unwrap();
        let base = sweep_ratio(&r, &u).unwrap();
        let scaled = sweep_ratio(&r.map(|v| c * v).unwrap(), &u).unwrap();
        for (a, b) in base.values().iter().zip(scaled.values()) {
            prop_assert!((c * a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
        // uniform reference on a regular graph is constant, so order is kept
        let (r, base) = (r.values(), base.values());
        for i in 0..n {
            for j in 0..n {
                if r[i] > r[j] + 1e-9 {
                    prop_assert!(base[i] > base[j], "nodes {i} and {j} swapped");
                }
            }
        }
    }

    #[test]
    fn max_normalization_stays_in_unit_interval(values in prop::collection::vec(0.0f64..1e6, 1..30)) {
        let g = Arc::new(Graph::from_index_edges(values.len(), &[], false).unwrap());
        let out = normalize_scores(&GraphSignal::new(g, values.clone()).unwrap(), NormalizeMethod::Max).unwrap();
        prop_assert!(out.values().iter().all(|v| (0.0..=1.0).contains(v)));
        if values.iter().any(|&v| v > 0.0) {
            prop_assert_eq!(out.max(), 1.0);
        }
    }

    #[test]
    fn graph_construction_invariants(lines in prop::collection::vec((0u8..12, 0u8..12), 1..40), directed in any::<bool>()) {
        let lines: Vec<String> = lines.iter().filter(|(u, v)| u != v).map(|(u, v)| format!("n{u} n{v}")).collect();
        prop_assume!(!lines.is_empty());
        let g = Graph::from_edge_list(&lines, directed).unwrap();
        let ids: HashSet<&String> = g.node_ids().iter().collect();
        prop_assert_eq!(ids.len(), g.node_count());
        for (i, id) in g.node_ids().iter().enumerate() {
            prop_assert_eq!(g.index_of(id), Some(i));
        }
        let unique: HashSet<(usize, usize)> = g.edges().iter().map(|&(u, v)| {
            if directed { (u, v) } else { (u.min(v), u.max(v)) }
        }).collect();
        prop_assert_eq!(unique.len(), g.edge_count());
        for u in 0..g.node_count() {
            prop_assert!(!g.has_edge(u, u));
            if !directed {
                for &v in g.neighbors(u) {
                    prop_assert!(g.neighbors(v).contains(&u));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tuner_is_bounded_monotone_and_deterministic(seed in any::<u64>()) {
        let (g, blocks) = sbm(&[12, 12], 0.4, 0.05, seed);
        let p = GraphSignal::indicator(g.clone(), &blocks[0][..6]).unwrap();
        let tuner = default_tuner(Arc::new(Preprocessor::default().assume_immutability(true)));
        let (scores, report) = tuner.tune(&g, &p).unwrap();
        // 10 rounds x 2 coordinates x 5 divisions
        prop_assert!(report.evaluations <= 100);
        prop_assert!(report.trace.windows(2).all(|w| w[1] >= w[0]));
        let (again, report_again) = tuner.tune(&g, &p).unwrap();
        prop_assert_eq!(&report, &report_again);
        prop_assert_eq!(scores.values(), again.values());
    }
}
