//! Command-line front end. [`run`] does all the work so it can be driven
//! from tests without spawning a process.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 numerical failure,
//! 3 benchmark finished with failed cells.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::alg_spec::{parse_algorithm_list, AlgorithmSpec};
use crate::benchmarks::{
    benchmark_run, convert_snap, format_table, load_datasets_one_community, write_dataset, BenchmarkConfig,
    CommunitySelection, CommunitySource, TableStyle,
};
use crate::error::{Error, Result};
use crate::filters::ConvergenceManager;
use crate::graph::Graph;
use crate::measures::MeasureKind;
use crate::normalize::{NormalizationMode, Preprocessor};
use crate::signal::GraphSignal;
use crate::tuner::{uniform_filter_factory, ParameterTuner};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "noderank", version, about = "Graph-filter node ranking, tuning and benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank the nodes of one graph from a seed set.
    Rank(RankArgs),
    /// Run algorithms over community datasets and print a table.
    Benchmark(BenchmarkArgs),
    /// Tune a uniform-weight polynomial filter on one graph.
    Tune(TuneArgs),
    /// Convert SNAP edge and community files into a dataset directory.
    ConvertSnap(ConvertArgs),
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Adjacency normalization: symmetric, column or none.
    #[arg(long, default_value = "symmetric")]
    normalization: NormalizationMode,
    /// Add a self-loop to every node before normalizing.
    #[arg(long)]
    renormalize: bool,
}

impl GraphArgs {
    fn preprocessor(&self) -> Arc<Preprocessor> {
        Preprocessor::new(self.normalization)
            .renormalize(self.renormalize)
            .assume_immutability(true)
            .shared()
    }
}

#[derive(Debug, Args)]
struct RankArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    /// File with one seed node id per line.
    #[arg(long)]
    seeds: PathBuf,
    /// Algorithm, e.g. `ppr:0.85`, `hk:3`, `gf:1,0.5`, `tuned`, `ppr:0.85+sweep`.
    #[arg(long)]
    alg: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Convergence tolerance for iterative filters.
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration limit for iterative filters.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Only print the best `k` nodes.
    #[arg(long)]
    top: Option<usize>,
    #[arg(long)]
    directed: bool,
    #[command(flatten)]
    graph_args: GraphArgs,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    #[arg(long)]
    data_dir: PathBuf,
    /// Comma-separated dataset names.
    #[arg(long, value_delimiter = ',', required = true)]
    datasets: Vec<String>,
    /// Comma-separated algorithm specs; may be repeated.
    #[arg(long, required = true)]
    algs: Vec<String>,
    #[arg(long, default_value = "auc")]
    measure: MeasureKind,
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// text, latex or json.
    #[arg(long, default_value = "text")]
    format: TableStyle,
    #[arg(long, default_value_t = 2)]
    decimals: usize,
    /// `largest` or `min:<k>`.
    #[arg(long, default_value = "largest")]
    community: CommunitySelection,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[command(flatten)]
    graph_args: GraphArgs,
}

#[derive(Debug, Args)]
struct TuneArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    seeds: PathBuf,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5,5")]
    min_vals: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.99,20")]
    max_vals: Vec<f64>,
    #[arg(long, default_value = "auc")]
    measure: MeasureKind,
    #[arg(long, default_value_t = 0.005)]
    deviation_tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    directed: bool,
    #[command(flatten)]
    graph_args: GraphArgs,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// SNAP edge list (comments and self-loops allowed).
    #[arg(long)]
    edges: PathBuf,
    /// `node label` file; one community per label.
    #[arg(long, conflicts_with = "communities", required_unless_present = "communities")]
    labels: Option<PathBuf>,
    /// One community per line.
    #[arg(long)]
    communities: Option<PathBuf>,
    /// Output dataset directory.
    #[arg(long)]
    out: PathBuf,
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Rank(args) => rank(args),
        Command::Benchmark(args) => benchmark(args),
        Command::Tune(args) => tune(args),
        Command::ConvertSnap(args) => convert(args),
    };
    match outcome {
        Ok(output) => {
            if let Some(message) = &output.message {
                let _ = stderr.write_all(message.as_bytes());
            }
            if stdout.write_all(output.stdout.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            output.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

struct Output {
    stdout: String,
    message: Option<String>,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            message: None,
            code: EXIT_OK,
        }
    }
}

fn convergence(tol: Option<f64>, max_iters: Option<usize>) -> Result<ConvergenceManager> {
    let mut c = ConvergenceManager::default();
    if let Some(tol) = tol {
        c = c.with_tol(tol)?;
    }
    if let Some(max_iters) = max_iters {
        c = c.with_max_iters(max_iters)?;
    }
    Ok(c)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn read_seeds(graph: &Arc<Graph>, path: &Path) -> Result<GraphSignal> {
    let text = read_text(path)?;
    let mut nodes = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        nodes.push(graph.require_index(line)?);
    }
    if nodes.is_empty() {
        return Err(Error::InvalidParameter(format!("{}: no seeds", path.display())));
    }
    GraphSignal::indicator(graph.clone(), &nodes)
}

/// TSV lines sorted by descending score, ties by node id.
pub fn format_scores(scores: &GraphSignal, top: Option<usize>) -> String {
    let mut rows: Vec<(&str, f64)> = scores.iter().collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let take = top.unwrap_or(rows.len());
    let mut out = String::new();
    for (node, score) in rows.into_iter().take(take) {
        out.push_str(node);
        out.push('\t');
        out.push_str(&score.to_string());
        out.push('\n');
    }
    out
}

fn rank(args: RankArgs) -> Result<Output> {
    let spec: AlgorithmSpec = args.alg.parse()?;
    let algorithm = spec.build(&args.graph_args.preprocessor(), convergence(args.tol, args.max_iters)?)?;
    let graph = Arc::new(Graph::read_edge_list(&args.graph, args.directed)?);
    let seeds = read_seeds(&graph, &args.seeds)?;
    let scores = algorithm.rank(&graph, &seeds)?;
    let table = format_scores(&scores, args.top);
    match args.out {
        Some(path) => {
            fs::write(&path, table).map_err(|e| Error::io(&path, e))?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(table)),
    }
}

fn benchmark(args: BenchmarkArgs) -> Result<Output> {
    let pre = args.graph_args.preprocessor();
    let conv = convergence(args.tol, args.max_iters)?;
    let mut algorithms = indexmap::IndexMap::new();
    for list in &args.algs {
        for spec in parse_algorithm_list(list)? {
            let alg = spec.build(&pre, conv)?;
            if algorithms.insert(spec.text().to_string(), alg).is_some() {
                return Err(Error::NameCollision(spec.text().to_string()));
            }
        }
    }
    let config = BenchmarkConfig {
        fraction_of_training: args.fraction,
        seed: args.seed,
        measure: args.measure,
        community_selection: args.community,
    };
    let loader = load_datasets_one_community(&args.datasets, &args.data_dir, args.community);
    let result = benchmark_run(&algorithms, loader, &config)?;
    let table = format_table(&result, args.format, args.decimals);
    if result.is_complete() {
        return Ok(Output::ok(table));
    }
    let mut message = String::new();
    for f in &result.failures {
        message.push_str(&format!("failed: {} / {}: {}\n", f.dataset, f.algorithm, f.error));
    }
    Ok(Output {
        stdout: table,
        message: Some(message),
        code: EXIT_PARTIAL,
    })
}

#[derive(Serialize)]
struct TuneOutput {
    best_params: Vec<f64>,
    best_objective: f64,
    evaluations: usize,
    rounds: usize,
}

fn tune(args: TuneArgs) -> Result<Output> {
    if args.min_vals.len() != args.max_vals.len() {
        return Err(Error::InvalidParameter(format!(
            "box dimension mismatch: {} min values, {} max values",
            args.min_vals.len(),
            args.max_vals.len()
        )));
    }
    if args.min_vals.len() != 2 {
        return Err(Error::InvalidParameter(
            "the tuned filter family takes 2 parameters (weight, hops)".into(),
        ));
    }
    let factory = uniform_filter_factory(args.graph_args.preprocessor(), ConvergenceManager::default());
    let tuner = ParameterTuner::new(factory, args.min_vals, args.max_vals)?
        .with_integer_mask(vec![false, true])?
        .with_measure(Arc::new(args.measure))
        .with_deviation_tol(args.deviation_tol)?
        .with_seed(args.seed);
    let graph = Arc::new(Graph::read_edge_list(&args.graph, args.directed)?);
    let seeds = read_seeds(&graph, &args.seeds)?;
    let (_, report) = tuner.tune(&graph, &seeds)?;
    let out = TuneOutput {
        best_params: report.best_params,
        best_objective: report.best_objective,
        evaluations: report.evaluations,
        rounds: report.rounds,
    };
    let mut json = serde_json::to_string_pretty(&out).expect("tune output serializes");
    json.push('\n');
    Ok(Output::ok(json))
}

fn convert(args: ConvertArgs) -> Result<Output> {
    let edges = read_text(&args.edges)?;
    let communities = match (&args.labels, &args.communities) {
        (Some(path), _) | (None, Some(path)) => read_text(path)?,
        (None, None) => unreachable!("clap requires one community source"),
    };
    let source = if args.labels.is_some() {
        CommunitySource::Labels(&communities)
    } else {
        CommunitySource::Lines(&communities)
    };
    let converted = convert_snap(&edges, source)?;
    write_dataset(&args.out, &converted)?;
    let s = &converted.summary;
    Ok(Output {
        stdout: String::new(),
        message: Some(format!(
            "{}: {} nodes, {} edges, {} communities ({} self-loops, {} unknown members dropped)\n",
            args.out.display(),
            s.nodes,
            s.edges,
            s.communities,
            s.dropped_self_loops,
            s.dropped_members
        )),
        code: EXIT_OK,
    })
}
