//! C ABI for noderank.
//!
//! Graphs, preprocessors and algorithms cross the boundary as opaque
//! pointers created by `nr_*_new`/`nr_*_parse` style constructors and
//! released with the matching `nr_*_free`. Every fallible call returns an
//! [`NrStatus`]; on failure a message for the calling thread is available
//! from [`nr_last_error_message`].
//!
//! Callers allocate all output buffers. Scores are written in node index
//! order, which is the order of first appearance in the edge list.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use noderank::filters::ConvergenceManager;
use noderank::measures::auc_from_labels;
use noderank::alg_spec::AlgorithmSpec;
use noderank::{
    DenseBlock, Error, Graph, GraphFilter, GraphSignal, NormalizationMode, Preprocessor, SharedAlgorithm,
};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    DimensionMismatch = 5,
    NonConvergence = 6,
    Numerical = 7,
    Io = 8,
    Unsupported = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrNormalization {
    Symmetric = 0,
    Column = 1,
    None = 2,
}

impl From<NrNormalization> for NormalizationMode {
    fn from(mode: NrNormalization) -> Self {
        match mode {
            NrNormalization::Symmetric => NormalizationMode::Symmetric,
            NrNormalization::Column => NormalizationMode::Column,
            NrNormalization::None => NormalizationMode::None,
        }
    }
}

/// An immutable graph.
pub struct NrGraph {
    graph: Arc<Graph>,
}

/// A normalization cache that algorithms can share.
pub struct NrPreprocessor {
    preprocessor: Arc<Preprocessor>,
}

/// A ranking algorithm. Bare filters additionally support
/// [`nr_propagate`].
pub struct NrAlgorithm {
    algorithm: SharedAlgorithm,
    filter: Option<Arc<dyn GraphFilter>>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(err: &Error) -> NrStatus {
    match err {
        Error::Parse { .. } | Error::SelfLoop { .. } => NrStatus::Parse,
        Error::DimensionMismatch { .. } | Error::GraphMismatch => NrStatus::DimensionMismatch,
        Error::NonConvergence { .. } => NrStatus::NonConvergence,
        Error::NonFinite | Error::AllCandidatesFailed => NrStatus::Numerical,
        Error::Io { .. } | Error::Dataset(_) => NrStatus::Io,
        _ => NrStatus::InvalidArgument,
    }
}

struct Failure(NrStatus, String);

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure(status_of(&err), err.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NrStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NrStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NrStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {message}"));
            NrStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(NrStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn slice_mut<'a, T>(data: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(data, len))
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn convergence(tol: f64, max_iters: usize) -> Result<ConvergenceManager, Failure> {
    let mut manager = ConvergenceManager::default();
    if tol > 0.0 {
        manager = manager.with_tol(tol)?;
    }
    if max_iters > 0 {
        manager = manager.with_max_iters(max_iters)?;
    }
    Ok(manager)
}

/// Message describing the last failed call on this thread, or null.
/// The pointer stays valid until the next `nr_*` call on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from edge-list text: one `u v` pair per line, `#`
/// comments allowed.
///
/// # Safety
/// `edges` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_from_edge_list(edges: *const c_char, directed: bool, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| {
        let edges = text(edges, "edges")?;
        let graph = Graph::from_edge_list(edges.lines(), directed)?;
        write_out(out, NrGraph { graph: Arc::new(graph) }, "out")
    })
}

/// Reads an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_read(path: *const c_char, directed: bool, out: *mut *mut NrGraph) -> NrStatus {
    guard(|| {
        let path = text(path, "path")?;
        let graph = Graph::read_edge_list(path, directed)?;
        write_out(out, NrGraph { graph: Arc::new(graph) }, "out")
    })
}

/// Number of nodes, or 0 for a null graph.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_count(graph: *const NrGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.node_count())
}

/// Number of edges, or 0 for a null graph.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_edge_count(graph: *const NrGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Looks up the index of a node id.
///
/// # Safety
/// `graph` must be a live handle, `id` a NUL-terminated string and
/// `index` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_index(graph: *const NrGraph, id: *const c_char, index: *mut usize) -> NrStatus {
    guard(|| {
        let graph = reference(graph, "graph")?;
        let id = text(id, "id")?;
        if index.is_null() {
            return Err(null("index"));
        }
        *index = graph.graph.require_index(id)?;
        Ok(())
    })
}

/// Copies the id of node `index` into `buffer` with a trailing NUL. The
/// full length without the NUL is stored in `needed`, so a too-small
/// buffer can be retried.
///
/// # Safety
/// `graph` must be a live handle, `buffer` must hold `capacity` bytes and
/// `needed` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_node_id(
    graph: *const NrGraph,
    index: usize,
    buffer: *mut c_char,
    capacity: usize,
    needed: *mut usize,
) -> NrStatus {
    guard(|| {
        let graph = reference(graph, "graph")?;
        if index >= graph.graph.node_count() {
            return Err(Failure(NrStatus::InvalidArgument, format!("node index {index} out of range")));
        }
        let id = graph.graph.node_id(index);
        if !needed.is_null() {
            *needed = id.len();
        }
        if capacity < id.len() + 1 {
            return Err(Failure(
                NrStatus::InvalidArgument,
                format!("buffer of {capacity} bytes is too small for {} bytes", id.len() + 1),
            ));
        }
        let out = slice_mut(buffer.cast::<u8>(), capacity, "buffer")?;
        out[..id.len()].copy_from_slice(id.as_bytes());
        out[id.len()] = 0;
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_graph_free(graph: *mut NrGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Creates a preprocessor. Graph handles are immutable, so results are
/// cached per graph.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nr_preprocessor_new(
    mode: NrNormalization,
    renormalize: bool,
    out: *mut *mut NrPreprocessor,
) -> NrStatus {
    guard(|| {
        let preprocessor = Preprocessor::new(mode.into())
            .renormalize(renormalize)
            .assume_immutability(true)
            .shared();
        write_out(out, NrPreprocessor { preprocessor }, "out")
    })
}

/// How many normalizations the preprocessor has computed.
///
/// # Safety
/// `preprocessor` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_preprocessor_computations(preprocessor: *const NrPreprocessor) -> usize {
    preprocessor.as_ref().map_or(0, |p| p.preprocessor.computations())
}

/// # Safety
/// `preprocessor` must be null or a handle not yet freed. Algorithms built
/// from it stay usable.
#[no_mangle]
pub unsafe extern "C" fn nr_preprocessor_free(preprocessor: *mut NrPreprocessor) {
    if !preprocessor.is_null() {
        drop(Box::from_raw(preprocessor));
    }
}

/// Builds an algorithm from a description such as `ppr:0.85`, `hk:3`,
/// `gf:0.5,0.3,0.2`, `tuned` or `ppr:0.85+sweep`. A null preprocessor
/// gives the algorithm its own symmetric one. `tol <= 0` and
/// `max_iters == 0` keep the defaults.
///
/// # Safety
/// `spec` must be a NUL-terminated string, `preprocessor` null or live and
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn nr_algorithm_parse(
    spec: *const c_char,
    preprocessor: *const NrPreprocessor,
    tol: f64,
    max_iters: usize,
    out: *mut *mut NrAlgorithm,
) -> NrStatus {
    guard(|| {
        let spec: AlgorithmSpec = text(spec, "spec")?.parse()?;
        let preprocessor = match preprocessor.as_ref() {
            Some(p) => p.preprocessor.clone(),
            None => Preprocessor::default().assume_immutability(true).shared(),
        };
        let conv = convergence(tol, max_iters)?;
        let filter = spec.build_filter(&preprocessor, conv)?;
        let algorithm = match &filter {
            Some(f) => f.clone() as SharedAlgorithm,
            None => spec.build(&preprocessor, conv)?,
        };
        write_out(out, NrAlgorithm { algorithm, filter }, "out")
    })
}

/// # Safety
/// `algorithm` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nr_algorithm_free(algorithm: *mut NrAlgorithm) {
    if !algorithm.is_null() {
        drop(Box::from_raw(algorithm));
    }
}

/// Whether [`nr_propagate`] is available for this algorithm.
///
/// # Safety
/// `algorithm` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_algorithm_is_filter(algorithm: *const NrAlgorithm) -> bool {
    algorithm.as_ref().is_some_and(|a| a.filter.is_some())
}

/// Ranks nodes from a personalization of `len` values. `len` must equal
/// the node count and `scores` must hold as many values.
///
/// # Safety
/// Handles must be live and both buffers must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nr_rank(
    algorithm: *const NrAlgorithm,
    graph: *const NrGraph,
    personalization: *const f64,
    len: usize,
    scores: *mut f64,
) -> NrStatus {
    guard(|| {
        let algorithm = reference(algorithm, "algorithm")?;
        let graph = reference(graph, "graph")?;
        let values = slice(personalization, len, "personalization")?.to_vec();
        let signal = GraphSignal::new(graph.graph.clone(), values)?;
        let ranked = algorithm.algorithm.rank(&graph.graph, &signal)?;
        slice_mut(scores, len, "scores")?.copy_from_slice(ranked.values());
        Ok(())
    })
}

/// Applies a bare filter to `cols` signals stored row-major as a
/// `rows x cols` block, without rescaling them.
///
/// # Safety
/// Handles must be live and both buffers must hold `rows * cols` doubles.
#[no_mangle]
pub unsafe extern "C" fn nr_propagate(
    algorithm: *const NrAlgorithm,
    graph: *const NrGraph,
    signals: *const f64,
    rows: usize,
    cols: usize,
    out: *mut f64,
) -> NrStatus {
    guard(|| {
        let algorithm = reference(algorithm, "algorithm")?;
        let graph = reference(graph, "graph")?;
        let filter = algorithm
            .filter
            .as_ref()
            .ok_or_else(|| Failure(NrStatus::Unsupported, "algorithm is not a bare filter".into()))?;
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Failure(NrStatus::InvalidArgument, "block size overflows".into()))?;
        let block = DenseBlock::from_row_major(rows, cols, slice(signals, len, "signals")?.to_vec())?;
        let result = filter.propagate(&graph.graph, &block)?;
        slice_mut(out, len, "out")?.copy_from_slice(result.data());
        Ok(())
    })
}

/// Area under the ROC curve of `scores` against 0/1 `labels`.
///
/// # Safety
/// Both buffers must hold `len` entries and `auc` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nr_auc(labels: *const u8, scores: *const f64, len: usize, auc: *mut f64) -> NrStatus {
    guard(|| {
        let labels: Vec<bool> = slice(labels, len, "labels")?.iter().map(|&l| l != 0).collect();
        let scores = slice(scores, len, "scores")?;
        if auc.is_null() {
            return Err(null("auc"));
        }
        *auc = auc_from_labels(&labels, scores)?;
        Ok(())
    })
}
