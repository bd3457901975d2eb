//! C ABI for occwalk.
//!
//! Graphs and multilayer networks are opaque handles created by `ow_*`
//! constructors and released with the matching `*_free`. Every fallible call
//! returns an [`OwStatus`]; on failure [`ow_last_error_message`] describes the
//! error for the calling thread. Occupation results are written into
//! caller-owned `double` buffers indexed like the graph's nodes.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use occwalk::analysis::compare_rankings;
use occwalk::classical::{euler_stationary, stationary_occupation, GeneratorKind, GeneratorMatrix, IntegrationConfig};
use occwalk::generators::{barabasi_albert, BAConfig};
use occwalk::io::{self, InputKind, Network};
use occwalk::quantum::{initial_state, Psi0Mode, QuantumWalk};
use occwalk::{Error, FlattenMode, Graph, MultilayerNetwork, OccupationKind, OccupationVector, ProbabilityVector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    DuplicateEdge = 3,
    SelfLoop = 4,
    NonPositiveWeight = 5,
    EmptyLabel = 6,
    IsolatedNode = 7,
    DisconnectedGraph = 8,
    DimensionMismatch = 9,
    UnstableStep = 10,
    NormDrift = 11,
    EigensolverFailure = 12,
    UnknownNode = 13,
    DuplicateLayer = 14,
    InvalidConfig = 15,
    KTooLarge = 16,
    NodeSetMismatch = 17,
    ParseError = 18,
    IoError = 19,
    Panic = 20,
}

impl From<&Error> for OwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::DuplicateEdge(..) => OwStatus::DuplicateEdge,
            Error::SelfLoop(_) => OwStatus::SelfLoop,
            Error::NonPositiveWeight { .. } => OwStatus::NonPositiveWeight,
            Error::EmptyLabel => OwStatus::EmptyLabel,
            Error::IsolatedNode(_) => OwStatus::IsolatedNode,
            Error::DisconnectedGraph { .. } => OwStatus::DisconnectedGraph,
            Error::DimensionMismatch { .. } => OwStatus::DimensionMismatch,
            Error::UnstableStep(_) => OwStatus::UnstableStep,
            Error::NormDrift { .. } => OwStatus::NormDrift,
            Error::EigensolverFailure(_) => OwStatus::EigensolverFailure,
            Error::UnknownNode(_) => OwStatus::UnknownNode,
            Error::DuplicateLayer(_) => OwStatus::DuplicateLayer,
            Error::InvalidConfig(_) => OwStatus::InvalidConfig,
            Error::KTooLarge { .. } => OwStatus::KTooLarge,
            Error::NodeSetMismatch => OwStatus::NodeSetMismatch,
            Error::Parse { .. } => OwStatus::ParseError,
            Error::Io(_) => OwStatus::IoError,
        }
    }
}

/// Flattening rule for [`ow_multilayer_flatten`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwFlattenMode {
    Binary = 0,
    Sum = 1,
}

/// Generator for [`ow_classical_euler`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OwGenerator {
    /// `H_c = L D^{-1}`; stationary state proportional to degree.
    Normalized = 0,
    /// `H = gamma * L`; stationary state uniform.
    UnnormalizedRate = 1,
}

/// Opaque graph handle.
pub struct OwGraph {
    graph: Graph,
    labels: Vec<CString>,
}

impl OwGraph {
    fn new(graph: Graph) -> Box<Self> {
        let labels = graph
            .labels()
            .map(|l| CString::new(l).unwrap_or_else(|_| CString::new(l.replace('\0', "")).unwrap()))
            .collect();
        Box::new(Self { graph, labels })
    }
}

/// Opaque multilayer network handle.
pub struct OwMultilayer {
    network: MultilayerNetwork,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Status(OwStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn null() -> Fail {
    Fail::Status(OwStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, translating errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            OwStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&e.to_string());
            OwStatus::from(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            OwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Status(OwStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn graph_ref<'a>(g: *const OwGraph) -> Result<&'a OwGraph, Fail> {
    g.as_ref().ok_or_else(null)
}

unsafe fn out_buffer<'a>(out: *mut f64, len: usize, needed: usize) -> Result<&'a mut [f64], Fail> {
    if out.is_null() {
        return Err(null());
    }
    if len != needed {
        return Err(Fail::Lib(Error::DimensionMismatch {
            expected: needed,
            found: len,
        }));
    }
    Ok(std::slice::from_raw_parts_mut(out, len))
}

unsafe fn emit_graph(out: *mut *mut OwGraph, g: Graph) -> Result<(), Fail> {
    *out = Box::into_raw(OwGraph::new(g));
    Ok(())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn ow_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next `ow_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ow_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a graph from parallel arrays of UTF-8 labels. `weights` may be NULL
/// (all edges weight 1).
#[no_mangle]
pub unsafe extern "C" fn ow_graph_from_edges(
    sources: *const *const c_char,
    targets: *const *const c_char,
    weights: *const f64,
    len: usize,
    out: *mut *mut OwGraph,
) -> OwStatus {
    guard(|| {
        if out.is_null() || (len > 0 && (sources.is_null() || targets.is_null())) {
            return Err(null());
        }
        *out = ptr::null_mut();
        let mut g = Graph::new();
        for i in 0..len {
            let a = str_arg(*sources.add(i))?;
            let b = str_arg(*targets.add(i))?;
            let w = if weights.is_null() { 1.0 } else { *weights.add(i) };
            g.add_edge(a, b, w)?;
        }
        emit_graph(out, g)
    })
}

/// Loads an edge-list CSV (`source,target[,weight]`).
#[no_mangle]
pub unsafe extern "C" fn ow_graph_load_csv(path: *const c_char, out: *mut *mut OwGraph) -> OwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let path = str_arg(path)?;
        match io::ingest(Path::new(path), InputKind::EdgeList)?.0 {
            Network::Single(g) => emit_graph(out, g),
            Network::Multilayer(_) => unreachable!("edge-list ingest"),
        }
    })
}

/// Seeded Barabási–Albert graph with nodes labelled `0..n`.
#[no_mangle]
pub unsafe extern "C" fn ow_barabasi_albert(n: usize, m: usize, seed: u64, out: *mut *mut OwGraph) -> OwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        emit_graph(out, barabasi_albert(&BAConfig::new(n, m, seed)?)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn ow_graph_free(g: *mut OwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ow_graph_node_count(g: *const OwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.node_count())
}

#[no_mangle]
pub unsafe extern "C" fn ow_graph_edge_count(g: *const OwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Label of node `index`, owned by the graph handle; NULL when out of range.
#[no_mangle]
pub unsafe extern "C" fn ow_graph_node_label(g: *const OwGraph, index: usize) -> *const c_char {
    g.as_ref()
        .and_then(|g| g.labels.get(index))
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// Closed-form classical occupation `k_i / Σ k`. `len` must equal the node count.
#[no_mangle]
pub unsafe extern "C" fn ow_classical_occupation(g: *const OwGraph, out: *mut f64, len: usize) -> OwStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let buf = out_buffer(out, len, g.graph.node_count())?;
        buf.copy_from_slice(stationary_occupation(&g.graph)?.values());
        Ok(())
    })
}

/// Euler integration of a classical walk from the uniform distribution.
/// A non-positive `dt` selects `0.1 / max_i H_ii`. `converged` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ow_classical_euler(
    g: *const OwGraph,
    generator: OwGenerator,
    gamma: f64,
    dt: f64,
    horizon: f64,
    tolerance: f64,
    out: *mut f64,
    len: usize,
    converged: *mut bool,
) -> OwStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let buf = out_buffer(out, len, g.graph.node_count())?;
        let kind = match generator {
            OwGenerator::Normalized => GeneratorKind::Normalized,
            OwGenerator::UnnormalizedRate => GeneratorKind::UnnormalizedRate,
        };
        let h = GeneratorMatrix::new(&g.graph, kind, gamma)?;
        let dt = if dt > 0.0 { dt } else { IntegrationConfig::classical_default(&h).dt };
        let cfg = IntegrationConfig::new(dt, horizon, tolerance)?;
        let run = euler_stationary(&h, &ProbabilityVector::uniform(&g.graph)?, &cfg)?;
        buf.copy_from_slice(run.state.values());
        if !converged.is_null() {
            *converged = run.converged;
        }
        Ok(())
    })
}

unsafe fn psi0_mode(node: *const c_char) -> Result<Psi0Mode, Fail> {
    if node.is_null() {
        Ok(Psi0Mode::Uniform)
    } else {
        Ok(Psi0Mode::Localized(str_arg(node)?.to_owned()))
    }
}

/// Exact long-time-mean quantum occupation. `psi0_node` NULL means the
/// uniform superposition, otherwise the walk starts on that node.
#[no_mangle]
pub unsafe extern "C" fn ow_quantum_occupation(
    g: *const OwGraph,
    psi0_node: *const c_char,
    out: *mut f64,
    len: usize,
) -> OwStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let buf = out_buffer(out, len, g.graph.node_count())?;
        let psi0 = initial_state(&g.graph, &psi0_mode(psi0_node)?)?;
        let q = QuantumWalk::new(&g.graph)?.long_time_mean(&psi0)?;
        buf.copy_from_slice(q.values());
        Ok(())
    })
}

/// Quantum occupation averaged over a leapfrog trajectory of step `dt` up to `horizon`.
#[no_mangle]
pub unsafe extern "C" fn ow_quantum_occupation_leapfrog(
    g: *const OwGraph,
    psi0_node: *const c_char,
    dt: f64,
    horizon: f64,
    out: *mut f64,
    len: usize,
) -> OwStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let buf = out_buffer(out, len, g.graph.node_count())?;
        let psi0 = initial_state(&g.graph, &psi0_mode(psi0_node)?)?;
        let cfg = IntegrationConfig::new(dt, horizon, IntegrationConfig::DEFAULT_TOLERANCE)?;
        let q = QuantumWalk::new(&g.graph)?.long_time_mean_numeric(&psi0, &cfg)?;
        buf.copy_from_slice(q.values());
        Ok(())
    })
}

/// Top-`k` overlap and Spearman correlation of two occupation vectors over
/// the nodes of `g`. Either output pointer may be NULL.
#[no_mangle]
pub unsafe extern "C" fn ow_compare_rankings(
    g: *const OwGraph,
    a: *const f64,
    b: *const f64,
    len: usize,
    k: usize,
    overlap_at_k: *mut f64,
    spearman_rho: *mut f64,
) -> OwStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if a.is_null() || b.is_null() {
            return Err(null());
        }
        let n = g.graph.node_count();
        if len != n {
            return Err(Fail::Lib(Error::DimensionMismatch { expected: n, found: len }));
        }
        let labels: occwalk::occupation::Labels = g.graph.labels().map(str::to_owned).collect();
        let mk = |p: *const f64| {
            OccupationVector::new(
                std::slice::from_raw_parts(p, len).to_vec(),
                labels.clone(),
                OccupationKind::Quantum,
            )
        };
        let c = compare_rankings(&mk(a)?, &mk(b)?, k)?;
        if !overlap_at_k.is_null() {
            *overlap_at_k = c.overlap_at_k;
        }
        if !spearman_rho.is_null() {
            *spearman_rho = c.spearman_rho;
        }
        Ok(())
    })
}

/// Loads a multilayer CSV (`layer,source,target[,weight]`).
#[no_mangle]
pub unsafe extern "C" fn ow_multilayer_load_csv(path: *const c_char, out: *mut *mut OwMultilayer) -> OwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let path = str_arg(path)?;
        match io::ingest(Path::new(path), InputKind::Multilayer)?.0 {
            Network::Multilayer(network) => {
                *out = Box::into_raw(Box::new(OwMultilayer { network }));
                Ok(())
            }
            Network::Single(_) => unreachable!("multilayer ingest"),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn ow_multilayer_free(m: *mut OwMultilayer) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

#[no_mangle]
pub unsafe extern "C" fn ow_multilayer_layer_count(m: *const OwMultilayer) -> usize {
    m.as_ref().map_or(0, |m| m.network.layers().len())
}

#[no_mangle]
pub unsafe extern "C" fn ow_multilayer_actor_count(m: *const OwMultilayer) -> usize {
    m.as_ref().map_or(0, |m| m.network.actors().len())
}

/// Flattens into a new graph handle owned by the caller.
#[no_mangle]
pub unsafe extern "C" fn ow_multilayer_flatten(
    m: *const OwMultilayer,
    mode: OwFlattenMode,
    out: *mut *mut OwGraph,
) -> OwStatus {
    guard(|| {
        let m = m.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let mode = match mode {
            OwFlattenMode::Binary => FlattenMode::Binary,
            OwFlattenMode::Sum => FlattenMode::Sum,
        };
        emit_graph(out, m.network.flatten(mode))
    })
}
