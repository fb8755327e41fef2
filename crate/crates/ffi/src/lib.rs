//! C interface to `stab-core`.
//!
//! Graphs are opaque `StabGraph` handles released with `stab_graph_free`.
//! Every fallible call returns a `StabStatus`; on failure a message is
//! available from `stab_last_error` on the same thread. Strings handed out
//! by the library are released with `stab_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use stab_core::io::parse_graph_or_spec;
use stab_core::lab::{conditions, Flag};
use stab_core::stability::classify;
use stab_core::{product, stability_status, Budget, CirculantSpec, Error, Graph, ProductKind};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabVerdict {
    Stable = 0,
    TriviallyUnstable = 1,
    NontriviallyUnstable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabProductKind {
    Direct = 0,
    Cartesian = 1,
    Strong = 2,
    SemiStrong = 3,
    Lexicographic = 4,
}

/// Opaque graph handle.
pub struct StabGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: StabStatus, msg: &str) -> StabStatus {
    set_error(msg);
    status
}

fn from_core(e: Error) -> StabStatus {
    let status = match e {
        Error::SearchBudgetExceeded(_) => StabStatus::BudgetExceeded,
        Error::Io(_) | Error::Unsound(_) => StabStatus::Internal,
        _ => StabStatus::InvalidInput,
    };
    fail(status, &e.to_string())
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> StabStatus) -> StabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(StabStatus::Internal, "internal panic"),
    }
}

fn budget(nodes: u64) -> Budget {
    if nodes == 0 {
        Budget::from_env()
    } else {
        Budget(nodes)
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, StabStatus> {
    if s.is_null() {
        return Err(fail(StabStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(StabStatus::InvalidInput, "string is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> StabStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            StabStatus::Ok
        }
        Err(_) => fail(StabStatus::Internal, "output contains a nul byte"),
    }
}

/// Message for the last failure on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses graph text (order line, then `u v` lines) or a `c:<n>:<s,...>`
/// circulant into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_parse(text: *const c_char, out: *mut *mut StabGraph) -> StabStatus {
    guard(|| {
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph_or_spec(text) {
            Ok((g, _)) => {
                *out = Box::into_raw(Box::new(StabGraph(g)));
                StabStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` values (or be null when
/// `edge_count` is 0) and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_new(
    order: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut StabGraph,
) -> StabStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && edge_count > 0) {
            return fail(StabStatus::NullPointer, "null pointer");
        }
        let flat = if edge_count == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * edge_count) };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|c| (c[0], c[1])).collect();
        match Graph::new(order, &pairs) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(StabGraph(g)));
                StabStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_free(graph: *mut StabGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_order(graph: *const StabGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.order())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_edge_count(graph: *const StabGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Product of two graphs as a new handle.
///
/// # Safety
/// `left` and `right` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stab_graph_product(
    left: *const StabGraph,
    right: *const StabGraph,
    kind: StabProductKind,
    out: *mut *mut StabGraph,
) -> StabStatus {
    guard(|| {
        let (Some(l), Some(r)) = (left.as_ref(), right.as_ref()) else {
            return fail(StabStatus::NullPointer, "null graph");
        };
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let kind = match kind {
            StabProductKind::Direct => ProductKind::Direct,
            StabProductKind::Cartesian => ProductKind::Cartesian,
            StabProductKind::Strong => ProductKind::Strong,
            StabProductKind::SemiStrong => ProductKind::SemiStrong,
            StabProductKind::Lexicographic => ProductKind::Lexicographic,
        };
        *out = Box::into_raw(Box::new(StabGraph(product(&l.0, &r.0, kind).graph)));
        StabStatus::Ok
    })
}

/// Stability verdict. `budget_nodes` caps the search, 0 for the default.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stab_stability(graph: *const StabGraph, budget_nodes: u64, out: *mut StabVerdict) -> StabStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else { return fail(StabStatus::NullPointer, "null graph") };
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        match stability_status(&g.0, budget(budget_nodes)) {
            Ok(v) => {
                *out = match v.verdict {
                    stab_core::Verdict::Stable => StabVerdict::Stable,
                    stab_core::Verdict::TriviallyUnstable(_) => StabVerdict::TriviallyUnstable,
                    stab_core::Verdict::NontriviallyUnstable => StabVerdict::NontriviallyUnstable,
                };
                StabStatus::Ok
            }
            Err(e) => from_core(e),
        }
    })
}

/// Verdict, group orders and TF-morphism witness as a JSON object.
///
/// # Safety
/// `graph` must be a live handle and `out_json` a valid pointer; the
/// string must be released with `stab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn stab_classify_json(
    graph: *const StabGraph,
    budget_nodes: u64,
    out_json: *mut *mut c_char,
) -> StabStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else { return fail(StabStatus::NullPointer, "null graph") };
        if out_json.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        match classify(&g.0, budget(budget_nodes)) {
            Ok(c) => write_string(out_json, serde_json::to_string(&c).expect("serializable")),
            Err(e) => from_core(e),
        }
    })
}

/// Every circulant instability condition for a `c:<n>:<s,...>` spec, as
/// JSON. Returns `BudgetExceeded` (with the JSON still written) when some
/// search was cut short.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out_json` a valid pointer;
/// the string must be released with `stab_string_free`.
#[no_mangle]
pub unsafe extern "C" fn stab_conditions_json(
    spec: *const c_char,
    budget_nodes: u64,
    out_json: *mut *mut c_char,
) -> StabStatus {
    guard(|| {
        if out_json.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(spec) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let spec: CirculantSpec = match text.parse() {
            Ok(s) => s,
            Err(e) => return from_core(e),
        };
        let report = conditions(&spec, budget(budget_nodes));
        let status = write_string(out_json, serde_json::to_string(&report).expect("serializable"));
        if status == StabStatus::Ok && report.summary().flags().contains(&Flag::Inconclusive) {
            return fail(StabStatus::BudgetExceeded, "some searches ran out of budget");
        }
        status
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
