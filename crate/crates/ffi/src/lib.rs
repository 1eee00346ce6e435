//! C ABI over the `middle_cube` library.
//!
//! Graphs live behind an opaque `McGraph` handle. Every fallible call
//! returns an `McStatus`; on failure `mc_last_error` describes the problem
//! for the calling thread. Strings handed out by the library must be
//! released with `mc_string_free`, graphs with `mc_graph_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use middle_cube::cli::{cmd_analyze, hamilton_outcome, load_target, parse_checks, Check, Target};
use middle_cube::doubles::{bipartite_double, extended_bipartite_double};
use middle_cube::families::FamilySpec;
use middle_cube::graph::Graph;
use middle_cube::hamilton::HamiltonStatus;
use middle_cube::spectral::integer_spectrum;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    GraphError = 4,
    ComputationError = 5,
    Panic = 6,
}

/// Search outcome reported by `mc_hamilton`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McHamiltonStatus {
    Found = 0,
    NotFoundWithinBudget = 1,
    ProvenNone = 2,
}

/// Opaque graph handle.
pub struct McGraph {
    target: Target,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(McStatus, String);

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> McStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            McStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(McStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(McStatus::InvalidUtf8, e.to_string()))
}

unsafe fn graph<'a>(g: *const McGraph) -> Result<&'a McGraph, Failure> {
    g.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(McStatus::ComputationError, e.to_string()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_graph(out: *mut *mut McGraph, target: Target) -> Result<(), Failure> {
    write_out(out, Box::into_raw(Box::new(McGraph { target })))
}

fn computation(e: impl ToString) -> Failure {
    Failure(McStatus::ComputationError, e.to_string())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library from this thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a family member from a spec such as `"middle-cube:3"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_from_spec(spec: *const c_char, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let text = read_str(spec)?;
        let spec: FamilySpec = text
            .parse()
            .map_err(|e: middle_cube::families::FamilyError| Failure(McStatus::InvalidArgument, e.to_string()))?;
        let graph = spec.build().map_err(|e| Failure(McStatus::InvalidArgument, e.to_string()))?;
        write_graph(
            out,
            Target {
                name: spec.to_string(),
                spec: Some(spec),
                graph,
            },
        )
    })
}

/// Parses edge-list text (`"n m"` header, then `"u v"` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_from_edge_list(text: *const c_char, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let graph = Graph::parse_edge_list(read_str(text)?).map_err(|e| Failure(McStatus::GraphError, e.to_string()))?;
        write_graph(
            out,
            Target {
                name: "edge-list".into(),
                spec: None,
                graph,
            },
        )
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_free(g: *mut McGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_order(g: *const McGraph, out: *mut usize) -> McStatus {
    guard(|| write_out(out, graph(g)?.target.graph.order()))
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_size(g: *const McGraph, out: *mut usize) -> McStatus {
    guard(|| write_out(out, graph(g)?.target.graph.size()))
}

/// Fails with `GraphError` on disconnected graphs.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_diameter(g: *const McGraph, out: *mut usize) -> McStatus {
    guard(|| {
        let d = graph(g)?
            .target
            .graph
            .diameter()
            .map_err(|e| Failure(McStatus::GraphError, e.to_string()))?;
        write_out(out, d)
    })
}

/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_is_bipartite(g: *const McGraph, out: *mut bool) -> McStatus {
    guard(|| write_out(out, graph(g)?.target.graph.is_bipartite()))
}

/// Bipartite double: vertex `i` and its copy `i + n`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_bipartite_double(g: *const McGraph, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let src = &graph(g)?.target;
        let graph = bipartite_double(&src.graph).graph;
        write_graph(
            out,
            Target {
                name: format!("double of {}", src.name),
                spec: None,
                graph,
            },
        )
    })
}

/// Bipartite double plus the matching `i -- i + n`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_extended_double(g: *const McGraph, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let src = &graph(g)?.target;
        let graph = extended_bipartite_double(&src.graph).graph;
        write_graph(
            out,
            Target {
                name: format!("extended double of {}", src.name),
                spec: None,
                graph,
            },
        )
    })
}

/// Edge-list text; free with `mc_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_edge_list(g: *const McGraph, out: *mut *mut c_char) -> McStatus {
    guard(|| write_string(out, graph(g)?.target.graph.to_edge_list()))
}

/// JSON with order, size, edges and optional labels; free with
/// `mc_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_json(g: *const McGraph, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let json = serde_json::to_string(&graph(g)?.target.graph.to_json()).map_err(computation)?;
        write_string(out, json)
    })
}

/// Exact integer spectrum as JSON; free with `mc_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_spectrum_json(g: *const McGraph, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let sp = integer_spectrum(&graph(g)?.target.graph).map_err(computation)?;
        write_string(out, serde_json::to_string(&sp).map_err(computation)?)
    })
}

/// Runs the analysis checks named in `checks` (comma separated; NULL for
/// all) and writes the JSON report. `all_passed` may be NULL.
///
/// # Safety
/// `g` must be a live handle, `checks` NULL or a NUL-terminated string, and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_analyze_json(
    g: *const McGraph,
    checks: *const c_char,
    out: *mut *mut c_char,
    all_passed: *mut bool,
) -> McStatus {
    guard(|| {
        let checks = if checks.is_null() {
            Check::ALL.to_vec()
        } else {
            parse_checks(read_str(checks)?).map_err(|e| Failure(McStatus::InvalidArgument, e.to_string()))?
        };
        let outcome = cmd_analyze(&graph(g)?.target, &checks, false).map_err(computation)?;
        if !all_passed.is_null() {
            all_passed.write(outcome.code == 0);
        }
        write_string(out, outcome.output)
    })
}

/// Budgeted Hamilton cycle search. `report_out`, if not NULL, receives the
/// JSON report including any cycle; free it with `mc_string_free`.
///
/// # Safety
/// `g` must be a live handle, `status` writable, `report_out` NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mc_hamilton(
    g: *const McGraph,
    budget: u64,
    status: *mut McHamiltonStatus,
    report_out: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let (result, outcome) = hamilton_outcome(&graph(g)?.target, budget);
        let s = match result.status {
            HamiltonStatus::Found => McHamiltonStatus::Found,
            HamiltonStatus::NotFoundWithinBudget => McHamiltonStatus::NotFoundWithinBudget,
            HamiltonStatus::ProvenNone => McHamiltonStatus::ProvenNone,
        };
        write_out(status, s)?;
        if !report_out.is_null() {
            write_string(report_out, outcome.output)?;
        }
        Ok(())
    })
}

/// Loads a target the way the command-line tool does: a family spec or an
/// edge-list file path.
///
/// # Safety
/// `target` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_load(target: *const c_char, out: *mut *mut McGraph) -> McStatus {
    guard(|| {
        let t = load_target(read_str(target)?).map_err(|e| Failure(McStatus::InvalidArgument, e.to_string()))?;
        write_graph(out, t)
    })
}
