//! C ABI for `sqroot-core`.
//!
//! Graphs cross the boundary as opaque `SqrootGraph` handles. Every fallible
//! function returns an `SqrootStatus`; on failure a message is available from
//! `sqroot_last_error` until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with `sqroot_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sqroot_core::io::{parse_edge_list, write_edge_list};
use sqroot_core::reductions::setsplit_to_graph;
use sqroot_core::{is_planar, solve_square_root, square, verify_square_root, Graph, SetSplitInstance, SolveOptions, SolveOutcome};

/// Opaque graph handle.
pub struct SqrootGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrootStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    VertexMismatch = 4,
    InvalidInstance = 5,
    Reduction = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqrootSolveOutcome {
    Root = 0,
    NoRoot = 1,
    Inconclusive = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

type Res<T> = Result<T, (SqrootStatus, String)>;

/// Clears the error slot, runs `f` behind a panic guard, and records any
/// failure.
fn guard(f: impl FnOnce() -> Res<()>) -> SqrootStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SqrootStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SqrootStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err((SqrootStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (SqrootStatus::InvalidUtf8, format!("{name}: {e}")))
}

unsafe fn graph_arg<'a>(p: *const SqrootGraph, name: &str) -> Res<&'a Graph> {
    p.as_ref().map(|g| &g.inner).ok_or((SqrootStatus::NullPointer, format!("{name} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or((SqrootStatus::NullPointer, format!("{name} is null")))
}

fn handle(g: Graph) -> *mut SqrootGraph {
    Box::into_raw(Box::new(SqrootGraph { inner: g }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("outputs contain no NUL").into_raw()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sqroot_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sqroot_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses edge-list text into a new graph.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sqroot_graph_parse(text: *const c_char, out: *mut *mut SqrootGraph) -> SqrootStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let g = parse_edge_list(str_arg(text, "text")?).map_err(|e| (SqrootStatus::Parse, e.to_string()))?;
        *out = handle(g);
        Ok(())
    })
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sqroot_graph_free(g: *mut SqrootGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqroot_graph_vertex_count(g: *const SqrootGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sqroot_graph_edge_count(g: *const SqrootGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Serializes a graph as edge-list text.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sqroot_graph_to_edge_list(g: *const SqrootGraph, out: *mut *mut c_char) -> SqrootStatus {
    guard(|| {
        let g = graph_arg(g, "g")?;
        *out_arg(out, "out")? = c_string(write_edge_list(g));
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sqroot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the square of `g` as a new graph.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sqroot_square(g: *const SqrootGraph, out: *mut *mut SqrootGraph) -> SqrootStatus {
    guard(|| {
        let g = graph_arg(g, "g")?;
        *out_arg(out, "out")? = handle(square(g));
        Ok(())
    })
}

/// Sets `*result` to whether `h` squared equals `g`.
///
/// # Safety
/// `h` and `g` must be live handles and `result` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sqroot_verify_square_root(
    h: *const SqrootGraph,
    g: *const SqrootGraph,
    result: *mut bool,
) -> SqrootStatus {
    guard(|| {
        let (h, g) = (graph_arg(h, "h")?, graph_arg(g, "g")?);
        let ok = verify_square_root(h, g).map_err(|e| (SqrootStatus::VertexMismatch, e.to_string()))?;
        *out_arg(result, "result")? = ok;
        Ok(())
    })
}

/// Sets `*result` to whether `g` is planar.
///
/// # Safety
/// `g` must be a live handle and `result` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sqroot_is_planar(g: *const SqrootGraph, result: *mut bool) -> SqrootStatus {
    guard(|| {
        let g = graph_arg(g, "g")?;
        *out_arg(result, "result")? = is_planar(g);
        Ok(())
    })
}

/// Searches for a square root of `g` within `budget` branch assignments.
/// On `Root`, `*root` receives a new graph when `root` is not NULL.
/// `nodes` may be NULL.
///
/// # Safety
/// `g` must be a live handle; `outcome` must be writable; `root` and
/// `nodes` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqroot_solve(
    g: *const SqrootGraph,
    budget: u64,
    outcome: *mut SqrootSolveOutcome,
    root: *mut *mut SqrootGraph,
    nodes: *mut u64,
) -> SqrootStatus {
    guard(|| {
        let g = graph_arg(g, "g")?;
        let outcome = out_arg(outcome, "outcome")?;
        let report = solve_square_root(g, SolveOptions { budget, record_transcript: false });
        if let Some(n) = nodes.as_mut() {
            *n = report.nodes_explored;
        }
        if let Some(r) = root.as_mut() {
            *r = ptr::null_mut();
        }
        *outcome = match report.outcome {
            SolveOutcome::Root(h) => {
                if let Some(r) = root.as_mut() {
                    *r = handle(h);
                }
                SqrootSolveOutcome::Root
            }
            SolveOutcome::NoRoot => SqrootSolveOutcome::NoRoot,
            SolveOutcome::Inconclusive(_) => SqrootSolveOutcome::Inconclusive,
        };
        Ok(())
    })
}

/// Builds the gadget graph of a set-splitting instance given as JSON.
/// `roles_json` may be NULL; otherwise it receives the role map.
///
/// # Safety
/// `instance_json` must be a NUL-terminated string, `out` writable, and
/// `roles_json` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn sqroot_setsplit_to_graph(
    instance_json: *const c_char,
    out: *mut *mut SqrootGraph,
    roles_json: *mut *mut c_char,
) -> SqrootStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let inst = SetSplitInstance::from_json(str_arg(instance_json, "instance_json")?)
            .map_err(|e| (SqrootStatus::InvalidInstance, e.to_string()))?;
        let gg = setsplit_to_graph(&inst).map_err(|e| (SqrootStatus::Reduction, e.to_string()))?;
        if let Some(r) = roles_json.as_mut() {
            *r = c_string(gg.role_map().to_json());
        }
        *out = handle(gg.graph);
        Ok(())
    })
}
