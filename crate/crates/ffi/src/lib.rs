//! C ABI over the slowcolor solver.
//!
//! Graphs and caches are opaque handles created and destroyed by this
//! library. Every fallible call returns a [`SlowcolorStatus`]; on failure
//! the message is kept per thread and read back with
//! [`slowcolor_last_error`]. Panics never cross the boundary: they are
//! reported as [`SlowcolorStatus::Internal`].

use slowcolor::graph::{parse_graph, Graph, VertexSet};
use slowcolor::invariants::{bound_report, InvariantError};
use slowcolor::solver::{solve_with, Analyzer, CacheError, SolveError, SolverCache, SolverConfig};
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlowcolorStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The graph text could not be parsed.
    Parse = 3,
    /// The graph is above the vertex limit passed to the call.
    TooLarge = 4,
    /// A marked set was empty or outside the graph.
    InvalidMove = 5,
    /// Reading or writing a cache file failed.
    Io = 6,
    /// A cache file was malformed or of another version.
    Cache = 7,
    /// A bug inside the library; the message says where.
    Internal = 8,
    /// The quantity is undefined for this graph (bounds of the empty graph).
    Undefined = 9,
}

/// Opaque graph handle.
pub struct SlowcolorGraph(Graph);

/// Opaque value cache; may be shared by several graphs and threads.
pub struct SlowcolorCache(SolverCache);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: SlowcolorStatus, msg: impl ToString) -> SlowcolorStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.to_string());
    status
}

impl From<SolveError> for SlowcolorStatus {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::TooLarge { .. } => SlowcolorStatus::TooLarge,
            SolveError::InvalidMark(_) => SlowcolorStatus::InvalidMove,
            SolveError::Cancelled => SlowcolorStatus::Internal,
        };
        fail(status, e)
    }
}

impl From<CacheError> for SlowcolorStatus {
    fn from(e: CacheError) -> Self {
        let status = match e {
            CacheError::Io(_) => SlowcolorStatus::Io,
            _ => SlowcolorStatus::Cache,
        };
        fail(status, e)
    }
}

impl From<InvariantError> for SlowcolorStatus {
    fn from(e: InvariantError) -> Self {
        let status = match e {
            InvariantError::TooLarge { .. } => SlowcolorStatus::TooLarge,
            InvariantError::EmptyGraph => SlowcolorStatus::Undefined,
        };
        fail(status, e)
    }
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), SlowcolorStatus>) -> SlowcolorStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlowcolorStatus::Ok,
        Ok(Err(status)) => status,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(SlowcolorStatus::Internal, format!("panic: {msg}"))
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, SlowcolorStatus> {
    if s.is_null() {
        return Err(fail(SlowcolorStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(SlowcolorStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn graph<'a>(g: *const SlowcolorGraph) -> Result<&'a Graph, SlowcolorStatus> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| fail(SlowcolorStatus::NullPointer, "graph is null"))
}

fn out<T>(p: *mut T, what: &str) -> Result<(), SlowcolorStatus> {
    if p.is_null() {
        Err(fail(SlowcolorStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn config(limit: usize) -> SolverConfig {
    if limit == 0 {
        SolverConfig::default()
    } else {
        SolverConfig::with_limit(limit)
    }
}

/// Copies the calling thread's last error message into `buf` (at most
/// `len - 1` bytes plus a terminating NUL) and returns the full message
/// length. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Parses a graph from the text syntax (`K3,3`, `P7`, `n=4; 0-1,1-2` ...)
/// and stores a new handle in `*out_graph`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_graph_parse(
    spec: *const c_char,
    out_graph: *mut *mut SlowcolorGraph,
) -> SlowcolorStatus {
    guard(|| {
        out(out_graph, "out_graph")?;
        let spec = text(spec, "spec")?;
        let g = parse_graph(spec).map_err(|e| fail(SlowcolorStatus::Parse, e))?;
        *out_graph = Box::into_raw(Box::new(SlowcolorGraph(g)));
        Ok(())
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from [`slowcolor_graph_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_graph_free(g: *mut SlowcolorGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_graph_vertex_count(g: *const SlowcolorGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_graph_edge_count(g: *const SlowcolorGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Creates an empty cache.
#[no_mangle]
pub extern "C" fn slowcolor_cache_new() -> *mut SlowcolorCache {
    Box::into_raw(Box::new(SlowcolorCache(SolverCache::new())))
}

/// Loads a cache file, or starts an empty cache when the file does not
/// exist.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_cache` must be writable.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_cache_load(
    path: *const c_char,
    out_cache: *mut *mut SlowcolorCache,
) -> SlowcolorStatus {
    guard(|| {
        out(out_cache, "out_cache")?;
        let path = text(path, "path")?;
        let cache = SolverCache::load_or_new(Path::new(path))?;
        *out_cache = Box::into_raw(Box::new(SlowcolorCache(cache)));
        Ok(())
    })
}

/// Writes the cache to `path`.
///
/// # Safety
/// `cache` must be a live cache handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_cache_save(
    cache: *const SlowcolorCache,
    path: *const c_char,
) -> SlowcolorStatus {
    guard(|| {
        let cache = cache.as_ref().ok_or_else(|| fail(SlowcolorStatus::NullPointer, "cache is null"))?;
        let path = text(path, "path")?;
        cache.0.save(Path::new(path))?;
        Ok(())
    })
}

/// Number of cached component values, or 0 for a null handle.
///
/// # Safety
/// `cache` must be null or a live cache handle.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_cache_len(cache: *const SlowcolorCache) -> usize {
    cache.as_ref().map_or(0, |c| c.0.len())
}

/// Releases a cache. Null is ignored.
///
/// # Safety
/// `cache` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_cache_free(cache: *mut SlowcolorCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Exact value of the game on `g`, stored in `*out_value`. `cache` may be
/// null for a throwaway cache; `limit` caps the vertex count (0 for the
/// default).
///
/// # Safety
/// `g` must be a live graph, `cache` null or a live cache, `out_value`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_solve(
    g: *const SlowcolorGraph,
    cache: *const SlowcolorCache,
    limit: usize,
    out_value: *mut u64,
) -> SlowcolorStatus {
    guard(|| {
        out(out_value, "out_value")?;
        let g = graph(g)?;
        let local;
        let cache = match cache.as_ref() {
            Some(c) => &c.0,
            None => {
                local = SolverCache::new();
                &local
            }
        };
        *out_value = solve_with(g, cache, &config(limit))?.value;
        Ok(())
    })
}

/// An optimal answer to `marked` (vertex bitmask) on the whole graph,
/// stored as a bitmask in `*out_colored`.
///
/// # Safety
/// As for [`slowcolor_solve`]; `out_colored` must be writable.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_optimal_response(
    g: *const SlowcolorGraph,
    cache: *const SlowcolorCache,
    limit: usize,
    marked: u64,
    out_colored: *mut u64,
) -> SlowcolorStatus {
    guard(|| {
        out(out_colored, "out_colored")?;
        let g = graph(g)?;
        let local;
        let cache = match cache.as_ref() {
            Some(c) => &c.0,
            None => {
                local = SolverCache::new();
                &local
            }
        };
        let config = config(limit);
        let mut analyzer = Analyzer::new(g, cache, &config)?;
        *out_colored = analyzer.best_response(g.vertices(), VertexSet(marked))?.bits();
        Ok(())
    })
}

/// The best integer lower and upper bounds the invariants give for `g`.
///
/// # Safety
/// `g` must be a live graph; `out_lower` and `out_upper` writable.
#[no_mangle]
pub unsafe extern "C" fn slowcolor_bounds(
    g: *const SlowcolorGraph,
    out_lower: *mut u64,
    out_upper: *mut u64,
) -> SlowcolorStatus {
    guard(|| {
        out(out_lower, "out_lower")?;
        out(out_upper, "out_upper")?;
        let g = graph(g)?;
        let report = bound_report(g)?;
        *out_lower = report.best_lower();
        *out_upper = report.best_upper();
        Ok(())
    })
}
