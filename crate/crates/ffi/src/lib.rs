//! C ABI over `spanner_lab`.
//!
//! Every entry point returns an [`SlStatus`]; results go through out-pointers.
//! On failure the message is kept per thread and read with
//! [`sl_last_error_message`]. Graphs are opaque handles released with
//! [`sl_graph_free`]; strings handed out are released with [`sl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spanner_lab::enlarge::{enlarge_girth, EnlargeOptions, Regime};
use spanner_lab::gadget::gen_lower_bound;
use spanner_lab::graph::{girth, is_k_spanner};
use spanner_lab::greedy::{greedy_spanner, EdgeOrdering};
use spanner_lab::io::parse_graph;
use spanner_lab::{Error, Graph};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    InvariantViolation = 3,
    LemmaViolation = 4,
    Panic = 5,
}

/// Opaque undirected simple graph.
pub struct SlGraph {
    inner: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Invariant(_) | Error::NotReconstructible(_) | Error::Generator(_) => SlStatus::InvariantViolation,
            Error::Lemma(_) => SlStatus::LemmaViolation,
            _ => SlStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SlStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            SlStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SlGraph, what: &str) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|g| &g.inner).ok_or_else(|| null(what))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed(g: Graph) -> *mut SlGraph {
    Box::into_raw(Box::new(SlGraph { inner: g }))
}

fn stretch(k: u32) -> Result<usize, Failure> {
    if k == 0 {
        return Err(Failure(SlStatus::InvalidInput, "stretch k must be at least 1".into()));
    }
    Ok(k as usize)
}

fn to_u32(x: usize) -> u32 {
    u32::try_from(x).expect("count fits in 32 bits")
}

/// Builds a graph on `n` vertices from `edge_count` endpoint pairs stored flat in `endpoints`.
///
/// # Safety
/// `endpoints` must point to `2 * edge_count` readable values (it may be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_new(
    n: u32,
    endpoints: *const u32,
    edge_count: usize,
    out: *mut *mut SlGraph,
) -> SlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if endpoints.is_null() {
            return Err(null("endpoints"));
        } else {
            std::slice::from_raw_parts(endpoints, 2 * edge_count)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0] as usize, p[1] as usize));
        *out = boxed(Graph::new(n as usize, pairs)?);
        Ok(())
    })
}

/// Parses the text edge-list format (`n m` header, then one `u v` pair per line).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_parse(text: *const c_char, out: *mut *mut SlGraph) -> SlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| Failure(SlStatus::InvalidInput, "text is not valid UTF-8".into()))?;
        *out = boxed(parse_graph(text)?);
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_free(g: *mut SlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_vertex_count(g: *const SlGraph, out: *mut u32) -> SlStatus {
    guard(|| {
        *out_ref(out, "out")? = to_u32(graph_ref(g, "g")?.n());
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_edge_count(g: *const SlGraph, out: *mut usize) -> SlStatus {
    guard(|| {
        *out_ref(out, "out")? = graph_ref(g, "g")?.m();
        Ok(())
    })
}

/// Copies the sorted edge list into `endpoints` as flat `(lo, hi)` pairs.
///
/// `capacity` counts edges. Fails with `InvalidInput` when it is below the edge count.
///
/// # Safety
/// `endpoints` must have room for `2 * capacity` values.
#[no_mangle]
pub unsafe extern "C" fn sl_graph_edges(g: *const SlGraph, endpoints: *mut u32, capacity: usize) -> SlStatus {
    guard(|| {
        let g = graph_ref(g, "g")?;
        if capacity < g.m() {
            return Err(Failure(
                SlStatus::InvalidInput,
                format!("buffer holds {capacity} edges, graph has {}", g.m()),
            ));
        }
        if g.m() == 0 {
            return Ok(());
        }
        if endpoints.is_null() {
            return Err(null("endpoints"));
        }
        let buf = std::slice::from_raw_parts_mut(endpoints, 2 * g.m());
        for (slot, e) in buf.chunks_exact_mut(2).zip(g.edges()) {
            slot[0] = to_u32(e.lo());
            slot[1] = to_u32(e.hi());
        }
        Ok(())
    })
}

/// Length of a shortest cycle, 0 for a forest.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_girth(g: *const SlGraph, out: *mut u32) -> SlStatus {
    guard(|| {
        *out_ref(out, "out")? = girth(graph_ref(g, "g")?).map_or(0, to_u32);
        Ok(())
    })
}

/// Whether `h` is a subgraph of `g` keeping every edge of `g` within distance `k`.
///
/// # Safety
/// `g` and `h` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_is_k_spanner(g: *const SlGraph, h: *const SlGraph, k: u32, out: *mut bool) -> SlStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        let k = stretch(k)?;
        let out = out_ref(out, "out")?;
        if h.n() != g.n() {
            return Err(Failure(SlStatus::InvalidInput, "vertex counts differ".into()));
        }
        *out = h.is_subgraph_of(g) && is_k_spanner(g, h, k);
        Ok(())
    })
}

/// Greedy k-spanner. With `shuffled` false edges are scanned in sorted order,
/// otherwise in a permutation drawn from `seed`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_greedy_spanner(
    g: *const SlGraph,
    k: u32,
    shuffled: bool,
    seed: u64,
    out: *mut *mut SlGraph,
) -> SlStatus {
    guard(|| {
        let g = graph_ref(g, "g")?;
        let k = stretch(k)?;
        let out = out_ref(out, "out")?;
        let order = if shuffled { EdgeOrdering::random(g, seed) } else { EdgeOrdering::lex(g) };
        *out = boxed(greedy_spanner(g, k, &order)?.sub);
        Ok(())
    })
}

/// Raises the girth of the k-spanner `h` of `g` to at least `k + 2`.
///
/// `regime` is a regime name such as `"auto"` or `"bucket:3"`; null means auto.
/// On success `out` receives the new spanner and `trace_json` the trace, to be
/// released with [`sl_string_free`]. `trace_json` may be null.
///
/// # Safety
/// `g` and `h` must be live handles, `regime` null or NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sl_enlarge(
    g: *const SlGraph,
    h: *const SlGraph,
    k: u32,
    regime: *const c_char,
    slack: u32,
    out: *mut *mut SlGraph,
    trace_json: *mut *mut c_char,
) -> SlStatus {
    guard(|| {
        let (g, h) = (graph_ref(g, "g")?, graph_ref(h, "h")?);
        let out = out_ref(out, "out")?;
        let regime = if regime.is_null() {
            Regime::Auto
        } else {
            let name = CStr::from_ptr(regime)
                .to_str()
                .map_err(|_| Failure(SlStatus::InvalidInput, "regime is not valid UTF-8".into()))?;
            name.parse()?
        };
        let done = enlarge_girth(g, h, k as usize, EnlargeOptions { regime, slack: slack as usize })?;
        if let Some(slot) = trace_json.as_mut() {
            let text = serde_json::to_string(&done.trace).map_err(Error::from)?;
            *slot = CString::new(text).expect("JSON has no NUL").into_raw();
        }
        *out = boxed(done.result);
        Ok(())
    })
}

/// Lower-bound gadget for stretch `k` padded to `n` vertices, with its baseline spanner.
///
/// `baseline` may be null.
///
/// # Safety
/// `out` must be writable; `baseline` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sl_gen_gadget(k: u32, n: u32, out: *mut *mut SlGraph, baseline: *mut *mut SlGraph) -> SlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let gd = gen_lower_bound(k as usize, n as usize)?;
        if let Some(slot) = baseline.as_mut() {
            *slot = boxed(gd.baseline.sub);
        }
        *out = boxed(gd.graph);
        Ok(())
    })
}

/// Message of the most recent failure on this thread, or null if none.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
