//! C interface. Graphs and complexes are opaque handles owned by the caller
//! and released with the matching `*_free` function. Every fallible call
//! returns a [`CzStatus`]; the message of the last failure on the calling
//! thread is available from [`cz_last_error`]. Strings returned through
//! `char **` out-parameters must be released with [`cz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use crystallize::anneal::{simplify, AnnealConfig, Outcome};
use crystallize::catalog;
use crystallize::complex::CellComplex;
use crystallize::graph::ColoredGraph;
use crystallize::invariants::{check_4manifold_crystallization, simplicity};
use crystallize::io::{parse_gem, parse_pst, write_gem, write_pst};
use crystallize::surgery::connected_sum;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    NotFound = 5,
    Panic = 6,
}

/// A colored graph.
pub struct CzGraph(ColoredGraph);

/// A simplicial cell complex.
pub struct CzComplex(CellComplex);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: CzStatus, message: impl ToString) -> CzStatus {
    let text = CString::new(message.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
    status
}

fn guarded(f: impl FnOnce() -> CzStatus) -> CzStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(CzStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, CzStatus> {
    if p.is_null() {
        return Err(fail(CzStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CzStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> CzStatus {
    *out = Box::into_raw(Box::new(value));
    CzStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> CzStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            CzStatus::Ok
        }
        Err(_) => fail(CzStatus::InvalidInput, "output contains a NUL byte"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(CzStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph in gem format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_parse_gem(text: *const c_char, out: *mut *mut CzGraph) -> CzStatus {
    guarded(|| {
        non_null!(out);
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_gem(text) {
            Ok(g) => put(out, CzGraph(g)),
            Err(e) => fail(CzStatus::Parse, e),
        }
    })
}

/// Built-in catalog entry by name (`s4`, `cp2`, `s2xs2`). `k3` needs its
/// data file contents in `data`, which may otherwise be null.
///
/// # Safety
/// `name` must be a NUL-terminated string, `data` null or NUL-terminated,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_catalog(name: *const c_char, data: *const c_char, out: *mut *mut CzGraph) -> CzStatus {
    guarded(|| {
        non_null!(out);
        let name = match str_arg(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let data = if data.is_null() {
            None
        } else {
            match str_arg(data) {
                Ok(t) => Some(t),
                Err(s) => return s,
            }
        };
        match catalog::catalog(name, data) {
            Ok(g) => put(out, CzGraph(g)),
            Err(e @ catalog::CatalogError::UnknownName(_)) => fail(CzStatus::NotFound, e),
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_free(g: *mut CzGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_order(g: *const CzGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Dimension (number of colors minus one), 0 for a null handle.
///
/// # Safety
/// `g` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_dim(g: *const CzGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.dim())
}

/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_write_gem(g: *const CzGraph, out: *mut *mut c_char) -> CzStatus {
    guarded(|| {
        non_null!(g, out);
        put_string(out, write_gem(&(*g).0))
    })
}

/// Whether every residue on `dim - k` colors is connected.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_is_simple(g: *const CzGraph, k: usize, out: *mut bool) -> CzStatus {
    guarded(|| {
        non_null!(g, out);
        match simplicity(&(*g).0, k) {
            Ok(b) => {
                *out = b;
                CzStatus::Ok
            }
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// Whether every residue missing one color is certified a 3-sphere.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_is_crystallization(g: *const CzGraph, out: *mut bool) -> CzStatus {
    guarded(|| {
        non_null!(g, out);
        match check_4manifold_crystallization(&(*g).0) {
            Ok(c) => {
                *out = c.all_sphere();
                CzStatus::Ok
            }
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `a`, `b` must be valid handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_isomorphic(a: *const CzGraph, b: *const CzGraph, out: *mut bool) -> CzStatus {
    guarded(|| {
        non_null!(a, b, out);
        match (*a).0.is_isomorphic(&(*b).0) {
            Ok(x) => {
                *out = x;
                CzStatus::Ok
            }
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// Connected sum at `v1` of `a` and `v2` of `b`; `perm` holds `perm_len`
/// color indices and may be null for the identity.
///
/// # Safety
/// `a`, `b` must be valid handles, `perm` null or pointing to `perm_len`
/// values, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_graph_connected_sum(
    a: *const CzGraph,
    v1: usize,
    b: *const CzGraph,
    v2: usize,
    perm: *const usize,
    perm_len: usize,
    out: *mut *mut CzGraph,
) -> CzStatus {
    guarded(|| {
        non_null!(a, b, out);
        let sigma: Vec<usize> = if perm.is_null() {
            (0..(*a).0.num_colors()).collect()
        } else {
            std::slice::from_raw_parts(perm, perm_len).to_vec()
        };
        match connected_sum(&(*a).0, v1, &(*b).0, v2, &sigma) {
            Ok(g) => put(out, CzGraph(g)),
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// The complex dual to a graph.
///
/// # Safety
/// `g` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_realize(g: *const CzGraph, out: *mut *mut CzComplex) -> CzStatus {
    guarded(|| {
        non_null!(g, out);
        put(out, CzComplex(CellComplex::realize(&(*g).0)))
    })
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_parse_pst(text: *const c_char, out: *mut *mut CzComplex) -> CzStatus {
    guarded(|| {
        non_null!(out);
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_pst(text) {
            Ok(c) => put(out, CzComplex(c)),
            Err(e) => fail(CzStatus::Parse, e),
        }
    })
}

/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_write_pst(c: *const CzComplex, out: *mut *mut c_char) -> CzStatus {
    guarded(|| {
        non_null!(c, out);
        put_string(out, write_pst(&(*c).0))
    })
}

/// Dual colored graph of a contracted complex.
///
/// # Safety
/// `c` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_dual_graph(c: *const CzComplex, out: *mut *mut CzGraph) -> CzStatus {
    guarded(|| {
        non_null!(c, out);
        match (*c).0.dual_graph_coloring() {
            Ok(g) => put(out, CzGraph(g)),
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_free(c: *mut CzComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of facets, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_num_facets(c: *const CzComplex) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_facets())
}

/// Euler characteristic, 0 for a null handle.
///
/// # Safety
/// `c` must be null or a valid handle.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_euler_characteristic(c: *const CzComplex) -> i64 {
    c.as_ref().map_or(0, |c| c.0.euler_characteristic())
}

/// Writes the f-vector into `buf`, which must hold `dim + 1` entries;
/// `written` receives the number of entries.
///
/// # Safety
/// `c` must be a valid handle, `buf` must point to `len` writable values
/// and `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_f_vector(c: *const CzComplex, buf: *mut usize, len: usize, written: *mut usize) -> CzStatus {
    guarded(|| {
        non_null!(c, buf, written);
        let f = (*c).0.f_vector().0;
        *written = f.len();
        if len < f.len() {
            return fail(CzStatus::InvalidInput, format!("buffer holds {len} entries, need {}", f.len()));
        }
        std::slice::from_raw_parts_mut(buf, f.len()).copy_from_slice(&f);
        CzStatus::Ok
    })
}

/// Runs the simplifier with default weights. `reached` is set when the
/// result is a simple contracted complex.
///
/// # Safety
/// `c` must be a valid handle; `out` and `reached` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cz_complex_simplify(
    c: *const CzComplex,
    seed: u64,
    max_steps: usize,
    out: *mut *mut CzComplex,
    reached: *mut bool,
) -> CzStatus {
    guarded(|| {
        non_null!(c, out, reached);
        let cfg = AnnealConfig { seed, max_steps, ..Default::default() };
        match simplify(&(*c).0, &cfg) {
            Ok((result, _, outcome)) => {
                *reached = outcome == Outcome::TargetReached;
                put(out, CzComplex(result))
            }
            Err(e) => fail(CzStatus::InvalidInput, e),
        }
    })
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn last_error_starts_empty() {
        let msg = unsafe { CStr::from_ptr(cz_last_error()) };
        assert!(msg.to_bytes().is_empty());
        let mut g = ptr::null_mut();
        assert_eq!(unsafe { cz_graph_parse_gem(ptr::null(), &mut g) }, CzStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(cz_last_error()) };
        assert!(!msg.to_bytes().is_empty());
    }
}
