//! C ABI over the brace/solution/reflection machinery.
//!
//! Objects cross the boundary as opaque handles created from the JSON
//! interchange documents (or the catalog) and freed with the matching
//! `*_free` function. Every fallible call returns a [`BlStatus`]; verdicts
//! and numbers come back through out-pointers, and the message for the most
//! recent error on the current thread is available via
//! [`bl_last_error_message`].
//!
//! The committed header `include/brace_lab.h` is generated with cbindgen
//! (`cbindgen --crate brace-lab-ffi --output include/brace_lab.h`).

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use brace_lab::brace::SubsetX;
use brace_lab::catalog::{self, CatalogObject};
use brace_lab::json::{self, Document};
use brace_lab::param_dep::{check_param_reflection, check_param_ybe, linearize_point_map, linearize_r};
use brace_lab::reflection::{
    enumerate, equivariance_witness, reflection_witness, BudgetPolicy, EnumerateOptions, Filter,
    PointMap, ReflectMode,
};
use brace_lab::yang_baxter::YangBaxterMap;
use brace_lab::{FiniteBrace, FiniteRing};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The JSON document could not be parsed or had the wrong kind.
    ParseError = 3,
    /// The object failed validation (an axiom or closure violation).
    ValidationError = 4,
    /// A construction hypothesis failed.
    HypothesisError = 5,
    /// The enumeration budget was exceeded.
    BudgetExceeded = 6,
}

/// Opaque: a validated finite ring.
pub struct BlRing(FiniteRing);
/// Opaque: a validated finite brace.
pub struct BlBrace(FiniteBrace);
/// Opaque: a Yang-Baxter map (σ/τ tables over a carrier).
pub struct BlSolution(YangBaxterMap);
/// Opaque: a total map on a solution's carrier.
pub struct BlPointMap(PointMap);

/// Counts from an exhaustive reflection scan.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BlEnumerateCounts {
    pub maps_scanned: u64,
    pub reflections: u64,
    pub involutive_reflections: u64,
    pub equivariant: u64,
    /// Nonzero when the scan stopped at the budget.
    pub truncated: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', "?")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Message of the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn bl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, BlStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(BlStatus::NullPointer);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        BlStatus::InvalidUtf8
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> BlStatus {
    if out.is_null() {
        set_error("null output pointer");
        return BlStatus::NullPointer;
    }
    out.write(value);
    BlStatus::Ok
}

macro_rules! deref {
    ($ptr:expr) => {
        match $ptr.as_ref() {
            Some(h) => h,
            None => {
                set_error("null handle");
                return BlStatus::NullPointer;
            }
        }
    };
}

// ---------------------------------------------------------------------------
// construction from JSON and the catalog

/// Parse and validate `{"kind":"ring", ...}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_ring_from_json(json: *const c_char, out: *mut *mut BlRing) -> BlStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let ring = match json::parse_document(text) {
        Ok(Document::Ring(doc)) => match json::ring_from_doc(&doc) {
            Ok(r) => r,
            Err(e) => {
                set_error(e.to_string());
                return BlStatus::ValidationError;
            }
        },
        Ok(_) => {
            set_error("document kind is not \"ring\"");
            return BlStatus::ParseError;
        }
        Err(e) => {
            set_error(e.to_string());
            return BlStatus::ParseError;
        }
    };
    write_out(out, Box::into_raw(Box::new(BlRing(ring))))
}

/// Parse and validate `{"kind":"brace", ...}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_brace_from_json(json: *const c_char, out: *mut *mut BlBrace) -> BlStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let brace = match json::parse_document(text) {
        Ok(Document::Brace(doc)) => match json::brace_from_doc(&doc) {
            Ok(b) => b,
            Err(e) => {
                set_error(e.to_string());
                return BlStatus::ValidationError;
            }
        },
        Ok(_) => {
            set_error("document kind is not \"brace\"");
            return BlStatus::ParseError;
        }
        Err(e) => {
            set_error(e.to_string());
            return BlStatus::ParseError;
        }
    };
    write_out(out, Box::into_raw(Box::new(BlBrace(brace))))
}

/// Look up a catalog brace (for example `"z4adj"` or `"trivial:3"`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_brace_from_catalog(name: *const c_char, out: *mut *mut BlBrace) -> BlStatus {
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match catalog::catalog(name) {
        Ok(CatalogObject::Brace(b)) => write_out(out, Box::into_raw(Box::new(BlBrace(b)))),
        Ok(_) => {
            set_error("catalog entry is not a brace");
            BlStatus::ParseError
        }
        Err(e) => {
            set_error(e.to_string());
            BlStatus::ParseError
        }
    }
}

/// Adjoint brace `x∘y = x + y + x∗y` of a ring.
///
/// # Safety
/// `ring` must be a live handle from this library, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_brace_adjoint_of_ring(ring: *const BlRing, out: *mut *mut BlBrace) -> BlStatus {
    let ring = deref!(ring);
    match FiniteBrace::adjoint_of(&ring.0) {
        Ok(b) => write_out(out, Box::into_raw(Box::new(BlBrace(b)))),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::ValidationError
        }
    }
}

/// Yang-Baxter map of a brace on its full carrier.
///
/// # Safety
/// `brace` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_solution_from_brace(brace: *const BlBrace, out: *mut *mut BlSolution) -> BlStatus {
    let brace = deref!(brace);
    match YangBaxterMap::from_brace(&brace.0, &SubsetX::full(brace.0.size())) {
        Ok(r) => write_out(out, Box::into_raw(Box::new(BlSolution(r)))),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::ValidationError
        }
    }
}

/// Parse `{"kind":"ybmap", ...}` (no braid-identity assertion).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_solution_from_json(json: *const c_char, out: *mut *mut BlSolution) -> BlStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match json::parse_document(text) {
        Ok(Document::YbMap(doc)) => match json::ybmap_from_doc(&doc) {
            Ok(r) => write_out(out, Box::into_raw(Box::new(BlSolution(r)))),
            Err(e) => {
                set_error(e.to_string());
                BlStatus::ValidationError
            }
        },
        Ok(_) => {
            set_error("document kind is not \"ybmap\"");
            BlStatus::ParseError
        }
        Err(e) => {
            set_error(e.to_string());
            BlStatus::ParseError
        }
    }
}

/// Parse `{"carrier": [...], "image": [...]}` against a solution's carrier.
///
/// # Safety
/// `json` must be a NUL-terminated string, `solution` a live handle, `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_point_map_from_json(
    json: *const c_char,
    solution: *const BlSolution,
    out: *mut *mut BlPointMap,
) -> BlStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let solution = deref!(solution);
    let doc: json::PointMapDoc = match serde_json::from_str(text) {
        Ok(d) => d,
        Err(e) => {
            set_error(e.to_string());
            return BlStatus::ParseError;
        }
    };
    match json::point_map_for(&doc, solution.0.carrier()) {
        Ok(map) => write_out(out, Box::into_raw(Box::new(BlPointMap(map)))),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::ValidationError
        }
    }
}

/// Identity map on a solution's carrier.
///
/// # Safety
/// `solution` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_point_map_identity(solution: *const BlSolution, out: *mut *mut BlPointMap) -> BlStatus {
    let solution = deref!(solution);
    write_out(out, Box::into_raw(Box::new(BlPointMap(PointMap::identity(solution.0.carrier().clone())))))
}

// ---------------------------------------------------------------------------
// queries

/// # Safety
/// `brace` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_brace_size(brace: *const BlBrace, out: *mut usize) -> BlStatus {
    let brace = deref!(brace);
    write_out(out, brace.0.size())
}

/// Whether the braid identity holds on all triples.
///
/// # Safety
/// `solution` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_solution_is_ybe(solution: *const BlSolution, out: *mut u8) -> BlStatus {
    let solution = deref!(solution);
    write_out(out, u8::from(solution.0.ybe_witness().is_none()))
}

/// Involutivity and nondegeneracy flags.
///
/// # Safety
/// `solution` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_solution_classify(
    solution: *const BlSolution,
    out_involutive: *mut u8,
    out_nondegenerate: *mut u8,
) -> BlStatus {
    let solution = deref!(solution);
    let c = solution.0.classify();
    let status = write_out(out_involutive, u8::from(c.involutive));
    if status != BlStatus::Ok {
        return status;
    }
    write_out(out_nondegenerate, u8::from(c.nondegenerate))
}

/// Reflection check; `first_coordinate_mode != 0` requests the shortcut,
/// which is rejected for non-involutive solutions.
///
/// # Safety
/// Handles must be live; `out_is_reflection` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_check_reflection(
    solution: *const BlSolution,
    map: *const BlPointMap,
    first_coordinate_mode: u8,
    out_is_reflection: *mut u8,
) -> BlStatus {
    let solution = deref!(solution);
    let map = deref!(map);
    let mode = if first_coordinate_mode != 0 { ReflectMode::FirstCoordinate } else { ReflectMode::Full };
    match reflection_witness(&solution.0, &map.0, mode) {
        Ok(w) => write_out(out_is_reflection, u8::from(w.is_none())),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::HypothesisError
        }
    }
}

/// Whether the map commutes with every σ_x.
///
/// # Safety
/// Handles must be live; `out_is_equivariant` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bl_check_equivariance(
    solution: *const BlSolution,
    map: *const BlPointMap,
    out_is_equivariant: *mut u8,
) -> BlStatus {
    let solution = deref!(solution);
    let map = deref!(map);
    match equivariance_witness(&solution.0, &map.0) {
        Ok(w) => write_out(out_is_equivariant, u8::from(w.is_none())),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::HypothesisError
        }
    }
}

/// Exhaustive scan of all maps on the carrier. `budget` caps the scan;
/// when `allow_truncation` is zero, exceeding it is an error.
///
/// # Safety
/// `solution` must be a live handle, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_enumerate_reflections(
    solution: *const BlSolution,
    budget: u64,
    allow_truncation: u8,
    jobs: usize,
    out: *mut BlEnumerateCounts,
) -> BlStatus {
    let solution = deref!(solution);
    let opts = EnumerateOptions {
        filter: Filter::Both,
        budget,
        on_budget: if allow_truncation != 0 { BudgetPolicy::Truncate } else { BudgetPolicy::Error },
        emit_maps: false,
        jobs: jobs.max(1),
    };
    match enumerate(&solution.0, &opts) {
        Ok(report) => write_out(
            out,
            BlEnumerateCounts {
                maps_scanned: report.maps_scanned,
                reflections: report.reflection_count.unwrap_or(0),
                involutive_reflections: report.involutive_reflection_count.unwrap_or(0),
                equivariant: report.equivariant_count.unwrap_or(0),
                truncated: u8::from(report.truncated),
            },
        ),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::BudgetExceeded
        }
    }
}

/// Exact parameter-dependent Yang-Baxter identity for `R'(w) = I + wR`.
///
/// # Safety
/// `solution` must be a live handle, `out_holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_param_ybe(solution: *const BlSolution, out_holds: *mut u8) -> BlStatus {
    let solution = deref!(solution);
    match check_param_ybe(&linearize_r(&solution.0)) {
        Ok(check) => write_out(out_holds, u8::from(check.holds)),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::HypothesisError
        }
    }
}

/// Exact parameter-dependent reflection identity for `K'(w) = wK`; both the
/// solution and the map must be involutive.
///
/// # Safety
/// Handles must be live, `out_holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bl_param_reflection(
    solution: *const BlSolution,
    map: *const BlPointMap,
    out_holds: *mut u8,
) -> BlStatus {
    let solution = deref!(solution);
    let map = deref!(map);
    match check_param_reflection(&linearize_r(&solution.0), &linearize_point_map(&map.0)) {
        Ok(check) => write_out(out_holds, u8::from(check.holds)),
        Err(e) => {
            set_error(e.to_string());
            BlStatus::HypothesisError
        }
    }
}

// ---------------------------------------------------------------------------
// destructors

/// # Safety
/// `ptr` must come from this library and not already be freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn bl_ring_free(ptr: *mut BlRing) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// # Safety
/// `ptr` must come from this library and not already be freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn bl_brace_free(ptr: *mut BlBrace) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// # Safety
/// `ptr` must come from this library and not already be freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn bl_solution_free(ptr: *mut BlSolution) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

/// # Safety
/// `ptr` must come from this library and not already be freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn bl_point_map_free(ptr: *mut BlPointMap) {
    if !ptr.is_null() {
        drop(Box::from_raw(ptr));
    }
}

const _: () = {
    // the header generation relies on these types staying FFI-safe
    fn _assert_ffi_safe(_: BlStatus, _: BlEnumerateCounts) {}
    _ = _assert_ffi_safe as fn(_, _);
    _ = ptr::null::<BlRing>;
};
