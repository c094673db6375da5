//! C interface to `polydyn`.
//!
//! Models and analysis results are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a [`PolydynStatus`];
//! the message of the most recent failure on the calling thread is available from
//! [`polydyn_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polydyn::dynamics::{analyze, Analysis, AnalysisOptions, Mode};
use polydyn::translate::ModelDocument;
use polydyn::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolydynStatus {
    Ok = 0,
    NullArgument = 1,
    /// Malformed text, including invalid UTF-8.
    Parse = 2,
    NotPrime = 3,
    Invalid = 4,
    Mismatch = 5,
    Resource = 6,
    Unsupported = 7,
    OutOfRange = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

/// Analysis mode for [`polydyn_analyze`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolydynMode {
    Algorithm = 0,
    Simulation = 1,
}

/// A parsed model document.
pub struct PolydynModel {
    doc: ModelDocument,
}

/// Steady states and limit cycles found by [`polydyn_analyze`].
pub struct PolydynAttractors {
    nvars: usize,
    analysis: Analysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn fail(status: PolydynStatus, message: impl Into<String>) -> PolydynStatus {
    set_error(message.into());
    status
}

fn status_of(e: &Error) -> PolydynStatus {
    match e {
        Error::NotPrime(_) => PolydynStatus::NotPrime,
        Error::Mismatch(_) => PolydynStatus::Mismatch,
        Error::Parse { .. } => PolydynStatus::Parse,
        Error::Invalid(_) => PolydynStatus::Invalid,
        Error::Resource(_) => PolydynStatus::Resource,
        Error::Unsupported(_) => PolydynStatus::Unsupported,
    }
}

fn guard(body: impl FnOnce() -> PolydynStatus) -> PolydynStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(PolydynStatus::Panic, "internal error"))
}

/// Message of the last failure on this thread, or NULL. The pointer stays valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn polydyn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}

/// Parse a NUL-terminated model document. On success `*out` receives a new handle.
///
/// # Safety
/// `text` must be NULL or a valid NUL-terminated string; `out` must be NULL or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn polydyn_model_parse(text: *const c_char, out: *mut *mut PolydynModel) -> PolydynStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(PolydynStatus::NullArgument, "null argument");
        }
        *out = ptr::null_mut();
        let bytes = CStr::from_ptr(text).to_bytes();
        match ModelDocument::from_bytes(bytes) {
            Ok(doc) => {
                *out = Box::into_raw(Box::new(PolydynModel { doc }));
                PolydynStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `model` must be NULL or a handle from [`polydyn_model_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polydyn_model_free(model: *mut PolydynModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of variables, or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_model_nvars(model: *const PolydynModel) -> usize {
    model.as_ref().map_or(0, |m| m.doc.nvars())
}

/// Field size (the number of states per variable), or 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_model_states(model: *const PolydynModel) -> u32 {
    model.as_ref().map_or(0, |m| m.doc.field().characteristic())
}

/// Canonical text of the model. Release it with [`polydyn_string_free`].
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_model_to_string(model: *const PolydynModel) -> *mut c_char {
    match model.as_ref() {
        Some(m) => CString::new(m.doc.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polydyn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Find steady states and, for `max_cycle_length >= 2`, limit cycles up to that
/// length. `enumeration_cap` bounds simulation mode; 0 selects the default.
///
/// # Safety
/// `model` must be NULL or a live handle; `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn polydyn_analyze(
    model: *const PolydynModel,
    mode: PolydynMode,
    max_cycle_length: usize,
    enumeration_cap: u64,
    out: *mut *mut PolydynAttractors,
) -> PolydynStatus {
    guard(|| {
        let Some(model) = model.as_ref() else {
            return fail(PolydynStatus::NullArgument, "null model");
        };
        if out.is_null() {
            return fail(PolydynStatus::NullArgument, "null output pointer");
        }
        *out = ptr::null_mut();
        let mut options = AnalysisOptions {
            mode: match mode {
                PolydynMode::Algorithm => Mode::Algorithm,
                PolydynMode::Simulation => Mode::Simulation,
            },
            max_cycle_length,
            ..AnalysisOptions::default()
        };
        if enumeration_cap > 0 {
            options.enumeration_cap = enumeration_cap;
        }
        match analyze(&model.doc, &options) {
            Ok(analysis) => {
                *out = Box::into_raw(Box::new(PolydynAttractors {
                    nvars: model.doc.nvars(),
                    analysis,
                }));
                PolydynStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `result` must be NULL or a handle from [`polydyn_analyze`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_free(result: *mut PolydynAttractors) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_nvars(result: *const PolydynAttractors) -> usize {
    result.as_ref().map_or(0, |r| r.nvars)
}

/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_steady_count(result: *const PolydynAttractors) -> usize {
    result.as_ref().map_or(0, |r| r.analysis.report.steady_states.len())
}

/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_cycle_count(result: *const PolydynAttractors) -> usize {
    result.as_ref().map_or(0, |r| r.analysis.report.limit_cycles.len())
}

/// Length of limit cycle `index`, or 0 when out of range.
///
/// # Safety
/// `result` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_cycle_len(result: *const PolydynAttractors, index: usize) -> usize {
    result
        .as_ref()
        .and_then(|r| r.analysis.report.limit_cycles.get(index))
        .map_or(0, |c| c.len())
}

unsafe fn copy_state(coords: &[u32], buf: *mut u32, len: usize) -> PolydynStatus {
    if buf.is_null() {
        return fail(PolydynStatus::NullArgument, "null buffer");
    }
    if len < coords.len() {
        return fail(
            PolydynStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", coords.len()),
        );
    }
    ptr::copy_nonoverlapping(coords.as_ptr(), buf, coords.len());
    PolydynStatus::Ok
}

/// Copy steady state `index` into `buf` (at least `nvars` values).
///
/// # Safety
/// `result` must be NULL or a live handle; `buf` must be NULL or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_steady_state(
    result: *const PolydynAttractors,
    index: usize,
    buf: *mut u32,
    len: usize,
) -> PolydynStatus {
    let Some(r) = result.as_ref() else {
        return fail(PolydynStatus::NullArgument, "null result");
    };
    match r.analysis.report.steady_states.get(index) {
        Some(x) => copy_state(x.coords(), buf, len),
        None => fail(PolydynStatus::OutOfRange, format!("no steady state {index}")),
    }
}

/// Copy state `position` of limit cycle `index` into `buf` (at least `nvars` values).
/// Each cycle starts at its smallest state and follows the dynamics.
///
/// # Safety
/// `result` must be NULL or a live handle; `buf` must be NULL or valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn polydyn_attractors_cycle_state(
    result: *const PolydynAttractors,
    index: usize,
    position: usize,
    buf: *mut u32,
    len: usize,
) -> PolydynStatus {
    let Some(r) = result.as_ref() else {
        return fail(PolydynStatus::NullArgument, "null result");
    };
    match r
        .analysis
        .report
        .limit_cycles
        .get(index)
        .and_then(|c| c.states().get(position))
    {
        Some(x) => copy_state(x.coords(), buf, len),
        None => fail(
            PolydynStatus::OutOfRange,
            format!("no state {position} in limit cycle {index}"),
        ),
    }
}
