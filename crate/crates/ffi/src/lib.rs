//! C ABI for the synthesis pipeline.
//!
//! Handles are opaque pointers created and destroyed here; strings returned
//! to the caller are NUL-terminated, UTF-8, and must be released with
//! [`anf_tdepth_string_free`]. Every fallible call returns a status code;
//! on failure [`anf_tdepth_last_error`] exposes a message for the calling
//! thread.

use anf_tdepth::anf::{parse_anf, parse_truth_tables, MultiOutputFunction};
use anf_tdepth::decomp::ToffoliVariant;
use anf_tdepth::estimate::{function_specific_estimate, summation_bounds, theorem1_bounds};
use anf_tdepth::synth::{synthesize, Synthesis};
use anf_tdepth::verify::exhaustive_check;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    SynthesisError = 5,
    VerificationFailed = 6,
}

/// Toffoli decomposition selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnfVariant {
    TDepth1 = 0,
    LogicalAnd = 1,
}

impl From<AnfVariant> for ToffoliVariant {
    fn from(v: AnfVariant) -> Self {
        match v {
            AnfVariant::TDepth1 => ToffoliVariant::TDepth1,
            AnfVariant::LogicalAnd => ToffoliVariant::LogicalAnd,
        }
    }
}

/// Opaque multi-output Boolean function.
pub struct AnfFunction(MultiOutputFunction);

/// Opaque synthesis result: circuits plus the measured report.
pub struct AnfSynthesis(Synthesis);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).unwrap_or_default();
    });
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn anf_tdepth_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
unsafe fn parse_with(
    text: *const c_char,
    out: *mut *mut AnfFunction,
    parser: impl Fn(&str) -> anf_tdepth::Result<MultiOutputFunction>,
) -> AnfStatus {
    if text.is_null() || out.is_null() {
        set_error("null argument");
        return AnfStatus::NullArgument;
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("input is not valid UTF-8");
            return AnfStatus::InvalidUtf8;
        }
    };
    match parser(text) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(AnfFunction(f)));
            AnfStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            *out = ptr::null_mut();
            AnfStatus::ParseError
        }
    }
}

/// Parses ANF text (same grammar as the CLI). On success stores a new
/// handle in `out`; release it with [`anf_tdepth_function_free`].
///
/// # Safety
/// `text` must be NUL-terminated and `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_parse_anf(
    text: *const c_char,
    out: *mut *mut AnfFunction,
) -> AnfStatus {
    parse_with(text, out, parse_anf)
}

/// Parses truth-table text (bit/hex lines or a "vars N outs M" table).
///
/// # Safety
/// `text` must be NUL-terminated and `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_parse_table(
    text: *const c_char,
    out: *mut *mut AnfFunction,
) -> AnfStatus {
    parse_with(text, out, parse_truth_tables)
}

/// # Safety
/// `f` must be a handle from a parse call, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_free(f: *mut AnfFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Input arity; 0 on null.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_inputs(f: *const AnfFunction) -> u32 {
    f.as_ref().map_or(0, |f| f.0.n() as u32)
}

/// Output count; 0 on null.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_outputs(f: *const AnfFunction) -> u32 {
    f.as_ref().map_or(0, |f| f.0.m() as u32)
}

/// Maximum algebraic degree; 0 on null.
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_degree(f: *const AnfFunction) -> u32 {
    f.as_ref().map_or(0, |f| f.0.degree() as u32)
}

/// Evaluates the function at point `x` (variable i is bit i).
///
/// # Safety
/// `f` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_evaluate(f: *const AnfFunction, x: u64) -> u64 {
    f.as_ref().map_or(0, |f| f.0.evaluate(x))
}

/// Synthesizes a circuit. On success stores a handle in `out`; release it
/// with [`anf_tdepth_synthesis_free`].
///
/// # Safety
/// `f` must be a live handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_synthesize(
    f: *const AnfFunction,
    variant: AnfVariant,
    out: *mut *mut AnfSynthesis,
) -> AnfStatus {
    let Some(f) = f.as_ref() else {
        set_error("null function handle");
        return AnfStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null output pointer");
        return AnfStatus::NullArgument;
    }
    match synthesize(&f.0, variant.into()) {
        Ok(s) => {
            *out = Box::into_raw(Box::new(AnfSynthesis(s)));
            AnfStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            *out = ptr::null_mut();
            AnfStatus::SynthesisError
        }
    }
}

/// # Safety
/// `s` must be a handle from [`anf_tdepth_synthesize`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_synthesis_free(s: *mut AnfSynthesis) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

fn export_string(out: *mut *mut c_char, text: String) -> AnfStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(_) => {
            set_error("interior NUL in output");
            return AnfStatus::SynthesisError;
        }
    };
    unsafe { *out = c.into_raw() };
    AnfStatus::Ok
}

/// JSON resource report of a synthesis. The string must be released with
/// [`anf_tdepth_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_synthesis_report_json(
    s: *const AnfSynthesis,
    out: *mut *mut c_char,
) -> AnfStatus {
    let Some(s) = s.as_ref() else {
        set_error("null synthesis handle");
        return AnfStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null output pointer");
        return AnfStatus::NullArgument;
    }
    export_string(out, serde_json::to_string_pretty(&s.0.report).unwrap())
}

/// Circuit text of a synthesis (the QASM-compatible dialect). Release with
/// [`anf_tdepth_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_synthesis_circuit_text(
    s: *const AnfSynthesis,
    out: *mut *mut c_char,
) -> AnfStatus {
    let Some(s) = s.as_ref() else {
        set_error("null synthesis handle");
        return AnfStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null output pointer");
        return AnfStatus::NullArgument;
    }
    export_string(out, s.0.circuit.export_text())
}

/// Exhaustively checks a synthesis against its function at Toffoli
/// granularity.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_synthesis_verify(
    s: *const AnfSynthesis,
    f: *const AnfFunction,
) -> AnfStatus {
    let (Some(s), Some(f)) = (s.as_ref(), f.as_ref()) else {
        set_error("null handle");
        return AnfStatus::NullArgument;
    };
    match exhaustive_check(&s.0.toffoli_circuit, &f.0) {
        Ok(report) if report.passed() => AnfStatus::Ok,
        Ok(report) => {
            set_error(format!(
                "functional check failed on {} of {} points",
                report.failures.len(),
                report.checked
            ));
            AnfStatus::VerificationFailed
        }
        Err(e) => {
            set_error(e.to_string());
            AnfStatus::DomainError
        }
    }
}

/// JSON record with the closed-form and summation bounds for (n, m), plus
/// the identity check between them. Release with
/// [`anf_tdepth_string_free`].
///
/// # Safety
/// `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_estimate_json(
    n: u32,
    m: u32,
    variant: AnfVariant,
    out: *mut *mut c_char,
) -> AnfStatus {
    if out.is_null() {
        set_error("null output pointer");
        return AnfStatus::NullArgument;
    }
    let closed = match theorem1_bounds(n as usize, m as usize, variant.into()) {
        Ok(b) => b,
        Err(e) => {
            set_error(e.to_string());
            return AnfStatus::DomainError;
        }
    };
    let sums = match summation_bounds(n as usize, m as usize) {
        Ok(b) => b,
        Err(e) => {
            set_error(e.to_string());
            return AnfStatus::DomainError;
        }
    };
    let identity = closed.ancilla == sums.ancilla
        && closed.t_count == sums.t_count
        && closed.cnot_count == sums.cnot_count;
    let payload = serde_json::json!({
        "closed_form": closed,
        "summation": sums,
        "identity_check": identity,
    });
    export_string(out, serde_json::to_string_pretty(&payload).unwrap())
}

/// JSON record with the function-specific accounting. Release with
/// [`anf_tdepth_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_function_estimate_json(
    f: *const AnfFunction,
    variant: AnfVariant,
    out: *mut *mut c_char,
) -> AnfStatus {
    let Some(f) = f.as_ref() else {
        set_error("null function handle");
        return AnfStatus::NullArgument;
    };
    if out.is_null() {
        set_error("null output pointer");
        return AnfStatus::NullArgument;
    }
    let bounds = function_specific_estimate(&f.0, variant.into());
    export_string(out, serde_json::to_string_pretty(&bounds).unwrap())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must originate from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn anf_tdepth_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
