//! C ABI for the order-type engine.
//!
//! Engines and terms are opaque handles created and freed through this API.
//! Every fallible call returns an [`OtStatus`]; the message of the most recent
//! failure on the calling thread is available from [`ot_last_error`]. Strings
//! returned to the caller are owned by it and released with [`ot_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ordtypes::engine::{Engine, EngineConfig};
use ordtypes::ordinal::{classify_ordinal, Ordinal};
use ordtypes::{normalize, parse_term, Answer, Error, Term};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidArgument = 4,
    Capacity = 5,
    Type = 6,
    MalformedPoint = 7,
    Inconsistency = 8,
    OracleUnknown = 9,
    Panic = 10,
}

/// Three-valued answer of a decision.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OtAnswer {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// Opaque decision engine with its memo.
pub struct OtEngine(Engine);

/// Opaque normalized term.
pub struct OtTerm(Term);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> OtStatus {
    match e {
        Error::InvalidArgument(_) => OtStatus::InvalidArgument,
        Error::Capacity(_) => OtStatus::Capacity,
        Error::Syntax { .. } => OtStatus::Syntax,
        Error::Type(_) => OtStatus::Type,
        Error::MalformedPoint(_) => OtStatus::MalformedPoint,
        Error::Inconsistency(_) => OtStatus::Inconsistency,
        Error::OracleUnknown(_) => OtStatus::OracleUnknown,
    }
}

fn answer_of(a: Answer) -> OtAnswer {
    match a {
        Answer::Yes => OtAnswer::Yes,
        Answer::No => OtAnswer::No,
        Answer::Unknown => OtAnswer::Unknown,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (OtStatus, String)>) -> OtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OtStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OtStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (OtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (OtStatus, String) {
    (OtStatus::NullPointer, "null pointer argument".into())
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (OtStatus, String)> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|e| (OtStatus::InvalidUtf8, e.to_string()))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message of the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn ot_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates an engine; `choice` allows facts that depend on the axiom of choice.
#[no_mangle]
pub extern "C" fn ot_engine_new(depth: u32, choice: bool) -> *mut OtEngine {
    let config = EngineConfig { depth: depth as usize, choice, ..EngineConfig::default() };
    Box::into_raw(Box::new(OtEngine(Engine::new(config))))
}

/// # Safety
/// `engine` must be null or a handle from [`ot_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ot_engine_free(engine: *mut OtEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Parses and normalizes a term into `*out`.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ot_term_parse(src: *const c_char, out: *mut *mut OtTerm) -> OtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let t = parse_term(read_str(src)?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(OtTerm(normalize(&t))));
        Ok(())
    })
}

/// # Safety
/// `term` must be null or a handle from [`ot_term_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ot_term_free(term: *mut OtTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// The printed form of a term, or null for a null handle. Free with [`ot_string_free`].
///
/// # Safety
/// `term` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ot_term_to_string(term: *const OtTerm) -> *mut c_char {
    match term.as_ref() {
        Some(t) => into_c(t.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides `sub ⩽ sup`.
///
/// # Safety
/// All pointers must be valid live handles or writable locations.
#[no_mangle]
pub unsafe extern "C" fn ot_embeds(
    engine: *mut OtEngine,
    sub: *const OtTerm,
    sup: *const OtTerm,
    out: *mut OtAnswer,
) -> OtStatus {
    guard(|| {
        let (Some(e), Some(s), Some(t), false) = (engine.as_mut(), sub.as_ref(), sup.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = answer_of(e.0.embeds(&s.0, &t.0).answer);
        Ok(())
    })
}

/// Decides mutual embeddability.
///
/// # Safety
/// All pointers must be valid live handles or writable locations.
#[no_mangle]
pub unsafe extern "C" fn ot_equimorphic(
    engine: *mut OtEngine,
    left: *const OtTerm,
    right: *const OtTerm,
    out: *mut OtAnswer,
) -> OtStatus {
    guard(|| {
        let (Some(e), Some(s), Some(t), false) = (engine.as_mut(), left.as_ref(), right.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = answer_of(e.0.equimorphic(&s.0, &t.0).answer);
        Ok(())
    })
}

/// Decides `sub ⩽ sup` and writes the verdict with its certificate as JSON to `*out`.
///
/// # Safety
/// All pointers must be valid live handles or writable locations.
#[no_mangle]
pub unsafe extern "C" fn ot_embeds_json(
    engine: *mut OtEngine,
    sub: *const OtTerm,
    sup: *const OtTerm,
    out: *mut *mut c_char,
) -> OtStatus {
    guard(|| {
        let (Some(e), Some(s), Some(t), false) = (engine.as_mut(), sub.as_ref(), sup.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let v = e.0.embeds(&s.0, &t.0);
        *out = into_c(serde_json::to_string(&v).expect("verdicts serialize"));
        Ok(())
    })
}

/// Writes the classification profile of a term as JSON to `*out`.
///
/// # Safety
/// All pointers must be valid live handles or writable locations.
#[no_mangle]
pub unsafe extern "C" fn ot_classify_json(engine: *mut OtEngine, term: *const OtTerm, out: *mut *mut c_char) -> OtStatus {
    guard(|| {
        let (Some(e), Some(t), false) = (engine.as_mut(), term.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let p = e.0.classify_type(&t.0).map_err(lib_err)?;
        *out = into_c(serde_json::to_string(&p).expect("profiles serialize"));
        Ok(())
    })
}

/// Writes the closed-form flags of an ordinal as JSON to `*out`.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ot_ordinal_classify_json(src: *const c_char, out: *mut *mut c_char) -> OtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let a: Ordinal = read_str(src)?.parse().map_err(lib_err)?;
        *out = into_c(serde_json::to_string(&classify_ordinal(&a)).expect("profiles serialize"));
        Ok(())
    })
}
