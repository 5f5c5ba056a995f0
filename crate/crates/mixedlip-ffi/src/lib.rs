//! C ABI over `mixedlip`. Results live behind opaque handles; their JSON
//! renderings are owned by the handle and freed with it.
//!
//! Every function returns a [`MixedlipStatus`]; on failure a message is
//! available from [`mixedlip_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixedlip::analysis::{analyze_poly, Analysis, Options};
use mixedlip::invariants::{compare, family_check, Decision, LinkAssertion, Verdict};
use mixedlip::links::LinkOptions;
use mixedlip::poly::{parse, parse_any};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedlipStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedlipDecision {
    AmbientEquivalent = 0,
    NotBilipschitzEquivalent = 1,
    TopologicallyEquivalentAtLeast = 2,
    Inconclusive = 3,
}

/// Link isotopy type asserted by the caller for `mixedlip_compare`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedlipLinkAssertion {
    None = 0,
    TrivialKnot = 1,
    Hopf = 2,
}

/// Opaque analysis of one polynomial.
pub struct MixedlipAnalysis {
    inner: Analysis,
    json: CString,
}

/// Opaque comparison or family verdict.
pub struct MixedlipVerdict {
    inner: Verdict,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn guarded(f: impl FnOnce() -> Result<(), (MixedlipStatus, String)>) -> MixedlipStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MixedlipStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            MixedlipStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (MixedlipStatus, String)> {
    if p.is_null() {
        return Err((MixedlipStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (MixedlipStatus::InvalidUtf8, e.to_string()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<CString, (MixedlipStatus, String)> {
    let s = serde_json::to_string(v).map_err(|e| (MixedlipStatus::Internal, e.to_string()))?;
    CString::new(s).map_err(|e| (MixedlipStatus::Internal, e.to_string()))
}

fn options(grid: u32) -> Result<Options, (MixedlipStatus, String)> {
    let mut o = Options::default();
    if grid != 0 {
        if grid < 64 {
            return Err((MixedlipStatus::InvalidArgument, "grid must be 0 (default) or at least 64".into()));
        }
        o.link = LinkOptions { grid: grid as usize, ..LinkOptions::default() };
    }
    Ok(o)
}

/// Message of the last failed call on this thread (empty after success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn mixedlip_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Analyse `poly`; `grid = 0` selects the default base-angle grid.
///
/// # Safety
/// `poly` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_analyze(poly: *const c_char, grid: u32, out: *mut *mut MixedlipAnalysis) -> MixedlipStatus {
    guarded(|| {
        if out.is_null() {
            return Err((MixedlipStatus::NullPointer, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let text = read_str(poly)?;
        let f = parse(text).map_err(|e| (MixedlipStatus::Parse, e.to_string()))?;
        let inner = analyze_poly(text, f, &options(grid)?);
        let json = to_json(&inner)?;
        *out = Box::into_raw(Box::new(MixedlipAnalysis { inner, json }));
        Ok(())
    })
}

/// JSON report of an analysis, owned by the handle.
///
/// # Safety
/// `a` must come from `mixedlip_analyze` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_analysis_json(a: *const MixedlipAnalysis) -> *const c_char {
    match a.as_ref() {
        Some(a) => a.json.as_ptr(),
        None => ptr::null(),
    }
}

/// # Safety
/// `a` must come from `mixedlip_analyze` (or be null) and is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_analysis_free(a: *mut MixedlipAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

fn wrap_verdict(v: Verdict, out: *mut *mut MixedlipVerdict) -> Result<(), (MixedlipStatus, String)> {
    let json = to_json(&v)?;
    unsafe { *out = Box::into_raw(Box::new(MixedlipVerdict { inner: v, json })) };
    Ok(())
}

/// Compare two analyses.
///
/// # Safety
/// `a`, `b` must be live analysis handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_compare(
    a: *const MixedlipAnalysis,
    b: *const MixedlipAnalysis,
    assertion: MixedlipLinkAssertion,
    out: *mut *mut MixedlipVerdict,
) -> MixedlipStatus {
    guarded(|| {
        if out.is_null() {
            return Err((MixedlipStatus::NullPointer, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return Err((MixedlipStatus::NullPointer, "null analysis handle".into()));
        };
        let asrt = match assertion {
            MixedlipLinkAssertion::None => None,
            MixedlipLinkAssertion::TrivialKnot => Some(LinkAssertion::TrivialKnot),
            MixedlipLinkAssertion::Hopf => Some(LinkAssertion::Hopf),
        };
        wrap_verdict(compare(&a.inner, &b.inner, asrt), out)
    })
}

/// Triviality of the family `f + εθ`.
///
/// # Safety
/// `f`, `theta` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_family(f: *const c_char, theta: *const c_char, grid: u32, out: *mut *mut MixedlipVerdict) -> MixedlipStatus {
    guarded(|| {
        if out.is_null() {
            return Err((MixedlipStatus::NullPointer, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let f = parse(read_str(f)?).map_err(|e| (MixedlipStatus::Parse, e.to_string()))?;
        let theta = parse_any(read_str(theta)?).map_err(|e| (MixedlipStatus::Parse, e.to_string()))?;
        wrap_verdict(family_check(&f, &theta, &options(grid)?), out)
    })
}

/// # Safety
/// `v` must be a live verdict handle.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_verdict_decision(v: *const MixedlipVerdict) -> MixedlipDecision {
    match v.as_ref().map(|v| v.inner.decision) {
        Some(Decision::AmbientEquivalent) => MixedlipDecision::AmbientEquivalent,
        Some(Decision::NotBilipschitzEquivalent) => MixedlipDecision::NotBilipschitzEquivalent,
        Some(Decision::TopologicallyEquivalentAtLeast) => MixedlipDecision::TopologicallyEquivalentAtLeast,
        Some(Decision::Inconclusive) | None => MixedlipDecision::Inconclusive,
    }
}

/// JSON verdict, owned by the handle.
///
/// # Safety
/// `v` must be a live verdict handle.
#[no_mangle]
pub unsafe extern "C" fn mixedlip_verdict_json(v: *const MixedlipVerdict) -> *const c_char {
    match v.as_ref() {
        Some(v) => v.json.as_ptr(),
        None => ptr::null(),
    }
}

/// # Safety
/// `v` must come from `mixedlip_compare`/`mixedlip_family` (or be null).
#[no_mangle]
pub unsafe extern "C" fn mixedlip_verdict_free(v: *mut MixedlipVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn mixedlip_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
