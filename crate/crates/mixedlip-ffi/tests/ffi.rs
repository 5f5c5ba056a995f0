use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use mixedlip_ffi::*;

fn analyze(s: &str) -> *mut MixedlipAnalysis {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { mixedlip_analyze(c.as_ptr(), 0, &mut out) };
    assert_eq!(st, MixedlipStatus::Ok);
    assert!(!out.is_null());
    out
}

#[test]
fn analyze_and_read_json() {
    let a = analyze("u^8 + v^3 u^2 + ~v^6 u^2 + ~v^5 u + v^4 ~v^4");
    let json = unsafe { CStr::from_ptr(mixedlip_analysis_json(a)) }.to_str().unwrap();
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["gammaInn"]["p_inn"], serde_json::json!([[2, 1], [1, 2]]));
    unsafe { mixedlip_analysis_free(a) };
}

#[test]
fn parse_errors_are_reported() {
    let c = CString::new("u + + ").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { mixedlip_analyze(c.as_ptr(), 0, &mut out) };
    assert_eq!(st, MixedlipStatus::Parse);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(mixedlip_last_error()) }.to_str().unwrap();
    assert!(!msg.is_empty());
    let st = unsafe { mixedlip_analyze(ptr::null(), 0, &mut out) };
    assert_eq!(st, MixedlipStatus::NullPointer);
    let one = CString::new("u").unwrap();
    assert_eq!(unsafe { mixedlip_analyze(one.as_ptr(), 10, &mut out) }, MixedlipStatus::InvalidArgument);
}

#[test]
fn compare_and_family() {
    let a = analyze("(u + v^2*~v)*(u*~u + (v*~v)^2*v^2 + 2*i*(v*~v)^3)");
    let b = analyze("u*(u*~u + v^2 + 2*i*v*~v)");
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { mixedlip_compare(a, b, MixedlipLinkAssertion::None, &mut v) }, MixedlipStatus::Ok);
    assert_eq!(unsafe { mixedlip_verdict_decision(v) }, MixedlipDecision::AmbientEquivalent);
    let json = unsafe { CStr::from_ptr(mixedlip_verdict_json(v)) }.to_str().unwrap();
    assert!(json.contains("\"decision\":\"ambient-equivalent\""));
    unsafe {
        mixedlip_verdict_free(v);
        mixedlip_analysis_free(a);
        mixedlip_analysis_free(b);
    }
    let (f, t) = (CString::new("u*v + u^4 + v^4").unwrap(), CString::new("u^3 + v^3").unwrap());
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { mixedlip_family(f.as_ptr(), t.as_ptr(), 0, &mut v) }, MixedlipStatus::Ok);
    assert_eq!(unsafe { mixedlip_verdict_decision(v) }, MixedlipDecision::AmbientEquivalent);
    unsafe { mixedlip_verdict_free(v) };
    assert_eq!(unsafe { mixedlip_compare(ptr::null(), ptr::null(), MixedlipLinkAssertion::None, &mut v) }, MixedlipStatus::NullPointer);
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(mixedlip_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/mixedlip.h");
    let dir = std::env::temp_dir().join(format!("mixedlip-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{ MixedlipAnalysis *a = 0; MixedlipStatus s = mixedlip_analyze(\"u\", 0, &a); (void)s; mixedlip_analysis_free(a); return 0; }}\n"
        ),
    )
    .unwrap();
    let status = Command::new("cc").args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"]).arg(&src).status().expect("a C compiler (cc) is required");
    assert!(status.success());
}
