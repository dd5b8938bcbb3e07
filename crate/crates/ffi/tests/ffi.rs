use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use ordtypes_ffi::*;

fn parse(s: &str) -> *mut OtTerm {
    let src = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ot_term_parse(src.as_ptr(), &mut out) }, OtStatus::Ok);
    out
}

fn take(s: *mut std::ffi::c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { ot_string_free(s) };
    owned
}

#[test]
fn embeds_and_equimorphic() {
    let e = ot_engine_new(8, true);
    let (a, b) = (parse("2*r"), parse("r"));
    let mut ans = OtAnswer::Unknown;
    assert_eq!(unsafe { ot_embeds(e, a, b, &mut ans) }, OtStatus::Ok);
    assert_eq!(ans, OtAnswer::No);
    let (c, d) = (parse("1 + q"), parse("q"));
    assert_eq!(unsafe { ot_equimorphic(e, c, d, &mut ans) }, OtStatus::Ok);
    assert_eq!(ans, OtAnswer::Yes);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ot_embeds_json(e, c, d, &mut json) }, OtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["answer"], "YES");
    assert_eq!(take(unsafe { ot_term_to_string(a) }), "2*r");
    unsafe {
        for t in [a, b, c, d] {
            ot_term_free(t);
        }
        ot_engine_free(e);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let src = CString::new("w +").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ot_term_parse(src.as_ptr(), &mut out) }, OtStatus::Syntax);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(ot_last_error()) }.to_str().unwrap();
    assert!(msg.contains("syntax"), "{msg}");
    assert_eq!(unsafe { ot_term_parse(ptr::null(), &mut out) }, OtStatus::NullPointer);
    let mut ans = OtAnswer::Unknown;
    assert_eq!(unsafe { ot_embeds(ptr::null_mut(), ptr::null(), ptr::null(), &mut ans) }, OtStatus::NullPointer);
    let q = CString::new("q").unwrap();
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ot_ordinal_classify_json(q.as_ptr(), &mut json) }, OtStatus::Type);
    unsafe {
        ot_engine_free(ptr::null_mut());
        ot_term_free(ptr::null_mut());
        ot_string_free(ptr::null_mut());
    }
}

#[test]
fn classification_json() {
    let e = ot_engine_new(8, false);
    let q = parse("q");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { ot_classify_json(e, q, &mut json) }, OtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["indecomposable"]["answer"], "YES");
    let w = CString::new("w^(w)").unwrap();
    assert_eq!(unsafe { ot_ordinal_classify_json(w.as_ptr(), &mut json) }, OtStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
    assert_eq!(v["untranscendable"], true);
    unsafe {
        ot_term_free(q);
        ot_engine_free(e);
    }
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(manifest().join("include/ordtypes.h")).unwrap();
    for name in [
        "ot_engine_new",
        "ot_engine_free",
        "ot_term_parse",
        "ot_term_free",
        "ot_term_to_string",
        "ot_string_free",
        "ot_embeds",
        "ot_equimorphic",
        "ot_embeds_json",
        "ot_classify_json",
        "ot_ordinal_classify_json",
        "ot_last_error",
        "OT_STATUS_SYNTAX",
        "OT_ANSWER_UNKNOWN",
        "typedef struct OtEngine OtEngine",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C program against the static library when a C compiler is present.
#[test]
fn c_program_links_and_runs() {
    let target = manifest().join("../../target/debug");
    let lib = target.join("libordtypes_ffi.a");
    let cc_ok = Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success());
    if !cc_ok || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = std::env::temp_dir().join(format!("ordtypes_ffi_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest().join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2*r");
}
