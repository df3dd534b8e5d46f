//! Exercises the C ABI from Rust, and from C through the generated header.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use iet3_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = iet3_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn worked_spec() -> *mut Iet3Spec {
    let mut spec = ptr::null_mut();
    let st = iet3_spec_new(
        cs("1,2,-1").as_ptr(),
        cs("0+1*e").as_ptr(),
        cs("1/2+1/2*e").as_ptr(),
        cs("0-1/2*e").as_ptr(),
        &mut spec,
    );
    assert_eq!(st, Iet3Status::Ok);
    spec
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    iet3_string_free(p);
    s
}

#[test]
fn decide_and_images() {
    unsafe {
        let spec = worked_spec();
        let mut report = ptr::null_mut();
        assert_eq!(iet3_synthesize(spec, 0, &mut report), Iet3Status::Ok);
        let mut v = Iet3Verdict::Degenerate;
        assert_eq!(iet3_report_verdict(report, &mut v), Iet3Status::Ok);
        assert_eq!(v, Iet3Verdict::Invariant);
        for (letter, img) in [(b'A', "BBCAC"), (b'B', "BBCBBCAC"), (b'C', "BCAC")] {
            let mut out = ptr::null_mut();
            assert_eq!(iet3_report_image(report, letter as c_char, &mut out), Iet3Status::Ok);
            assert_eq!(take_string(out), img);
        }
        let mut out = ptr::null_mut();
        assert_eq!(iet3_report_image(report, b'X' as c_char, &mut out), Iet3Status::Parse);
        let mut json = ptr::null_mut();
        assert_eq!(iet3_report_to_json(report, &mut json), Iet3Status::Ok);
        let json = take_string(json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["lambda"], "5+2*e");
        assert_eq!(v["checks"]["homothety"], true);
        iet3_report_free(report);
        iet3_spec_free(spec);
    }
}

#[test]
fn verdicts_and_errors() {
    unsafe {
        let mut report = ptr::null_mut();
        let st = iet3_decide_params(
            cs("1,2,-1").as_ptr(),
            cs("e").as_ptr(),
            cs("e").as_ptr(),
            cs("0").as_ptr(),
            ptr::null(),
            ptr::null(),
            ptr::null(),
            ptr::null(),
            0,
            &mut report,
        );
        assert_eq!(st, Iet3Status::Ok);
        let mut v = Iet3Verdict::Invariant;
        iet3_report_verdict(report, &mut v);
        assert_eq!(v, Iet3Verdict::Degenerate);
        iet3_report_free(report);

        let mut spec = ptr::null_mut();
        let st = iet3_spec_new(
            cs("1,2,-1").as_ptr(),
            cs("e").as_ptr(),
            cs("1/2+1/2*e").as_ptr(),
            cs("-3/2+7/2*e").as_ptr(),
            &mut spec,
        );
        assert_eq!(st, Iet3Status::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(iet3_decide(spec, 0, &mut report), Iet3Status::Ok);
        let mut v = Iet3Verdict::Invariant;
        iet3_report_verdict(report, &mut v);
        assert_eq!(v, Iet3Verdict::NotInvariant);
        let mut out = ptr::null_mut();
        assert_eq!(iet3_report_image(report, b'A' as c_char, &mut out), Iet3Status::NotApplicable);
        iet3_report_free(report);
        let mut report = ptr::null_mut();
        assert_eq!(iet3_synthesize(spec, 0, &mut report), Iet3Status::NotApplicable);
        assert!(last_error().contains("NotInvariant"));
        assert!(report.is_null());
        iet3_spec_free(spec);

        let mut spec = ptr::null_mut();
        let bad = iet3_spec_new(cs("1,2,-1").as_ptr(), cs("e").as_ptr(), cs("1/2").as_ptr(), cs("0").as_ptr(), &mut spec);
        assert_eq!(bad, Iet3Status::InvalidSpec);
        assert!(spec.is_null());
        let parse = iet3_spec_new(cs("1,2,-1").as_ptr(), cs("e+").as_ptr(), cs("1/2").as_ptr(), cs("0").as_ptr(), &mut spec);
        assert_eq!(parse, Iet3Status::Parse);
        let field = iet3_spec_new(cs("1,0,-4").as_ptr(), cs("e").as_ptr(), cs("1/2").as_ptr(), cs("0").as_ptr(), &mut spec);
        assert_eq!(field, Iet3Status::DegenerateField);
        let null = iet3_spec_new(ptr::null(), cs("e").as_ptr(), cs("1/2").as_ptr(), cs("0").as_ptr(), &mut spec);
        assert_eq!(null, Iet3Status::NullPointer);
        assert!(last_error().contains("field"));
        let budget_spec = worked_spec();
        let mut report = ptr::null_mut();
        assert_eq!(iet3_decide(budget_spec, 2, &mut report), Iet3Status::StepBudgetExceeded);
        iet3_spec_free(budget_spec);
        // freeing null is a no-op
        iet3_spec_free(ptr::null_mut());
        iet3_report_free(ptr::null_mut());
        iet3_string_free(ptr::null_mut());
    }
}

#[test]
fn orbit_buffer_protocol() {
    unsafe {
        let spec = worked_spec();
        let mut written = 0usize;
        assert_eq!(iet3_code_orbit(spec, -5, 20, ptr::null_mut(), 0, &mut written), Iet3Status::BufferTooSmall);
        assert_eq!(written, 25);
        let mut buf = vec![0u8; written];
        assert_eq!(iet3_code_orbit(spec, -5, 20, buf.as_mut_ptr(), buf.len(), &mut written), Iet3Status::Ok);
        let expected: Vec<u8> = iet3_core::iet::code_orbit(
            &iet3_core::report::ParamSet {
                field: Some(iet3_core::report::FieldInput::Text("1,2,-1".into())),
                eps: Some("e".into()),
                l: Some("1/2+1/2*e".into()),
                c: Some("-1/2*e".into()),
                ..Default::default()
            }
            .spec()
            .unwrap(),
            -5,
            20,
        )
        .iter()
        .map(|l| l.byte())
        .collect();
        assert_eq!(buf, expected);
        assert_eq!(iet3_code_orbit(spec, 3, 1, buf.as_mut_ptr(), buf.len(), &mut written), Iet3Status::InvalidSpec);
        iet3_spec_free(spec);
    }
}

#[test]
fn raw_constructor_and_version() {
    unsafe {
        let mut spec = ptr::null_mut();
        let st = iet3_spec_new_raw(
            cs("1,0,-2").as_ptr(),
            cs("3*sqrt(2)/2-2").as_ptr(),
            cs("1-sqrt(2)/2").as_ptr(),
            cs("1-sqrt(2)/2").as_ptr(),
            cs("(sqrt(2)-1)/2").as_ptr(),
            &mut spec,
        );
        assert_eq!(st, Iet3Status::Ok, "{}", last_error());
        let mut report = ptr::null_mut();
        assert_eq!(iet3_synthesize(spec, 0, &mut report), Iet3Status::Ok);
        let mut out = ptr::null_mut();
        iet3_report_image(report, b'C' as c_char, &mut out);
        assert_eq!(take_string(out), "BCAC");
        iet3_report_free(report);
        iet3_spec_free(spec);
        let v = CStr::from_ptr(iet3_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

fn header() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include").join("iet3.h");
    std::fs::read_to_string(path).expect("generated header")
}

#[test]
fn header_declares_the_interface() {
    let h = header();
    for sym in [
        "iet3_spec_new",
        "iet3_spec_new_raw",
        "iet3_spec_free",
        "iet3_decide",
        "iet3_decide_params",
        "iet3_synthesize",
        "iet3_report_verdict",
        "iet3_report_to_json",
        "iet3_report_image",
        "iet3_report_free",
        "iet3_code_orbit",
        "iet3_string_free",
        "iet3_last_error_message",
        "iet3_version",
        "typedef struct Iet3Spec Iet3Spec",
        "typedef struct Iet3Report Iet3Report",
        "IET3_STATUS_OK = 0",
        "IET3_STATUS_BUFFER_TOO_SMALL",
        "IET3_VERDICT_DEGENERATE = 2",
        "#ifndef IET3_H",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

/// Compiles and runs a C client against the static library.
#[test]
fn c_client_links_and_runs() {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib_dir = deps.parent().unwrap().to_path_buf();
    let lib = lib_dir.join("libiet3_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("client.c");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("client");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "iet3.h"

int main(void) {
    Iet3Spec *spec = NULL;
    if (iet3_spec_new("1,2,-1", "e", "1/2+1/2*e", "-1/2*e", &spec) != IET3_STATUS_OK) return 10;
    Iet3Report *report = NULL;
    if (iet3_synthesize(spec, 0, &report) != IET3_STATUS_OK) return 11;
    Iet3Verdict v;
    iet3_report_verdict(report, &v);
    if (v != IET3_VERDICT_INVARIANT) return 12;
    char *img = NULL;
    iet3_report_image(report, 'B', &img);
    printf("B -> %s\n", img);
    int ok = strcmp(img, "BBCBBCAC") == 0;
    iet3_string_free(img);
    size_t n = 0;
    char buf[16];
    if (iet3_code_orbit(spec, 0, 16, (uint8_t *)buf, sizeof buf, &n) != IET3_STATUS_OK || n != 16) return 13;
    if (iet3_spec_new("1,2,-1", "e", "1/2", "0", &spec) != IET3_STATUS_INVALID_SPEC) return 14;
    printf("error: %s\n", iet3_last_error_message());
    iet3_report_free(report);
    return ok ? 0 : 15;
}
"#,
    )
    .unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler");
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&exe).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("B -> BBCBBCAC"));
    assert!(text.contains("error: invalid parameters"));
}
