use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use crepant_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { crepant_string_free(p) };
    s
}

fn last_error() -> String {
    let p = crepant_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn load(name: &str) -> *mut CrepantGroup {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { crepant_group_load(c(name).as_ptr(), ptr::null(), &mut g) }, CrepantStatus::Ok);
    g
}

#[test]
fn group_handle() {
    let g = load("E8");
    unsafe {
        assert_eq!(crepant_group_order(g), 120);
        assert_eq!(crepant_group_class_count(g), 9);
        let mut s = ptr::null_mut();
        assert_eq!(crepant_group_class_label(g, 0, &mut s), CrepantStatus::Ok);
        assert!(!take(s).is_empty());
        assert_eq!(crepant_group_class_label(g, 9, &mut s), CrepantStatus::InvalidArgument);
        assert!(last_error().contains("out of range"));
        crepant_group_free(g);
        assert_eq!(crepant_group_order(ptr::null()), 0);
        crepant_group_free(ptr::null_mut());
    }
}

#[test]
fn correlators() {
    let g = load("E7");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(crepant_three_point(g, c("[1]").as_ptr(), c("[ab]").as_ptr(), c("[ab]").as_ptr(), &mut s), CrepantStatus::Ok);
        assert_eq!(take(s), "1/4");
        assert_eq!(crepant_psi_one_point(g, c("[b]").as_ptr(), &mut s), CrepantStatus::Ok);
        assert_eq!(take(s), "7/12");
        assert_eq!(crepant_ch1_one_point(g, c("[b]").as_ptr(), &mut s), CrepantStatus::Ok);
        assert_eq!(take(s), "0");
        assert_eq!(crepant_ch1_one_point(g, c("[1]").as_ptr(), &mut s), CrepantStatus::InvalidArgument);
        assert_eq!(
            crepant_three_point(g, c("[1]").as_ptr(), c("zz").as_ptr(), c("[ab]").as_ptr(), &mut s),
            CrepantStatus::NotFound
        );
        assert!(last_error().contains("zz"));
        crepant_group_free(g);
    }
}

#[test]
fn localization() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(crepant_localization(c("E6").as_ptr(), 1, ptr::null(), &mut s), CrepantStatus::Ok);
        assert_eq!(take(s), "-1/(288*t)");
        assert_eq!(crepant_localization(c("E6").as_ptr(), 3, ptr::null(), &mut s), CrepantStatus::InvalidArgument);
        assert_eq!(
            crepant_localization(c("E6").as_ptr(), 1, c("/nonexistent/crepant").as_ptr(), &mut s),
            CrepantStatus::DataError
        );
    }
}

#[test]
fn verify_suites() {
    let mut s = ptr::null_mut();
    unsafe {
        let st = crepant_verify(c("localization").as_ptr(), c("D6").as_ptr(), 0, ptr::null(), CrepantFormat::Text, &mut s);
        assert_eq!(st, CrepantStatus::Ok);
        assert!(take(s).ends_with("1 of 1 reports passed\n"));
        let st = crepant_verify(c("wronskian").as_ptr(), ptr::null(), 6, ptr::null(), CrepantFormat::Jsonl, &mut s);
        assert_eq!(st, CrepantStatus::Ok);
        let reps = crepant::cli::report::parse_jsonl(&take(s)).unwrap();
        assert_eq!(reps[0].suite, "wronskian");
        let st = crepant_verify(c("change-of-vars").as_ptr(), c("A2").as_ptr(), 0, ptr::null(), CrepantFormat::Text, &mut s);
        assert_eq!(st, CrepantStatus::CheckFailed);
        assert!(take(s).contains("FAIL field"));
        let st = crepant_verify(c("three-point").as_ptr(), ptr::null(), 0, ptr::null(), CrepantFormat::Text, &mut s);
        assert_eq!(st, CrepantStatus::InvalidArgument);
        let st = crepant_verify(c("nonsense").as_ptr(), ptr::null(), 0, ptr::null(), CrepantFormat::Text, &mut s);
        assert_eq!(st, CrepantStatus::InvalidArgument);
        assert!(last_error().contains("unknown suite"));
    }
}

#[test]
fn null_arguments() {
    unsafe {
        assert_eq!(crepant_group_load(ptr::null(), ptr::null(), &mut ptr::null_mut()), CrepantStatus::InvalidArgument);
        assert_eq!(crepant_group_load(c("E6").as_ptr(), ptr::null(), ptr::null_mut()), CrepantStatus::InvalidArgument);
        let mut s = ptr::null_mut();
        assert_eq!(crepant_psi_one_point(ptr::null(), c("[b]").as_ptr(), &mut s), CrepantStatus::InvalidArgument);
        assert!(last_error().contains("null"));
    }
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { crepant_group_load(c("E6").as_ptr(), ptr::null(), &mut g) }, CrepantStatus::Ok);
    assert!(crepant_last_error().is_null());
    unsafe { crepant_group_free(g) };
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(crepant_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles the C smoke program against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libcrepant_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = deps.join(format!("crepant-ffi-smoke-{}", std::process::id()));
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout, "E7 <[1] [ab] [ab]> = 1/4\nE7 psi [b] = 7/12\nE6 genus 1 = -1/(288*t)\n");
}
