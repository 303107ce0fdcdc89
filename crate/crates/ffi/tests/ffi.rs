use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hamfvs_ffi::*;

const C3: &str = "p fvs 3 3\ne 1 2\ne 2 3\ne 1 3\n";

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hamfvs_string_free(s) };
    out
}

fn parse(text: &str) -> (HamfvsStatus, *mut HamfvsInstance) {
    let c = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let st = unsafe { hamfvs_instance_parse(c.as_ptr(), &mut inst) };
    (st, inst)
}

#[test]
fn parse_solve_free() {
    let (st, inst) = parse(C3);
    assert_eq!(st, HamfvsStatus::Ok);
    unsafe {
        assert_eq!(hamfvs_instance_order(inst), 3);
        assert_eq!(hamfvs_instance_size(inst), 3);
        assert_eq!(hamfvs_instance_budget(inst), 0);
        let mut opt = 0usize;
        assert_eq!(hamfvs_solve(inst, 0.0, &mut opt), HamfvsStatus::Ok);
        assert_eq!(opt, 1);
        hamfvs_instance_free(inst);
    }
}

#[test]
fn reduce_and_verify() {
    let (_, inst) = parse("p fvs 3 3\nk 1\ne 1 2\ne 2 3\ne 1 3\n");
    let target = CString::new("4reg-planar").unwrap();
    let mut red = ptr::null_mut();
    unsafe {
        assert_eq!(hamfvs_reduce(inst, target.as_ptr(), &mut red), HamfvsStatus::Ok);
        assert_eq!(hamfvs_reduction_budget(red), 10);
        let graph = take(hamfvs_reduction_graph(red));
        let trace = take(hamfvs_reduction_trace(red));
        assert!(graph.starts_with("p fvs 24 48\n"));
        let (g, t) = (CString::new(graph).unwrap(), CString::new(trace.clone()).unwrap());
        assert_eq!(hamfvs_verify(g.as_ptr(), t.as_ptr()), HamfvsStatus::Ok);
        let bad = CString::new(trace.replacen("\"k_after\": 10", "\"k_after\": 11", 1)).unwrap();
        assert_eq!(hamfvs_verify(g.as_ptr(), bad.as_ptr()), HamfvsStatus::Certification);
        hamfvs_reduction_free(red);
        hamfvs_instance_free(inst);
    }
}

#[test]
fn errors_map_to_status() {
    let (st, inst) = parse("p fvs 2 1\ne 1 1\n");
    assert_eq!(st, HamfvsStatus::Format);
    assert!(inst.is_null());
    assert_eq!(take(hamfvs_last_error()), "line 2: self-loop");
    let (_, inst) = parse(C3);
    let target = CString::new("preg-ham:2").unwrap();
    let mut red = ptr::null_mut();
    unsafe {
        assert_eq!(hamfvs_reduce(inst, target.as_ptr(), &mut red), HamfvsStatus::Precondition);
        assert_eq!(hamfvs_reduce(inst, ptr::null(), &mut red), HamfvsStatus::InvalidArgument);
        hamfvs_instance_free(inst);
        hamfvs_instance_free(ptr::null_mut());
        hamfvs_string_free(ptr::null_mut());
    }
}

#[test]
fn gadget_report_json() {
    let kind = CString::new("R").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hamfvs_gadget_report(kind.as_ptr(), 0, &mut out) }, HamfvsStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["min_fvs"], 3);
    let y = CString::new("Y").unwrap();
    assert_eq!(unsafe { hamfvs_gadget_report(y.as_ptr(), 2, &mut out) }, HamfvsStatus::Precondition);
}

#[test]
fn header_is_current_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/hamfvs.h")).unwrap();
    for f in ["hamfvs_instance_parse", "hamfvs_reduce", "hamfvs_verify", "hamfvs_string_free", "hamfvs_last_error"] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let lib_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).parent().unwrap().join(if cfg!(debug_assertions) {
        "debug"
    } else {
        "release"
    });
    let lib = lib_dir.join("libhamfvs_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link test: no static library or C compiler");
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_smoke");
    let st = Command::new("cc")
        .arg(dir.join("tests/c_smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C smoke test exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "k=9\nline 2: self-loop\n");
}
