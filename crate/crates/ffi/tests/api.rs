use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use stab_ffi::*;

fn parse(text: &str) -> *mut StabGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { stab_graph_parse(c.as_ptr(), &mut g) }, StabStatus::Ok);
    g
}

fn verdict(g: *const StabGraph) -> StabVerdict {
    let mut v = StabVerdict::Stable;
    assert_eq!(unsafe { stab_stability(g, 0, &mut v) }, StabStatus::Ok);
    v
}

#[test]
fn verdicts_through_handles() {
    let c5 = parse("c:5:1");
    let c10 = parse("c:10:1,2");
    let k2 = parse("2\n0 1\n");
    unsafe {
        assert_eq!(stab_graph_order(c5), 5);
        assert_eq!(stab_graph_edge_count(c10), 20);
        assert_eq!(verdict(c5), StabVerdict::Stable);
        assert_eq!(verdict(c10), StabVerdict::NontriviallyUnstable);
        assert_eq!(verdict(k2), StabVerdict::TriviallyUnstable);
        let mut p = ptr::null_mut();
        assert_eq!(stab_graph_product(c5, k2, StabProductKind::Direct, &mut p), StabStatus::Ok);
        assert_eq!(stab_graph_order(p), 10);
        for g in [c5, c10, k2, p] {
            stab_graph_free(g);
        }
    }
}

#[test]
fn edge_list_constructor() {
    let edges = [0usize, 1, 1, 2, 2, 0];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(stab_graph_new(3, edges.as_ptr(), 3, &mut g), StabStatus::Ok);
        assert_eq!(verdict(g), StabVerdict::Stable);
        stab_graph_free(g);
        let bad = [0usize, 0];
        assert_eq!(stab_graph_new(3, bad.as_ptr(), 1, &mut g), StabStatus::InvalidInput);
        let msg = CStr::from_ptr(stab_last_error()).to_str().unwrap();
        assert!(msg.contains("loop"), "{msg}");
    }
}

#[test]
fn json_outputs() {
    let g = parse("c:20:1,4,9,10");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(stab_classify_json(g, 0, &mut out), StabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(v["verdict"]["kind"], "nontrivially_unstable");
        assert_eq!(v["aut_order"], 80);
        stab_string_free(out);
        let spec = CString::new("c:20:1,4,9,10").unwrap();
        assert_eq!(stab_conditions_json(spec.as_ptr(), 0, &mut out), StabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(v["ncon"]["status"], "yes");
        stab_string_free(out);
        stab_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(stab_graph_parse(ptr::null(), &mut g), StabStatus::NullPointer);
        let bad = CString::new("c:10:x").unwrap();
        assert_eq!(stab_graph_parse(bad.as_ptr(), &mut g), StabStatus::InvalidInput);
        let c = parse("c:10:1,2");
        let mut out = ptr::null_mut();
        assert_eq!(stab_classify_json(c, 1, &mut out), StabStatus::BudgetExceeded);
        assert!(CStr::from_ptr(stab_last_error()).to_str().unwrap().contains("budget"));
        let mut v = StabVerdict::Stable;
        assert_eq!(stab_stability(ptr::null(), 0, &mut v), StabStatus::NullPointer);
        stab_graph_free(c);
        stab_graph_free(ptr::null_mut());
        stab_string_free(ptr::null_mut());
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/stab.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["stab_graph_parse", "stab_classify_json", "stab_string_free", "STAB_STATUS_BUDGET_EXCEEDED"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = Command::new(compiler)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, header])
            .status()
            .expect("a C compiler");
        assert!(status.success(), "{compiler} rejected the header");
    }
}
