use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use middle_cube_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    mc_string_free(p);
    s
}

unsafe fn load(spec: &str) -> *mut McGraph {
    let mut g = ptr::null_mut();
    assert_eq!(mc_graph_from_spec(cstr(spec).as_ptr(), &mut g), McStatus::Ok);
    g
}

fn last_error() -> Option<String> {
    let p = mc_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

#[test]
fn basic_queries() {
    unsafe {
        let g = load("middle-cube:3");
        let (mut n, mut m, mut d) = (0, 0, 0);
        let mut bip = false;
        assert_eq!(mc_graph_order(g, &mut n), McStatus::Ok);
        assert_eq!(mc_graph_size(g, &mut m), McStatus::Ok);
        assert_eq!(mc_graph_diameter(g, &mut d), McStatus::Ok);
        assert_eq!(mc_graph_is_bipartite(g, &mut bip), McStatus::Ok);
        assert_eq!((n, m, d, bip), (20, 30, 5, true));
        mc_graph_free(g);
    }
}

#[test]
fn doubles_and_text() {
    unsafe {
        let g = load("complete:3");
        let mut d = ptr::null_mut();
        assert_eq!(mc_graph_bipartite_double(g, &mut d), McStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(mc_graph_edge_list(d, &mut text), McStatus::Ok);
        assert_eq!(take_string(text), "6 6\n0 4\n0 5\n1 3\n1 5\n2 3\n2 4\n");
        let mut e = ptr::null_mut();
        assert_eq!(mc_graph_extended_double(g, &mut e), McStatus::Ok);
        let mut m = 0;
        assert_eq!(mc_graph_size(e, &mut m), McStatus::Ok);
        assert_eq!(m, 9);
        let mut json = ptr::null_mut();
        assert_eq!(mc_graph_json(g, &mut json), McStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(v["order"], 3);
        for h in [g, d, e] {
            mc_graph_free(h);
        }
    }
}

#[test]
fn spectrum_and_analysis() {
    unsafe {
        let g = load("middle-cube:3");
        let mut json = ptr::null_mut();
        assert_eq!(mc_spectrum_json(g, &mut json), McStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        let mults: Vec<u64> = v["eigenvalues"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| e["multiplicity"].as_u64().unwrap())
            .collect();
        assert_eq!(mults, vec![1, 4, 5, 5, 4, 1]);

        let mut passed = false;
        assert_eq!(mc_analyze_json(g, ptr::null(), &mut json, &mut passed), McStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert!(passed);
        assert_eq!(report["schema"], 1);
        assert_eq!(report["checks"].as_array().unwrap().len(), 6);

        assert_eq!(
            mc_analyze_json(g, cstr("spectrum,bogus").as_ptr(), &mut json, ptr::null_mut()),
            McStatus::InvalidArgument
        );
        assert!(last_error().unwrap().contains("bogus"));
        mc_graph_free(g);
    }
}

#[test]
fn hamilton() {
    unsafe {
        let g = load("middle-cube:3");
        let mut status = McHamiltonStatus::ProvenNone;
        let mut report = ptr::null_mut();
        assert_eq!(mc_hamilton(g, 100_000_000, &mut status, &mut report), McStatus::Ok);
        assert_eq!(status, McHamiltonStatus::Found);
        let v: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(v["cycle"].as_array().unwrap().len(), 20);
        assert_eq!(v["valid"], true);
        mc_graph_free(g);

        let g = load("path:4");
        assert_eq!(mc_hamilton(g, 10, &mut status, ptr::null_mut()), McStatus::Ok);
        assert_eq!(status, McHamiltonStatus::ProvenNone);
        mc_graph_free(g);
    }
}

#[test]
fn errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(mc_graph_from_spec(cstr("hypercube:0").as_ptr(), &mut g), McStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(last_error().unwrap().contains("hypercube"));

        assert_eq!(mc_graph_from_spec(ptr::null(), &mut g), McStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(mc_graph_from_spec(bad.as_ptr().cast(), &mut g), McStatus::InvalidUtf8);

        assert_eq!(
            mc_graph_from_edge_list(cstr("3 1\n2 1\n").as_ptr(), &mut g),
            McStatus::GraphError
        );
        assert!(last_error().unwrap().contains("line 2"));

        assert_eq!(
            mc_graph_from_edge_list(cstr("4 2\n0 1\n2 3\n").as_ptr(), &mut g),
            McStatus::Ok
        );
        let mut d = 0;
        assert_eq!(mc_graph_diameter(g, &mut d), McStatus::GraphError);
        assert_eq!(mc_graph_order(g, ptr::null_mut()), McStatus::NullPointer);
        assert_eq!(mc_graph_order(ptr::null(), &mut d), McStatus::NullPointer);

        // A successful call clears the previous message.
        assert_eq!(mc_graph_size(g, &mut d), McStatus::Ok);
        assert!(last_error().is_none());
        mc_graph_free(g);
        mc_graph_free(ptr::null_mut());
        mc_string_free(ptr::null_mut());
    }
}

#[test]
fn load_accepts_paths() {
    let dir = tempdir();
    let path = dir.join("tri.txt");
    std::fs::write(&path, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(mc_graph_load(cstr(path.to_str().unwrap()).as_ptr(), &mut g), McStatus::Ok);
        let mut m = 0;
        assert_eq!(mc_graph_size(g, &mut m), McStatus::Ok);
        assert_eq!(m, 3);
        mc_graph_free(g);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(mc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn tempdir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Directory holding this test's sibling artifacts (`target/<profile>`).
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler available, skipping");
        return;
    }
    let lib = profile_dir().join("libmiddle_cube_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = tempdir().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
