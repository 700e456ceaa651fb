use std::ffi::{CStr, CString};
use std::ptr;

use brace8p_ffi::*;

struct Handle(*mut Brace8pClassification);

impl Handle {
    fn new() -> Self {
        let mut h = ptr::null_mut();
        assert_eq!(
            unsafe { brace8p_classification_new(&mut h) },
            Brace8pStatus::Ok
        );
        Handle(h)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { brace8p_classification_free(self.0) }
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(brace8p_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn totals() {
    let h = Handle::new();
    for (r, want) in [(3, 90), (7, 90), (5, 106), (1, 108)] {
        let mut n = 0;
        assert_eq!(
            unsafe { brace8p_table_total(h.0, r, &mut n) },
            Brace8pStatus::Ok
        );
        assert_eq!(n, want);
    }
}

#[test]
fn cells_and_classes() {
    let h = Handle::new();
    let mut n = 0;
    let (e, t) = (CString::new("8").unwrap(), CString::new("C8").unwrap());
    assert_eq!(
        unsafe { brace8p_table_cell(h.0, 1, e.as_ptr(), t.as_ptr(), &mut n) },
        Brace8pStatus::Ok
    );
    assert_eq!(n, 8);
    for (g, want) in [("8", 5), ("4x2", 14), ("2x2x2", 8)] {
        let g = CString::new(g).unwrap();
        assert_eq!(
            unsafe { brace8p_holomorph_class_count(h.0, g.as_ptr(), &mut n) },
            Brace8pStatus::Ok
        );
        assert_eq!(n, want);
    }
}

#[test]
fn errors() {
    let h = Handle::new();
    let mut n = 0;
    assert_eq!(
        unsafe { brace8p_table_total(h.0, 2, &mut n) },
        Brace8pStatus::InvalidArgument
    );
    assert!(!last_error().is_empty());
    let g = CString::new("4x4").unwrap();
    assert_eq!(
        unsafe { brace8p_holomorph_class_count(h.0, g.as_ptr(), &mut n) },
        Brace8pStatus::InvalidArgument
    );
    let g = CString::new("8").unwrap();
    let (mut a, mut b) = (0, 0);
    assert_eq!(
        unsafe { brace8p_oracle_check(h.0, 7, g.as_ptr(), &mut a, &mut b) },
        Brace8pStatus::UnsupportedPrime
    );
    assert!(last_error().contains("91"));
    assert_eq!(
        unsafe { brace8p_table_total(h.0, 5, ptr::null_mut()) },
        Brace8pStatus::NullPointer
    );
}

#[test]
fn oracle() {
    let h = Handle::new();
    let g = CString::new("8").unwrap();
    let (mut a, mut b) = (0, 0);
    assert_eq!(
        unsafe { brace8p_oracle_check(h.0, 11, g.as_ptr(), &mut a, &mut b) },
        Brace8pStatus::Ok
    );
    assert_eq!((a, b), (14, 14));
}

#[test]
fn json() {
    let h = Handle::new();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { brace8p_table_json(h.0, 5, &mut s) },
        Brace8pStatus::Ok
    );
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { brace8p_string_free(s) };
    let t: brace8p::BraceTable = brace8p::report::from_json(&text).unwrap();
    assert_eq!(t.total, 106);
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/brace8p.h")).unwrap();
    for name in [
        "typedef struct Brace8pClassification Brace8pClassification;",
        "BRACE8P_STATUS_UNSUPPORTED_PRIME = 3",
        "brace8p_classification_new",
        "brace8p_classification_free",
        "brace8p_table_total",
        "brace8p_table_cell",
        "brace8p_holomorph_class_count",
        "brace8p_oracle_check",
        "brace8p_table_json",
        "brace8p_string_free",
        "brace8p_last_error",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles `tests/c/smoke.c` against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| {
        std::process::Command::new(c)
            .arg("--version")
            .output()
            .is_ok()
    }) else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libbrace8p_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let out = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("brace8p_smoke");
    let status = std::process::Command::new(cc)
        .arg(format!("{dir}/tests/c/smoke.c"))
        .arg(format!("-I{dir}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = std::process::Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout), "ok\n");
}
