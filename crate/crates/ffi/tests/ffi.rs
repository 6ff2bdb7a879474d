use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use twistkit::fixtures::level30;
use twistkit_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tk_string_free(p) };
    s
}

fn last_error() -> String {
    let p = tk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn load(json: &str) -> *mut TkEigenSystem {
    let c = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { tk_eigensystem_from_json(c.as_ptr(), &mut h) }, TkStatus::Ok);
    h
}

#[test]
fn eigensystem_twists_and_lift() {
    let pair = level30().unwrap();
    let f = load(&pair.left.to_json().to_string());
    let g = load(&pair.right.to_json().to_string());
    unsafe {
        let (mut level, mut weight, mut degree) = (0, 0, 0);
        assert_eq!(tk_eigensystem_info(f, &mut level, &mut weight, &mut degree), TkStatus::Ok);
        assert_eq!((level, weight, degree), (30, 2, 4));

        let mut json = ptr::null_mut();
        assert_eq!(tk_eigensystem_to_json(f, &mut json), TkStatus::Ok);
        let back: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(back, pair.left.to_json());

        let mut group = ptr::null_mut();
        assert_eq!(tk_twists_detect(f, 100, false, &mut group), TkStatus::Ok);
        let (mut order, mut inconclusive) = (0, 0);
        assert_eq!(tk_twist_group_order(group, &mut order, &mut inconclusive), TkStatus::Ok);
        assert_eq!((order, inconclusive), (4, 0));
        let mut ok = false;
        assert_eq!(tk_twist_group_identities(group, &mut ok), TkStatus::Ok);
        assert!(ok);
        let mut cond = 0;
        assert_eq!(tk_twist_group_conductor(group, 0, &mut cond), TkStatus::Ok);
        assert_eq!(cond, 1);
        assert_eq!(tk_twist_group_conductor(group, 9, &mut cond), TkStatus::Domain);
        assert!(last_error().contains("out of range"));
        tk_twist_group_free(group);

        let mut lift = ptr::null_mut();
        assert_eq!(tk_lift_build(f, g, 100, false, &mut lift), TkStatus::Precondition);
        assert!(last_error().contains("strict"));
        assert!(lift.is_null());
        assert_eq!(tk_lift_build(f, g, 100, true, &mut lift), TkStatus::Ok);
        let (mut t, mut c) = (0, 0);
        assert_eq!(tk_lift_field_degrees(lift, &mut t, &mut c), TkStatus::Ok);
        assert_eq!((t, c), (2, 4));
        let mut json = ptr::null_mut();
        assert_eq!(tk_lift_to_json(lift, &mut json), TkStatus::Ok);
        assert!(take_string(json).contains("spin"));
        tk_lift_free(lift);

        tk_eigensystem_free(f);
        tk_eigensystem_free(g);
    }
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    let bad = CString::new("{\"label\": ").unwrap();
    assert_eq!(unsafe { tk_eigensystem_from_json(bad.as_ptr(), &mut h) }, TkStatus::Parse);
    assert!(h.is_null());
    assert!(last_error().starts_with("parse error"));
    assert_eq!(unsafe { tk_eigensystem_from_json(ptr::null(), &mut h) }, TkStatus::NullPointer);
    let invalid = [0xffu8, 0xfe, 0];
    assert_eq!(
        unsafe { tk_eigensystem_from_json(invalid.as_ptr().cast(), &mut h) },
        TkStatus::InvalidUtf8
    );
    let mut order = 0;
    assert_eq!(unsafe { tk_twist_group_order(ptr::null(), &mut order, &mut order) }, TkStatus::NullPointer);
    // freeing NULL is a no-op
    unsafe {
        tk_eigensystem_free(ptr::null_mut());
        tk_twist_group_free(ptr::null_mut());
        tk_lift_free(ptr::null_mut());
        tk_string_free(ptr::null_mut());
    }
    // errors are per thread
    std::thread::spawn(|| assert!(tk_last_error().is_null())).join().unwrap();
}

#[test]
fn similitude_and_examples() {
    let j: [i64; 16] = [0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tk_similitude_factor(j.as_ptr(), 4, &mut s) }, TkStatus::Ok);
    assert_eq!(take_string(s), "1");
    let three: Vec<i64> = (0..16).map(|i| if i % 5 == 0 { 3 } else { 0 }).collect();
    assert_eq!(unsafe { tk_similitude_factor(three.as_ptr(), 4, &mut s) }, TkStatus::Ok);
    assert_eq!(take_string(s), "9");
    let shear: [i64; 16] = [1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1];
    assert_eq!(unsafe { tk_similitude_factor(shear.as_ptr(), 4, &mut s) }, TkStatus::NotSimilitude);

    let mut passed = false;
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { tk_verify_paper_examples(100, &mut passed, &mut json) }, TkStatus::Ok);
    assert!(passed);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert!(!v["checks"].as_array().unwrap().is_empty());
    let v = unsafe { CStr::from_ptr(tk_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/twistkit.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["tk_eigensystem_from_json", "tk_twists_detect", "tk_lift_build", "tk_last_error", "TK_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from the header");
    }
    let Ok(cc) = Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"twistkit.h\"\nint main(void) { TkEigenSystem *e = NULL; TkStatus s = tk_eigensystem_from_json(\"{}\", &e); tk_eigensystem_free(e); return s == TK_STATUS_OK; }\n",
    )
    .unwrap();
    let o = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
