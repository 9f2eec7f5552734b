use std::ffi::{c_char, CStr, CString};
use std::ptr;

use dowling_ffi::*;

fn take(s: *mut c_char) -> String {
    let v = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { dowling_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dowling_last_error()) }.to_str().unwrap().to_owned()
}

fn preset(name: &str) -> *mut DowlingAction {
    let name = CString::new(name).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { dowling_action_preset(name.as_ptr(), &mut a) }, DowlingStatus::Ok);
    a
}

fn bounded(a: *const DowlingAction, n: usize, t: Option<&[usize]>) -> *mut DowlingPosetHandle {
    let (use_t, ptr_t, len) = match t {
        Some(t) => (true, t.as_ptr(), t.len()),
        None => (false, ptr::null(), 0),
    };
    let mut p = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        assert_eq!(dowling_poset_build(a, n, use_t, ptr_t, len, 0, &mut p), DowlingStatus::Ok);
        assert_eq!(dowling_poset_adjoin_top(p, &mut b), DowlingStatus::Ok);
        dowling_poset_free(p);
    }
    b
}

#[test]
fn chains_moebius_and_el() {
    let a = preset("z2-trivial-2");
    let b = bounded(a, 3, None);
    unsafe {
        let mut count = 0;
        assert_eq!(dowling_poset_count_decreasing(b, DowlingLabeling::Lambda, &mut count), DowlingStatus::Ok);
        assert_eq!(count, 15);
        let mut s = ptr::null_mut();
        assert_eq!(dowling_poset_moebius(b, &mut s), DowlingStatus::Ok);
        assert_eq!(take(s), "15");
        let (mut passed, mut failures) = (false, 1);
        assert_eq!(
            dowling_poset_verify_el(b, DowlingLabeling::Lambda, &mut passed, &mut failures),
            DowlingStatus::Ok
        );
        assert!(passed);
        assert_eq!(failures, 0);
        let mut rank = 0;
        assert_eq!(dowling_poset_rank(b, &mut rank), DowlingStatus::Ok);
        assert_eq!(rank, 4);
        dowling_poset_free(b);
        dowling_action_free(a);
    }
}

#[test]
fn subposets_and_homology() {
    let a = preset("z4-swap");
    let b = bounded(a, 2, Some(&[]));
    unsafe {
        let mut len = 0;
        assert_eq!(dowling_poset_len(b, &mut len), DowlingStatus::Ok);
        assert_eq!(len, 10);
        let mut s = ptr::null_mut();
        assert_eq!(dowling_poset_homology_json(b, 0, &mut s), DowlingStatus::Ok);
        assert_eq!(take(s), r#"{"betti":[1,2],"betti_minus_one":0,"torsion":[[],[]]}"#);
        assert_eq!(dowling_poset_to_json(b, &mut s), DowlingStatus::Ok);
        let json = take(s);
        assert!(json.contains("\"num_elements\":10"));
        dowling_poset_free(b);
        dowling_action_free(a);
    }
}

#[test]
fn counts() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(dowling_sphere_count(3, 2, 2, &mut s), DowlingStatus::Ok);
        assert_eq!(take(s), "15");
        assert_eq!(dowling_count_blooming(3, 2, 1, &mut s), DowlingStatus::Ok);
        assert_eq!(take(s), "18");
        assert_eq!(dowling_sphere_count(0, 2, 2, &mut s), DowlingStatus::InvalidArgument);
    }
    assert!(!last_error().is_empty());
}

#[test]
fn error_codes() {
    unsafe {
        let mut a = ptr::null_mut();
        let bad = CString::new(r#"{"order": 2, "mult": [[0,1],[1,1]], "set_size": 0}"#).unwrap();
        assert_eq!(dowling_action_from_json(bad.as_ptr(), &mut a), DowlingStatus::ParseError);
        assert!(last_error().contains("inverse"));
        assert!(a.is_null());
        assert_eq!(dowling_action_from_json(ptr::null(), &mut a), DowlingStatus::NullPointer);

        let good = CString::new(r#"{"order": 2, "mult": [[0,1],[1,0]], "set_size": 2, "act": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(dowling_action_from_json(good.as_ptr(), &mut a), DowlingStatus::Ok);
        assert_eq!(last_error(), "");

        let mut p = ptr::null_mut();
        assert_eq!(dowling_poset_build(a, 0, false, ptr::null(), 0, 0, &mut p), DowlingStatus::InvalidArgument);
        assert_eq!(dowling_poset_build(a, 6, false, ptr::null(), 0, 10, &mut p), DowlingStatus::SizeLimit);
        let t = [0usize];
        assert_eq!(dowling_poset_build(a, 2, true, t.as_ptr(), 1, 0, &mut p), DowlingStatus::InvalidArgument);
        let t = [5usize];
        assert_eq!(dowling_poset_build(a, 2, true, t.as_ptr(), 1, 0, &mut p), DowlingStatus::InvalidArgument);

        assert_eq!(dowling_poset_build(a, 2, false, ptr::null(), 0, 0, &mut p), DowlingStatus::Ok);
        let mut passed = false;
        assert_eq!(
            dowling_poset_verify_el(p, DowlingLabeling::Mu, &mut passed, ptr::null_mut()),
            DowlingStatus::NotBounded
        );
        let mut s = ptr::null_mut();
        assert_eq!(dowling_poset_moebius(p, &mut s), DowlingStatus::NotBounded);
        assert_eq!(dowling_poset_homology_json(p, 0, &mut s), DowlingStatus::NotBounded);
        dowling_poset_free(p);
        dowling_action_free(a);

        let name = CString::new("no-such-group").unwrap();
        assert_eq!(dowling_action_preset(name.as_ptr(), &mut a), DowlingStatus::InvalidArgument);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/dowling.h")).unwrap();
    assert!(header.starts_with("#ifndef DOWLING_H"));
    for f in [
        "dowling_last_error",
        "dowling_action_from_json",
        "dowling_poset_build",
        "dowling_poset_verify_el",
        "dowling_string_free",
        "typedef struct DowlingPosetHandle DowlingPosetHandle;",
    ] {
        assert!(header.contains(f), "{f}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Some(cc) = which_cc() else { return };
    let dir = std::env::temp_dir().join(format!("dowling-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"dowling.h\"\n\
         int main(void) {\n\
           DowlingAction *a = 0;\n\
           DowlingStatus s = dowling_action_preset(\"z2-swap\", &a);\n\
           dowling_action_free(a);\n\
           return s == DOWLING_STATUS_OK ? 0 : 1;\n\
         }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
}
