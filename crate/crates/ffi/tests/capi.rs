use std::ffi::{c_char, CStr, CString};
use std::ptr;

use permpath_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    permpath_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(permpath_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn theta_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(permpath_perm_parse(c("3 1 2").as_ptr(), &mut p), PermpathStatus::Ok);
        assert_eq!(permpath_perm_len(p), 3);
        let mut m = ptr::null_mut();
        assert_eq!(permpath_theta(p, &mut m), PermpathStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(permpath_path_to_string(m, &mut s), PermpathStatus::Ok);
        let text = take(s);

        let mut m2 = ptr::null_mut();
        assert_eq!(permpath_path_parse(c(&text).as_ptr(), &mut m2), PermpathStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(permpath_theta_inv(m2, &mut q), PermpathStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(permpath_perm_to_string(q, &mut s), PermpathStatus::Ok);
        assert_eq!(take(s), "3 1 2");

        permpath_perm_free(p);
        permpath_perm_free(q);
        permpath_path_free(m);
        permpath_path_free(m2);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            permpath_perm_parse(c("1 1").as_ptr(), &mut p),
            PermpathStatus::InvalidInput
        );
        assert!(p.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(permpath_perm_parse(ptr::null(), &mut p), PermpathStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(
            permpath_perm_parse(bad.as_ptr().cast(), &mut p),
            PermpathStatus::InvalidUtf8
        );
        assert_eq!(
            permpath_perm_parse(c("1").as_ptr(), ptr::null_mut()),
            PermpathStatus::NullPointer
        );

        let mut m = ptr::null_mut();
        assert_eq!(permpath_path_parse(c("U L5 D0").as_ptr(), &mut m), PermpathStatus::Ok);
        let mut q = ptr::null_mut();
        assert_ne!(permpath_theta_inv(m, &mut q), PermpathStatus::Ok);
        permpath_path_free(m);

        let mut s = ptr::null_mut();
        assert_eq!(
            permpath_fraction(c("Noncrossing").as_ptr(), c("q").as_ptr(), 4, &mut s),
            PermpathStatus::Unsupported
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            permpath_mobius_count(c("C(213,312)").as_ptr(), 1, &mut out),
            PermpathStatus::Precondition
        );
        assert_eq!(
            permpath_mobius_count(c("C(1)").as_ptr(), 4, &mut out),
            PermpathStatus::Parse
        );
        permpath_perm_free(ptr::null_mut());
        permpath_string_free(ptr::null_mut());
    }
}

#[test]
fn fraction_coefficients() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            permpath_fraction(c("All").as_ptr(), c("").as_ptr(), 5, &mut s),
            PermpathStatus::Ok
        );
        assert_eq!(permpath_series_len(s), 6);
        let got: Vec<String> = (0..6)
            .map(|n| CStr::from_ptr(permpath_series_coeff(s, n)).to_str().unwrap().to_owned())
            .collect();
        assert_eq!(got, ["1", "1", "2", "6", "24", "120"]);
        assert!(permpath_series_coeff(s, 6).is_null());
        permpath_series_free(s);
    }
}

#[test]
fn invert_partition_mobius() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(
            permpath_invert(c("1,1,2,5,15,52,203").as_ptr(), &mut json),
            PermpathStatus::Ok
        );
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["ell"], serde_json::json!(["1", "2", "3"]));

        let mut p = ptr::null_mut();
        assert_eq!(
            permpath_perm_parse(c("2 6 8 3 9 11 4 5 1 7 10").as_ptr(), &mut p),
            PermpathStatus::Ok
        );
        let mut s = ptr::null_mut();
        assert_eq!(permpath_cie_partition(p, &mut s), PermpathStatus::Ok);
        assert_eq!(take(s), "{1,9},{2},{3,4,7,8},{5,6},{10}");
        permpath_perm_free(p);

        let mut s = ptr::null_mut();
        assert_eq!(
            permpath_mobius_count(c("C(123,2413,3412)").as_ptr(), 6, &mut s),
            PermpathStatus::Ok
        );
        assert_eq!(take(s), "11");
    }
}

#[test]
fn header_declares_entry_points() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/permpath.h")).unwrap();
    for name in [
        "permpath_theta",
        "permpath_fraction",
        "permpath_last_error",
        "PERMPATH_STATUS_OK",
        "PermpathPermutation",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
