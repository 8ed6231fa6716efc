use std::ffi::{c_char, CStr, CString};
use std::ptr;

use wnalg_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { wnalg_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(wnalg_last_error()) }.to_str().unwrap().to_owned()
}

fn parse(text: &str, prime: u64) -> *mut WnalgPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { wnalg_poly_parse(c.as_ptr(), prime, &mut p) },
        WnalgStatus::Ok,
        "{}",
        last_error()
    );
    p
}

fn preset(name: &str) -> *mut WnalgIdentitySet {
    let c = CString::new(name).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { wnalg_identity_set_preset(c.as_ptr(), &mut s) },
        WnalgStatus::Ok,
        "{}",
        last_error()
    );
    s
}

#[test]
fn normalize_and_render() {
    let p = parse("x1*(x2*(x3*x4))", 0);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wnalg_normalize(c"wnov".as_ptr(), p, &mut out) }, WnalgStatus::Ok);
    assert_eq!(take(out), "-1 A(x1, x3*x2, x4)");
    assert_eq!(unsafe { wnalg_normalize(c"wlc".as_ptr(), p, &mut out) }, WnalgStatus::Ok);
    assert_eq!(take(out), "x4 L[x3,x2,x1]");
    assert_eq!(unsafe { wnalg_poly_render(p, &mut out) }, WnalgStatus::Ok);
    assert_eq!(take(out), "x1*(x2*(x3*x4))");
    unsafe { wnalg_poly_free(p) };
}

#[test]
fn dimensions_over_both_fields() {
    let s = preset("wnov2");
    for (m, want) in [
        (vec![1, 1], 2),
        (vec![1, 1, 1], 9),
        (vec![1, 1, 1, 1], 16),
        (vec![1, 1, 1, 1, 1], 5),
    ] {
        for prime in [0, 1009] {
            let mut d = 0usize;
            assert_eq!(
                unsafe { wnalg_quotient_dimension(s, m.as_ptr(), m.len(), prime, &mut d) },
                WnalgStatus::Ok
            );
            assert_eq!(d, want, "{m:?} over {prime}");
        }
    }
    unsafe { wnalg_identity_set_free(s) };
}

#[test]
fn membership_of_left_normed_words() {
    let s = preset("nov2");
    let deep = parse("x1*(x2*(x3*(x4*x5)))", 0);
    let short = parse("x1*(x2*(x3*x4))", 0);
    let mut m = false;
    assert_eq!(unsafe { wnalg_membership(s, deep, 0, &mut m) }, WnalgStatus::Ok);
    assert!(m);
    assert_eq!(unsafe { wnalg_membership(s, short, 0, &mut m) }, WnalgStatus::Ok);
    assert!(!m);
    unsafe {
        wnalg_poly_free(deep);
        wnalg_poly_free(short);
        wnalg_identity_set_free(s);
    }
}

#[test]
fn custom_identity_set() {
    let text = CString::new("# metabelian\n(v1*v2)*(v3*v4) = 0\n").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { wnalg_identity_set_parse(text.as_ptr(), &mut s) }, WnalgStatus::Ok);
    let m = [1u32, 1, 1, 1];
    let mut d = 0usize;
    assert_eq!(unsafe { wnalg_quotient_dimension(s, m.as_ptr(), 4, 0, &mut d) }, WnalgStatus::Ok);
    assert_eq!(d, 120 - 24);
    unsafe { wnalg_identity_set_free(s) };

    let bad = CString::new("(v1*v2)*(v3*v4) = 0\nv1*v2*v3 = 0\n").unwrap();
    assert_eq!(unsafe { wnalg_identity_set_parse(bad.as_ptr(), &mut s) }, WnalgStatus::ParseError);
    assert!(last_error().starts_with("line 2:"), "{}", last_error());
}

#[test]
fn classify_json() {
    let p = parse("x1*x2 - x2*x1", 0);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wnalg_classify(p, true, &mut out) }, WnalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["bound"], 5);
    assert_eq!(v["oracle"]["confirmed"], true);
    unsafe { wnalg_poly_free(p) };

    let p = parse("x1*(x2*x3)", 0);
    assert_eq!(unsafe { wnalg_classify(p, false, &mut out) }, WnalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["verdict"], "non-nilpotent-candidate");
    assert_eq!(v["group"], "S3");
    unsafe { wnalg_poly_free(p) };
}

#[test]
fn check_identity_json() {
    let c = CString::new("v1*(v2*v3) - v2*(v1*v3) = 0").unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { wnalg_identity_parse(c.as_ptr(), &mut f) }, WnalgStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { wnalg_check_identity(c"wlc".as_ptr(), f, 4, &mut out) }, WnalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["holds"], false);
    assert!(v["counterexample"]["value"].as_str().unwrap() != "0");
    unsafe { wnalg_poly_free(f) };
}

#[test]
fn error_codes() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { wnalg_poly_parse(ptr::null(), 0, &mut p) }, WnalgStatus::NullArgument);
    assert_eq!(unsafe { wnalg_poly_parse(c"x1*".as_ptr(), 0, &mut p) }, WnalgStatus::ParseError);
    assert!(last_error().contains("syntax error"));
    assert_eq!(unsafe { wnalg_poly_parse(c"x1".as_ptr(), 4, &mut p) }, WnalgStatus::InvalidArgument);
    assert_eq!(
        unsafe { wnalg_poly_parse(c"x1".as_ptr(), 0, ptr::null_mut()) },
        WnalgStatus::NullArgument
    );
    let bytes = [0xffu8, 0];
    assert_eq!(
        unsafe { wnalg_poly_parse(bytes.as_ptr().cast(), 0, &mut p) },
        WnalgStatus::InvalidUtf8
    );

    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { wnalg_identity_set_preset(c"nope".as_ptr(), &mut s) },
        WnalgStatus::InvalidArgument
    );

    let x = parse("x1", 0);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { wnalg_normalize(c"assoc".as_ptr(), x, &mut out) },
        WnalgStatus::InvalidArgument
    );
    assert!(last_error().contains("assoc"));
    unsafe { wnalg_poly_free(x) };

    let s = preset("wnov2");
    let m = [1u32; 7];
    let mut d = 0usize;
    assert_eq!(
        unsafe { wnalg_quotient_dimension(s, m.as_ptr(), 7, 0, &mut d) },
        WnalgStatus::LimitExceeded
    );
    let m = [1u32; 5];
    assert_eq!(
        unsafe { wnalg_quotient_dimension(s, m.as_ptr(), 5, 3, &mut d) },
        WnalgStatus::LimitExceeded
    );
    unsafe { wnalg_identity_set_free(s) };

    let ok = parse("x1", 0);
    assert_eq!(last_error(), "");
    unsafe {
        wnalg_poly_free(ok);
        wnalg_poly_free(ptr::null_mut());
        wnalg_string_free(ptr::null_mut());
    }
}
