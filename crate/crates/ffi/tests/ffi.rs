use std::ffi::{c_char, CStr, CString};
use std::ptr;

use binid_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a string returned by the library.
unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    binid_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = binid_last_error_message();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned())
}

#[test]
fn expand_and_inspect() {
    unsafe {
        let mut p = ptr::null_mut();
        let e = c("binom(x + y, n)");
        let b = c("n=2");
        assert_eq!(
            binid_expand(e.as_ptr(), b.as_ptr(), &mut p),
            BinidStatus::Ok
        );
        assert!(last_error().is_none());

        let mut s = ptr::null_mut();
        assert_eq!(binid_polynomial_to_string(p, &mut s), BinidStatus::Ok);
        assert_eq!(take(s), "1/2*x^2 + x*y + 1/2*y^2 - 1/2*x - 1/2*y");

        let (x, y) = (c("5"), c("-1/2"));
        assert_eq!(
            binid_polynomial_eval(p, x.as_ptr(), y.as_ptr(), &mut s),
            BinidStatus::Ok
        );
        // C(9/2, 2) = (9/2)(7/2)/2
        assert_eq!(take(s), "63/8");

        let mut d = -7i64;
        assert_eq!(
            binid_polynomial_degree(p, BinidVar::Y, &mut d),
            BinidStatus::Ok
        );
        assert_eq!(d, 2);
        binid_polynomial_free(p);

        let zero = c("x - x");
        assert_eq!(
            binid_expand(zero.as_ptr(), ptr::null(), &mut p),
            BinidStatus::Ok
        );
        assert_eq!(
            binid_polynomial_degree(p, BinidVar::X, &mut d),
            BinidStatus::Ok
        );
        assert_eq!(d, -1);
        binid_polynomial_free(p);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut p = ptr::null_mut();
        let bad = c("(x + 1");
        assert_eq!(
            binid_expand(bad.as_ptr(), ptr::null(), &mut p),
            BinidStatus::ParseError
        );
        assert!(p.is_null());
        assert!(last_error().is_some());

        let unbound = c("binom(x, n)");
        assert_eq!(
            binid_expand(unbound.as_ptr(), ptr::null(), &mut p),
            BinidStatus::ElaborationError
        );
        let malformed = c("n2");
        assert_eq!(
            binid_expand(unbound.as_ptr(), malformed.as_ptr(), &mut p),
            BinidStatus::UsageError
        );
        assert_eq!(
            binid_expand(ptr::null(), ptr::null(), &mut p),
            BinidStatus::NullPointer
        );
        let ok = c("x");
        assert_eq!(
            binid_expand(ok.as_ptr(), ptr::null(), ptr::null_mut()),
            BinidStatus::NullPointer
        );

        let invalid = [0xffu8 as c_char, 0];
        assert_eq!(
            binid_expand(invalid.as_ptr(), ptr::null(), &mut p),
            BinidStatus::InvalidUtf8
        );

        let mut s = ptr::null_mut();
        assert_eq!(
            binid_polynomial_to_string(ptr::null(), &mut s),
            BinidStatus::NullPointer
        );
        binid_polynomial_free(ptr::null_mut());
        binid_string_free(ptr::null_mut());
    }
}

#[test]
fn catalog_and_verification() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(binid_catalog_new(&mut set), BinidStatus::Ok);
        let n = binid_identity_set_len(set);
        assert_eq!(n, 17);
        let names: Vec<String> = (0..n)
            .map(|i| {
                CStr::from_ptr(binid_identity_set_name(set, i))
                    .to_str()
                    .unwrap()
                    .to_owned()
            })
            .collect();
        assert!(binid_identity_set_name(set, n).is_null());
        let pascal = names.iter().position(|s| s == "pascal").unwrap();

        let mut report = ptr::null_mut();
        let ranges = c("n=0..15");
        assert_eq!(
            binid_verify(
                set,
                pascal,
                ranges.as_ptr(),
                BinidStrategy::Both,
                &mut report
            ),
            BinidStatus::Ok
        );
        assert_eq!(binid_report_verdict(report), BinidVerdict::Pass);
        assert_eq!(binid_report_binding_count(report), 16);
        assert_eq!(binid_report_failure_count(report), 0);
        let mut s = ptr::null_mut();
        assert_eq!(
            binid_report_render(report, BinidFormat::Machine, &mut s),
            BinidStatus::Ok
        );
        assert_eq!(take(s), "SUMMARY\tpascal\tboth\t16\tPASS\n");
        binid_report_free(report);

        let unknown = c("q=0..2");
        assert_eq!(
            binid_verify(
                set,
                pascal,
                unknown.as_ptr(),
                BinidStrategy::Both,
                &mut report
            ),
            BinidStatus::UsageError
        );
        assert_eq!(
            binid_verify(set, n, ptr::null(), BinidStrategy::Both, &mut report),
            BinidStatus::IndexOutOfRange
        );
        binid_identity_set_free(set);
    }
}

#[test]
fn counterexample_from_parsed_file() {
    unsafe {
        let text = c("identity square\nparams\nvars x\nlhs x^2 + (x + 1)^2\nrhs 2*x^2 + 2*x + 2\n");
        let mut set = ptr::null_mut();
        assert_eq!(
            binid_identity_set_parse(text.as_ptr(), &mut set),
            BinidStatus::Ok
        );
        assert_eq!(binid_identity_set_len(set), 1);
        for strategy in [BinidStrategy::Symbolic, BinidStrategy::Points] {
            let mut report = ptr::null_mut();
            assert_eq!(
                binid_verify(set, 0, ptr::null(), strategy, &mut report),
                BinidStatus::Ok
            );
            assert_eq!(binid_report_verdict(report), BinidVerdict::Fail);
            assert_eq!(binid_report_failure_count(report), 1);
            let mut s = ptr::null_mut();
            assert_eq!(
                binid_report_render(report, BinidFormat::Machine, &mut s),
                BinidStatus::Ok
            );
            assert!(take(s).starts_with("FAIL\tsquare\t"));
            binid_report_free(report);
        }
        binid_identity_set_free(set);

        let broken = c("identity\n");
        assert_eq!(
            binid_identity_set_parse(broken.as_ptr(), &mut set),
            BinidStatus::ParseError
        );
        assert_eq!(binid_report_verdict(ptr::null()), BinidVerdict::Error);
        assert_eq!(binid_identity_set_len(ptr::null()), 0);
    }
}

#[test]
fn integer_binomials() {
    unsafe {
        let mut s = ptr::null_mut();
        for (n, k, expected) in [
            ("5", 2, "10"),
            ("-1", 2, "1"),
            ("-4", 3, "-20"),
            ("60", 30, "118264581564861424"),
        ] {
            let n = c(n);
            assert_eq!(binid_int_binomial(n.as_ptr(), k, &mut s), BinidStatus::Ok);
            assert_eq!(take(s), expected);
        }
        let bad = c("five");
        assert_eq!(
            binid_int_binomial(bad.as_ptr(), 1, &mut s),
            BinidStatus::ParseError
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/binid.h");
    for name in [
        "binid_last_error_message",
        "binid_string_free",
        "binid_expand",
        "binid_polynomial_to_string",
        "binid_polynomial_eval",
        "binid_polynomial_degree",
        "binid_polynomial_free",
        "binid_catalog_new",
        "binid_identity_set_parse",
        "binid_identity_set_len",
        "binid_identity_set_name",
        "binid_identity_set_free",
        "binid_verify",
        "binid_report_verdict",
        "binid_report_binding_count",
        "binid_report_failure_count",
        "binid_report_render",
        "binid_report_free",
        "binid_int_binomial",
        "typedef struct BinidPolynomial BinidPolynomial;",
        "BINID_STATUS_OK = 0",
        "BINID_STATUS_PANIC = 7",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
