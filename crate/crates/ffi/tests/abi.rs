use std::ffi::{CStr, CString};
use std::ptr;

use fqchol_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(fq_last_error()).to_string_lossy().into_owned() }
}

fn parse(text: &str) -> *mut FqMatrix {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { fq_matrix_parse(c.as_ptr(), &mut m) }, FqStatus::Ok);
    m
}

#[test]
fn field_handle() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(fq_field_new(3, 2, &mut f), FqStatus::Ok);
        assert_eq!(fq_field_order(f), 9);
        let mut class = FqFieldClass::EvenChar;
        assert_eq!(fq_field_class(f, &mut class), FqStatus::Ok);
        assert_eq!(class, FqFieldClass::NonDefinite);
        let mut chi = 0i8;
        assert_eq!(fq_field_chi(f, 4, &mut chi), FqStatus::Ok);
        assert_eq!(chi, -1);
        assert_eq!(fq_field_chi(f, 9, &mut chi), FqStatus::InvalidArgument);
        fq_field_free(f);

        assert_eq!(fq_field_new(6, 1, &mut f), FqStatus::InvalidArgument);
        assert!(last_error().starts_with("E_"));
        assert_eq!(fq_field_new(7, 1, ptr::null_mut()), FqStatus::NullPointer);
        assert_eq!(fq_field_order(ptr::null()), 0);
        fq_field_free(ptr::null_mut());
    }
}

#[test]
fn matrix_round_trip_and_pattern() {
    unsafe {
        let m = parse("7 1 2\n1 0\n0 3\n");
        assert_eq!(fq_matrix_size(m), 2);
        let mut v = 0u32;
        assert_eq!(fq_matrix_get(m, 1, 1, &mut v), FqStatus::Ok);
        assert_eq!(v, 3);
        assert_eq!(fq_matrix_get(m, 2, 0, &mut v), FqStatus::SizeMismatch);
        let s = fq_matrix_to_string(m);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "7 1 2\n1 0\n0 3\n");
        fq_string_free(s);
        let mut eps = [0i8; 2];
        assert_eq!(fq_sign_pattern(m, false, eps.as_mut_ptr(), 2), FqStatus::Ok);
        assert_eq!(eps, [1, -1]);
        assert_eq!(fq_sign_pattern(m, true, eps.as_mut_ptr(), 2), FqStatus::Ok);
        assert_eq!(eps, [-1, -1]);
        assert_eq!(fq_sign_pattern(m, false, eps.as_mut_ptr(), 1), FqStatus::BufferTooSmall);
        fq_matrix_free(m);

        let bad = CString::new("7 1 2\n1 x\n0 3\n").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(fq_matrix_parse(bad.as_ptr(), &mut out), FqStatus::Parse);
        assert!(out.is_null());
        assert!(last_error().starts_with("E_PARSE"));
    }
}

#[test]
fn matrix_from_codes() {
    unsafe {
        let mut f = ptr::null_mut();
        fq_field_new(2, 2, &mut f);
        let mut m = ptr::null_mut();
        let codes = [2u32, 1, 1, 1];
        assert_eq!(fq_matrix_new(f, 2, codes.as_ptr(), &mut m), FqStatus::Ok);
        let s = fq_matrix_to_string(m);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "2 2 2\n1 1 1\n2 1\n1 1\n");
        fq_string_free(s);
        fq_matrix_free(m);
        let codes = [4u32, 1, 1, 1];
        assert_eq!(fq_matrix_new(f, 2, codes.as_ptr(), &mut m), FqStatus::InvalidArgument);
        fq_field_free(f);
    }
}

#[test]
fn factor_statuses() {
    unsafe {
        let a = parse("7 1 2\n1 0\n0 3\n");
        let mut l = ptr::null_mut();
        assert_eq!(fq_factor(a, ptr::null(), &mut l), FqStatus::Ok);
        let s = fq_matrix_to_string(l);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "7 1 2\n1 0\n0 2\n");
        fq_string_free(s);
        fq_matrix_free(l);

        let id = parse("7 1 2\n1 0\n0 1\n");
        assert_eq!(fq_factor(a, id, &mut l), FqStatus::PatternMismatch);
        let f5 = parse("5 1 1\n1\n");
        assert_eq!(fq_factor(f5, ptr::null(), &mut l), FqStatus::NonDefinite);
        assert!(last_error().starts_with("E_NONDEFINITE"));
        let z = parse("7 1 2\n0 1\n1 0\n");
        assert_eq!(fq_factor(z, ptr::null(), &mut l), FqStatus::ZeroMinor);
        let asym = parse("7 1 2\n1 2\n0 1\n");
        assert_eq!(fq_factor(asym, ptr::null(), &mut l), FqStatus::NotSymmetric);
        for m in [a, id, f5, z, asym] {
            fq_matrix_free(m);
        }
    }
}

#[test]
fn census_counts() {
    unsafe {
        let mut f = ptr::null_mut();
        fq_field_new(3, 1, &mut f);
        let mut c = FqCensus::default();
        assert_eq!(fq_census(f, 2, 1_000_000, &mut c), FqStatus::Ok);
        assert_eq!((c.total_sym, c.lpm_total, c.tpm_total, c.formula_value), (27, 12, 12, 12));
        assert_eq!(fq_census(f, 4, 100, &mut c), FqStatus::BudgetExceeded);
        fq_field_free(f);
    }
}
