//! C interface to `fqchol`.
//!
//! Fields and matrices are opaque handles created by `fq_*_new` / `fq_*_parse`
//! and released with the matching `fq_*_free`. Every fallible call returns an
//! `FqStatus`; on failure `fq_last_error` describes the error on the calling
//! thread. Strings returned by the library are freed with `fq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fqchol::census::run_census;
use fqchol::cholesky::factor;
use fqchol::cones::{canonical_anchor, sign_pattern_lpm, sign_pattern_tpm};
use fqchol::textio::{format_matrix, parse_matrix};
use fqchol::{Error, Field, FieldClass, Matrix, SymMatrix};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    NonDefinite = 4,
    ZeroMinor = 5,
    PatternMismatch = 6,
    Singular = 7,
    BudgetExceeded = 8,
    FieldMismatch = 9,
    SizeMismatch = 10,
    NotSymmetric = 11,
    BufferTooSmall = 12,
    Internal = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqFieldClass {
    EvenChar = 0,
    Definite = 1,
    NonDefinite = 2,
}

/// Opaque handle to a finite field.
pub struct FqField {
    inner: Field,
}

/// Opaque handle to a square matrix over a finite field.
pub struct FqMatrix {
    inner: Matrix,
}

/// Counts from an exhaustive census of symmetric `n x n` matrices.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct FqCensus {
    pub total_sym: u64,
    pub lpm_total: u64,
    pub tpm_total: u64,
    pub formula_value: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> FqStatus {
    match err {
        Error::NonDefiniteField { .. } => FqStatus::NonDefinite,
        Error::ZeroMinor { .. } => FqStatus::ZeroMinor,
        Error::PatternMismatch { .. } => FqStatus::PatternMismatch,
        Error::Singular | Error::DivisionByZero => FqStatus::Singular,
        Error::BudgetExceeded { .. } => FqStatus::BudgetExceeded,
        Error::FieldMismatch => FqStatus::FieldMismatch,
        Error::SizeMismatch(_) | Error::NonSquare { .. } | Error::IndexOutOfRange { .. } => FqStatus::SizeMismatch,
        Error::NotSymmetric { .. } => FqStatus::NotSymmetric,
        Error::Parse { .. } => FqStatus::Parse,
        _ => FqStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> FqStatus {
    set_error(format!("{}: {err}", err.code()));
    status_of(&err)
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> FqStatus) -> FqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error".into());
            FqStatus::Internal
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null pointer: ", stringify!($p)).into());
            return FqStatus::NullPointer;
        })+
    };
}

fn sym(m: &FqMatrix) -> Result<SymMatrix, Error> {
    SymMatrix::new(m.inner.clone())
}

/// Message for the last failed call on this thread. Valid until the next
/// call into the library on the same thread.
#[no_mangle]
pub extern "C" fn fq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates `F_{p^k}` with the default modulus.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn fq_field_new(p: u64, k: u32, out: *mut *mut FqField) -> FqStatus {
    non_null!(out);
    guard(|| match Field::new(p, k) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(FqField { inner: f }));
            FqStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `field` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fq_field_free(field: *mut FqField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// `q`, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_field_order(field: *const FqField) -> u32 {
    field.as_ref().map_or(0, |f| f.inner.order())
}

/// # Safety
/// `field` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fq_field_class(field: *const FqField, out: *mut FqFieldClass) -> FqStatus {
    non_null!(field, out);
    *out = match (*field).inner.class() {
        FieldClass::EvenChar => FqFieldClass::EvenChar,
        FieldClass::Definite => FqFieldClass::Definite,
        FieldClass::NonDefinite => FqFieldClass::NonDefinite,
    };
    FqStatus::Ok
}

/// Quadratic character of the element with canonical code `code`.
///
/// # Safety
/// `field` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fq_field_chi(field: *const FqField, code: u32, out: *mut i8) -> FqStatus {
    non_null!(field, out);
    let f = &(*field).inner;
    match f.elem(code as u64) {
        Ok(e) => {
            *out = f.chi(e);
            FqStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Builds an `n x n` matrix from `n * n` row-major element codes.
///
/// # Safety
/// `field` and `out` must be valid and `codes` must point to `n * n` values.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_new(field: *const FqField, n: usize, codes: *const u32, out: *mut *mut FqMatrix) -> FqStatus {
    non_null!(field, codes, out);
    guard(|| {
        let Some(len) = n.checked_mul(n) else {
            return fail(Error::SizeMismatch(format!("n = {n} overflows")));
        };
        let vals: Vec<u64> = std::slice::from_raw_parts(codes, len).iter().map(|&c| c as u64).collect();
        match Matrix::from_codes(&(*field).inner, n, n, &vals) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(FqMatrix { inner: m }));
                FqStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses the `p k n` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_parse(text: *const c_char, out: *mut *mut FqMatrix) -> FqStatus {
    non_null!(text, out);
    guard(|| {
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(Error::Parse { line: 0, msg: "input is not UTF-8".into() });
        };
        match parse_matrix(s) {
            Ok(m) => {
                *out = Box::into_raw(Box::new(FqMatrix { inner: m }));
                FqStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_free(m: *mut FqMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Size `n`, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_size(m: *const FqMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// # Safety
/// `m` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_get(m: *const FqMatrix, row: usize, col: usize, out: *mut u32) -> FqStatus {
    non_null!(m, out);
    let m = &(*m).inner;
    if row >= m.rows() || col >= m.cols() {
        return fail(Error::IndexOutOfRange { index: row.max(col), max: m.rows() });
    }
    *out = m.get(row, col).code();
    FqStatus::Ok
}

/// Text form of the matrix; free with `fq_string_free`. Null on a null
/// handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fq_matrix_to_string(m: *const FqMatrix) -> *mut c_char {
    match m.as_ref() {
        Some(m) => CString::new(format_matrix(&m.inner)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn fq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the `n` characters (`+1` / `-1`) of the leading (`trailing = 0`)
/// or trailing principal minors into `out[0..n]`.
///
/// # Safety
/// `m` must be valid and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn fq_sign_pattern(m: *const FqMatrix, trailing: bool, out: *mut i8, len: usize) -> FqStatus {
    non_null!(m, out);
    guard(|| {
        let a = match sym(&*m) {
            Ok(a) => a,
            Err(e) => return fail(e),
        };
        if len < a.n() {
            set_error(format!("buffer of {len} for {} signs", a.n()));
            return FqStatus::BufferTooSmall;
        }
        let eps = if trailing { sign_pattern_tpm(&a) } else { sign_pattern_lpm(&a) };
        match eps {
            Ok(eps) => {
                std::slice::from_raw_parts_mut(out, eps.len()).copy_from_slice(eps.signs());
                FqStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Cholesky factor `L` with `A = L anchor L^T`. A null `anchor` selects the
/// diagonal anchor of `A`'s pattern.
///
/// # Safety
/// `a` and `out_l` must be valid; `anchor` may be null.
#[no_mangle]
pub unsafe extern "C" fn fq_factor(a: *const FqMatrix, anchor: *const FqMatrix, out_l: *mut *mut FqMatrix) -> FqStatus {
    non_null!(a, out_l);
    guard(|| {
        let result = (|| {
            let a = sym(&*a)?;
            let e = match anchor.as_ref() {
                Some(e) => sym(e)?,
                None => canonical_anchor(a.field(), &sign_pattern_lpm(&a)?),
            };
            factor(&a, &e)
        })();
        match result {
            Ok(fact) => {
                *out_l = Box::into_raw(Box::new(FqMatrix { inner: fact.l.into_matrix() }));
                FqStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exhaustive census of symmetric `n x n` matrices; fails with
/// `BudgetExceeded` when `q^(n(n+1)/2) > budget`.
///
/// # Safety
/// `field` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fq_census(field: *const FqField, n: usize, budget: u64, out: *mut FqCensus) -> FqStatus {
    non_null!(field, out);
    guard(|| match run_census(&(*field).inner, n, budget) {
        Ok(r) => {
            *out = FqCensus {
                total_sym: r.total_sym,
                lpm_total: r.lpm_total,
                tpm_total: r.tpm_total,
                formula_value: r.formula_value,
            };
            FqStatus::Ok
        }
        Err(e) => fail(e),
    })
}
