//! C ABI over the `binid` verifier.
//!
//! Every fallible call returns a [`BinidStatus`]; results come back through
//! out-pointers. Objects are opaque handles released with their `_free`
//! function. Strings returned to the caller are owned by the caller and
//! released with [`binid_string_free`]. After a non-`OK` status,
//! [`binid_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use binid::arith::{int_binomial, parse_int, parse_rational};
use binid::dsl::{parse_expr_str, parse_identity_file};
use binid::engine::{
    builtin_catalog, default_ranges, elaborate, parse_range, verify_range, Binding, Identity,
    Status, Strategy, VerificationReport,
};
use binid::{Polynomial, Rational, Var};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinidStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ElaborationError = 4,
    UsageError = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

/// Outcome of a verification sweep.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinidVerdict {
    Pass = 0,
    Fail = 1,
    Error = 2,
    Inconsistent = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinidStrategy {
    Symbolic = 0,
    Points = 1,
    Both = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinidFormat {
    Text = 0,
    Machine = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinidVar {
    X = 0,
    Y = 1,
}

/// Exact polynomial in x and y.
pub struct BinidPolynomial(Polynomial);

/// An ordered list of identities.
pub struct BinidIdentitySet {
    identities: Vec<Identity>,
    names: Vec<CString>,
}

pub struct BinidReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(message).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(BinidStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn fail<T>(status: BinidStatus, message: impl Into<String>) -> FfiResult<T> {
    Err(Failure(status, message.into()))
}

/// Runs `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> BinidStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BinidStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BinidStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return fail(BinidStatus::NullPointer, format!("{what} is NULL"));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(BinidStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> FfiResult<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        read_str(p, what).map(Some)
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return fail(BinidStatus::NullPointer, "output pointer is NULL");
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    let c = CString::new(s).or_else(|_| fail(BinidStatus::Panic, "string contains NUL"))?;
    write_out(out, c.into_raw())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().map_or_else(
        || fail(BinidStatus::NullPointer, format!("{what} is NULL")),
        Ok,
    )
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `binid_` call on the same thread.
#[no_mangle]
pub extern "C" fn binid_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` as `name=value,name=value`.
fn parse_binding(text: &str) -> FfiResult<Binding> {
    let mut b = Binding::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let Some((name, value)) = part.split_once('=') else {
            return fail(
                BinidStatus::UsageError,
                format!("malformed binding `{part}`"),
            );
        };
        let value = parse_int(value).or_else(|e| fail(BinidStatus::UsageError, e.to_string()))?;
        b.set(name.trim(), value);
    }
    Ok(b)
}

/// Elaborates `expr` under `bindings` (`"n=3,m=1"`, or NULL for none).
///
/// # Safety
/// `expr` and `bindings` must be NULL or NUL-terminated strings; `out` must
/// be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_expand(
    expr: *const c_char,
    bindings: *const c_char,
    out: *mut *mut BinidPolynomial,
) -> BinidStatus {
    guard(|| {
        let text = read_str(expr, "expr")?;
        let binding = match read_opt_str(bindings, "bindings")? {
            Some(b) => parse_binding(b)?,
            None => Binding::new(),
        };
        let e = parse_expr_str(text).or_else(|e| fail(BinidStatus::ParseError, e.to_string()))?;
        let p = elaborate(&e, &binding)
            .or_else(|e| fail(BinidStatus::ElaborationError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(BinidPolynomial(p))))
    })
}

/// Normal form such as `x^2 + 2*x*y + y^2`.
///
/// # Safety
/// `poly` must be a live handle; `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_polynomial_to_string(
    poly: *const BinidPolynomial,
    out: *mut *mut c_char,
) -> BinidStatus {
    guard(|| {
        let p = handle(poly, "poly")?;
        write_string(out, p.0.to_string())
    })
}

/// Evaluates at `x`, `y` given as decimal integers or `p/q` fractions; NULL
/// means 0. The value is written as a string in the same form.
///
/// # Safety
/// `poly` must be a live handle; strings NULL or NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn binid_polynomial_eval(
    poly: *const BinidPolynomial,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> BinidStatus {
    guard(|| {
        let p = handle(poly, "poly")?;
        let coord = |s: Option<&str>| -> FfiResult<Rational> {
            match s {
                None => Ok(Rational::from_integer(0.into())),
                Some(s) => {
                    parse_rational(s).or_else(|e| fail(BinidStatus::ParseError, e.to_string()))
                }
            }
        };
        let xv = coord(read_opt_str(x, "x")?)?;
        let yv = coord(read_opt_str(y, "y")?)?;
        write_string(out, p.0.eval(&xv, &yv).to_string())
    })
}

/// Degree in `var`; -1 for the zero polynomial.
///
/// # Safety
/// `poly` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_polynomial_degree(
    poly: *const BinidPolynomial,
    var: BinidVar,
    out: *mut i64,
) -> BinidStatus {
    guard(|| {
        let p = handle(poly, "poly")?;
        let v = match var {
            BinidVar::X => Var::X,
            BinidVar::Y => Var::Y,
        };
        write_out(out, p.0.degree_in(v))
    })
}

/// # Safety
/// `poly` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binid_polynomial_free(poly: *mut BinidPolynomial) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

fn identity_set(identities: Vec<Identity>) -> *mut BinidIdentitySet {
    let names = identities
        .iter()
        .map(|id| CString::new(id.name.clone()).expect("identifier"))
        .collect();
    Box::into_raw(Box::new(BinidIdentitySet { identities, names }))
}

/// The built-in identities.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_catalog_new(out: *mut *mut BinidIdentitySet) -> BinidStatus {
    guard(|| write_out(out, identity_set(builtin_catalog())))
}

/// Parses identity-file text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_identity_set_parse(
    text: *const c_char,
    out: *mut *mut BinidIdentitySet,
) -> BinidStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let file =
            parse_identity_file(text).or_else(|e| fail(BinidStatus::ParseError, e.to_string()))?;
        write_out(out, identity_set(file.identities))
    })
}

/// Number of identities; 0 for NULL.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binid_identity_set_len(set: *const BinidIdentitySet) -> usize {
    set.as_ref().map_or(0, |s| s.identities.len())
}

/// Name of identity `index`, borrowed from `set`; NULL when out of range.
///
/// # Safety
/// `set` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binid_identity_set_name(
    set: *const BinidIdentitySet,
    index: usize,
) -> *const c_char {
    set.as_ref()
        .and_then(|s| s.names.get(index))
        .map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binid_identity_set_free(set: *mut BinidIdentitySet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Verifies identity `index` of `set` over `ranges` (`"n=0..20,m=0..3"`;
/// NULL or unnamed parameters use the default sweep).
///
/// # Safety
/// `set` must be a live handle; `ranges` NULL or NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn binid_verify(
    set: *const BinidIdentitySet,
    index: usize,
    ranges: *const c_char,
    strategy: BinidStrategy,
    out: *mut *mut BinidReport,
) -> BinidStatus {
    guard(|| {
        let s = handle(set, "set")?;
        let Some(id) = s.identities.get(index) else {
            return fail(
                BinidStatus::IndexOutOfRange,
                format!("no identity at index {index}"),
            );
        };
        let mut sweep = default_ranges(id);
        if let Some(text) = read_opt_str(ranges, "ranges")? {
            for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (name, r) =
                    parse_range(part).or_else(|e| fail(BinidStatus::UsageError, e.to_string()))?;
                if id.param(&name).is_none() {
                    return fail(
                        BinidStatus::UsageError,
                        format!("{} has no parameter `{name}`", id.name),
                    );
                }
                sweep.insert(name, r);
            }
        }
        let strategy = match strategy {
            BinidStrategy::Symbolic => Strategy::Symbolic,
            BinidStrategy::Points => Strategy::Points,
            BinidStrategy::Both => Strategy::Both,
        };
        let report = verify_range(id, &sweep, strategy)
            .or_else(|e| fail(BinidStatus::UsageError, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(BinidReport(report))))
    })
}

/// `BINID_VERDICT_ERROR` for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binid_report_verdict(report: *const BinidReport) -> BinidVerdict {
    match report.as_ref().map(|r| r.0.status()) {
        Some(Status::Pass) => BinidVerdict::Pass,
        Some(Status::Fail) => BinidVerdict::Fail,
        Some(Status::Inconsistent) => BinidVerdict::Inconsistent,
        Some(Status::Error) | None => BinidVerdict::Error,
    }
}

/// Number of bindings checked; 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binid_report_binding_count(report: *const BinidReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.bindings)
}

/// Number of failure records; 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binid_report_failure_count(report: *const BinidReport) -> usize {
    report.as_ref().map_or(0, |r| r.0.failures.len())
}

/// # Safety
/// `report` must be a live handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_report_render(
    report: *const BinidReport,
    format: BinidFormat,
    out: *mut *mut c_char,
) -> BinidStatus {
    guard(|| {
        let r = handle(report, "report")?;
        let text = match format {
            BinidFormat::Text => r.0.render_text(),
            BinidFormat::Machine => r.0.render_machine(),
        };
        write_string(out, text)
    })
}

/// # Safety
/// `report` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binid_report_free(report: *mut BinidReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// `C(n, k)` for a decimal integer `n` (negative allowed), as a string.
///
/// # Safety
/// `n` must be a NUL-terminated string; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn binid_int_binomial(
    n: *const c_char,
    k: u64,
    out: *mut *mut c_char,
) -> BinidStatus {
    guard(|| {
        let n = parse_int(read_str(n, "n")?)
            .or_else(|e| fail(BinidStatus::ParseError, e.to_string()))?;
        write_string(out, int_binomial(&n, k).to_string())
    })
}
