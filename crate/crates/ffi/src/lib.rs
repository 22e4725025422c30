//! C interface to `permpath`. Objects cross the boundary as opaque handles
//! owned by the caller and released with the matching `_free` function.
//! Every fallible call returns a [`PermpathStatus`]; the message of the last
//! failure on the calling thread is available from
//! [`permpath_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use permpath::bell::cie_to_partition;
use permpath::census::{mobius_count, MobiusFamily};
use permpath::invert::{invert_jfraction, parse_terms, RecoveryReport};
use permpath::{scheme_for, theta, theta_inv, ColoredMotzkinPath, Error, Marks, Permutation, SubsetId};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermpathStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Precondition = 5,
    Unsupported = 6,
    OutOfRange = 7,
    Panic = 8,
}

pub struct PermpathPermutation(Permutation);

pub struct PermpathPath(ColoredMotzkinPath);

/// Coefficients of a truncated series, as decimal strings.
pub struct PermpathSeries(Vec<CString>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PermpathStatus {
    match e {
        Error::Parse { .. } | Error::UnknownName { .. } => PermpathStatus::Parse,
        Error::Precondition(_) => PermpathStatus::Precondition,
        Error::UnsupportedScheme { .. } => PermpathStatus::Unsupported,
        Error::OracleCap { .. } | Error::BeyondDeterminedRange { .. } => PermpathStatus::OutOfRange,
        _ => PermpathStatus::InvalidInput,
    }
}

struct Failure(PermpathStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PermpathStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PermpathStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PermpathStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(PermpathStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(PermpathStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(PermpathStatus::NullPointer, "null handle".into()))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(PermpathStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failure on this thread. Valid until the next call
/// on the same thread; do not free.
#[no_mangle]
pub extern "C" fn permpath_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn permpath_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line notation such as `"2 6 8 3"`.
///
/// # Safety
/// `s` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_perm_parse(s: *const c_char, out: *mut *mut PermpathPermutation) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let p: Permutation = text(s)?.parse()?;
        *out = Box::into_raw(Box::new(PermpathPermutation(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn permpath_perm_free(p: *mut PermpathPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Length of the permutation, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn permpath_perm_len(p: *const PermpathPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// One-line notation as a newly allocated string.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_perm_to_string(
    p: *const PermpathPermutation,
    out: *mut *mut c_char,
) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned_string(handle(p)?.0.to_string());
        Ok(())
    })
}

/// Parses a path such as `"U L1 D0"`.
///
/// # Safety
/// `s` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_path_parse(s: *const c_char, out: *mut *mut PermpathPath) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let m: ColoredMotzkinPath = text(s)?.parse()?;
        *out = Box::into_raw(Box::new(PermpathPath(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn permpath_path_free(m: *mut PermpathPath) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_path_to_string(m: *const PermpathPath, out: *mut *mut c_char) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned_string(handle(m)?.0.to_string());
        Ok(())
    })
}

/// The colored Motzkin path of a permutation.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_theta(p: *const PermpathPermutation, out: *mut *mut PermpathPath) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let m = theta(&handle(p)?.0);
        *out = Box::into_raw(Box::new(PermpathPath(m)));
        Ok(())
    })
}

/// The permutation of a colored Motzkin path.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_theta_inv(
    m: *const PermpathPath,
    out: *mut *mut PermpathPermutation,
) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let p = theta_inv(&handle(m)?.0)?;
        *out = Box::into_raw(Box::new(PermpathPermutation(p)));
        Ok(())
    })
}

/// Expands the continued fraction of a family (`"All"`, `"Cyclic"`, ...)
/// keeping the variables in `marks` (letters from `xvwtq`, may be empty).
///
/// # Safety
/// `subset` and `marks` must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_fraction(
    subset: *const c_char,
    marks: *const c_char,
    order: usize,
    out: *mut *mut PermpathSeries,
) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let subset: SubsetId = text(subset)?.parse()?;
        let marks: Marks = text(marks)?.parse()?;
        let series = scheme_for(subset, marks)?.series(order);
        let coeffs = series
            .coeffs()
            .iter()
            .map(|c| CString::new(c.to_string()).expect("no interior nul"))
            .collect();
        *out = Box::into_raw(Box::new(PermpathSeries(coeffs)));
        Ok(())
    })
}

/// Number of coefficients, `order + 1`.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn permpath_series_len(s: *const PermpathSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Borrowed coefficient `n`; valid while the series lives. Null if out of
/// range.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn permpath_series_coeff(s: *const PermpathSeries, n: usize) -> *const c_char {
    s.as_ref().and_then(|s| s.0.get(n)).map_or(ptr::null(), |c| c.as_ptr())
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn permpath_series_free(s: *mut PermpathSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Recovers J-fraction weights from comma-separated terms; the result is a
/// JSON object with `ell`, `dee`, `status` and `classification`.
///
/// # Safety
/// `terms` must be a valid C string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_invert(terms: *const c_char, out_json: *mut *mut c_char) -> PermpathStatus {
    guard(|| {
        out_ptr(out_json)?;
        let r = invert_jfraction(&parse_terms(text(terms)?)?)?;
        let json = serde_json::to_string(&RecoveryReport::from(&r))
            .map_err(|e| Failure(PermpathStatus::InvalidInput, e.to_string()))?;
        *out_json = owned_string(json);
        Ok(())
    })
}

/// Set partition of a cyclic permutation with increasing excedances, in the
/// form `{1,9},{2}`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_cie_partition(
    p: *const PermpathPermutation,
    out: *mut *mut c_char,
) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned_string(cie_to_partition(&handle(p)?.0)?.to_string());
        Ok(())
    })
}

/// Möbius-sum count for a family such as `"C(213,312)"`, as a decimal
/// string.
///
/// # Safety
/// `family` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn permpath_mobius_count(
    family: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> PermpathStatus {
    guard(|| {
        out_ptr(out)?;
        let family: MobiusFamily = text(family)?.parse()?;
        *out = owned_string(mobius_count(family, n)?.to_string());
        Ok(())
    })
}
