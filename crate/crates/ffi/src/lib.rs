//! C ABI for `brace8p`.
//!
//! Every function returns a [`Brace8pStatus`]; results go through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`brace8p_last_error`]. Handles are opaque and released with their
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use brace8p::{
    cross_check, AbelianGroup, Classification, Error, IsoType, ResidueClass, DEFAULT_ALLOWLIST,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Brace8pStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedPrime = 3,
    Internal = 4,
}

/// Pair-orbit classification for the three abelian groups of order 8.
pub struct Brace8pClassification {
    inner: Classification,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: Brace8pStatus, msg: &str) -> Brace8pStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> Brace8pStatus {
    let status = match e {
        Error::UnsupportedPrime { .. } => Brace8pStatus::UnsupportedPrime,
        Error::Consistency(_) | Error::Capacity { .. } => Brace8pStatus::Internal,
        _ => Brace8pStatus::InvalidArgument,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Brace8pStatus>) -> Brace8pStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Brace8pStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(Brace8pStatus::Internal, "panic inside brace8p"),
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Brace8pStatus> {
    if s.is_null() {
        return Err(fail(Brace8pStatus::NullPointer, &format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        fail(
            Brace8pStatus::InvalidArgument,
            &format!("{what} is not UTF-8"),
        )
    })
}

unsafe fn handle<'a>(h: *const Brace8pClassification) -> Result<&'a Classification, Brace8pStatus> {
    h.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(Brace8pStatus::NullPointer, "handle is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Brace8pStatus> {
    if out.is_null() {
        return Err(fail(Brace8pStatus::NullPointer, "output pointer is null"));
    }
    *out = value;
    Ok(())
}

fn group(text: &str) -> Result<AbelianGroup, Brace8pStatus> {
    let g: AbelianGroup = text.parse().map_err(from_error)?;
    if g.order() != 8 {
        return Err(fail(
            Brace8pStatus::InvalidArgument,
            &format!("{g} does not have order 8"),
        ));
    }
    Ok(g)
}

/// `major * 10000 + minor * 100 + patch`.
#[no_mangle]
pub extern "C" fn brace8p_version() -> u32 {
    let v = |s: &str| s.parse::<u32>().unwrap_or(0);
    v(env!("CARGO_PKG_VERSION_MAJOR")) * 10000
        + v(env!("CARGO_PKG_VERSION_MINOR")) * 100
        + v(env!("CARGO_PKG_VERSION_PATCH"))
}

/// Message of the last failure on this thread; empty if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn brace8p_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brace8p_classification_new(
    out: *mut *mut Brace8pClassification,
) -> Brace8pStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(Brace8pStatus::NullPointer, "output pointer is null"));
        }
        let inner = Classification::compute().map_err(from_error)?;
        *out = Box::into_raw(Box::new(Brace8pClassification { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`brace8p_classification_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn brace8p_classification_free(h: *mut Brace8pClassification) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Total number of braces for `p ≡ residue (mod 8)`.
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brace8p_table_total(
    h: *const Brace8pClassification,
    residue: u32,
    out: *mut u32,
) -> Brace8pStatus {
    guard(|| {
        let c = handle(h)?;
        let r = ResidueClass::from_residue(residue as u64).map_err(from_error)?;
        write(out, c.brace_table(r).total as u32)
    })
}

/// One cell of the table: `group` is a descriptor like `"4x2"`, `iso_type`
/// one of `C8`, `C4xC2`, `C2xC2xC2`, `D8`, `Q8`.
///
/// # Safety
/// `h` must be a live handle, the strings NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn brace8p_table_cell(
    h: *const Brace8pClassification,
    residue: u32,
    group_desc: *const c_char,
    iso_type: *const c_char,
    out: *mut u32,
) -> Brace8pStatus {
    guard(|| {
        let c = handle(h)?;
        let r = ResidueClass::from_residue(residue as u64).map_err(from_error)?;
        let e = group(text(group_desc, "group")?)?;
        let t: IsoType = text(iso_type, "iso_type")?.parse().map_err(from_error)?;
        let n = c.brace_table(r).cell(&e, t).unwrap_or(0);
        write(out, n as u32)
    })
}

/// Number of conjugacy classes of regular subgroups of `Hol(E)`.
///
/// # Safety
/// `h` must be a live handle, `group_desc` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn brace8p_holomorph_class_count(
    h: *const Brace8pClassification,
    group_desc: *const c_char,
    out: *mut u32,
) -> Brace8pStatus {
    guard(|| {
        let c = handle(h)?;
        let e = group(text(group_desc, "group")?)?;
        let g = c.group(&e).map_err(from_error)?;
        write(out, g.survey.classes.len() as u32)
    })
}

/// Runs the brute-force oracle for one `(p, E)` and writes its class count
/// next to the predicted one. `p` must be on the default allowlist.
///
/// # Safety
/// `h` must be a live handle, `group_desc` NUL-terminated, outputs valid.
#[no_mangle]
pub unsafe extern "C" fn brace8p_oracle_check(
    h: *const Brace8pClassification,
    p: u64,
    group_desc: *const c_char,
    oracle_classes: *mut u32,
    predicted: *mut u32,
) -> Brace8pStatus {
    guard(|| {
        let c = handle(h)?;
        let e = group(text(group_desc, "group")?)?;
        let rep = cross_check(p, &[e], &DEFAULT_ALLOWLIST, c).map_err(from_error)?;
        let entry = &rep.entries[0];
        write(oracle_classes, entry.oracle_classes as u32)?;
        write(predicted, entry.predicted as u32)
    })
}

/// The table for one residue class as JSON. Release with
/// [`brace8p_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn brace8p_table_json(
    h: *const Brace8pClassification,
    residue: u32,
    out: *mut *mut c_char,
) -> Brace8pStatus {
    guard(|| {
        let c = handle(h)?;
        let r = ResidueClass::from_residue(residue as u64).map_err(from_error)?;
        let json = brace8p::report::to_json(&c.brace_table(r)).map_err(from_error)?;
        let s = CString::new(json).map_err(|_| fail(Brace8pStatus::Internal, "NUL in JSON"))?;
        write(out, s.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn brace8p_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
