//! C ABI over `sollab`.
//!
//! Every function returns a [`SollabStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function, and strings handed out by the library are released with
//! [`sollab_string_free`]. After a non-OK status,
//! [`sollab_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sollab::involution::{psi, PsiCase};
use sollab::registry::{self, IdentityId, Mode};
use sollab::{Error, Partition, QSeries, SeriesError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SollabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotMember = 3,
    /// The check ran and the two sides differ.
    Mismatch = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SollabPsiCase {
    Fixed = 0,
    CaseI = 1,
    CaseII = 2,
}

/// Opaque partition handle.
pub struct SollabPartition(Partition);

/// Opaque truncated q-series handle.
pub struct SollabSeries(QSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Fail(SollabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotMember { .. } => SollabStatus::NotMember,
            Error::Invariant(_) => SollabStatus::Internal,
            _ => SollabStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<SeriesError> for Fail {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Partition(inner) => inner.into(),
            SeriesError::NoEnumForm(_) | SeriesError::Unsupported { .. } => {
                Fail(SollabStatus::InvalidArgument, e.to_string())
            }
            other => Fail(SollabStatus::Internal, other.to_string()),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(SollabStatus::InvalidArgument, msg.into())
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, recording its error message and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<SollabStatus, Fail>) -> SollabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == SollabStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside sollab");
            SollabStatus::Internal
        }
    }
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(SollabStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    non_null(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{name} is not UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL in JSON").into_raw()
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sollab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sollab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a partition from `len` weakly increasing positive parts.
///
/// # Safety
/// `parts` must point to `len` readable values (it may be null when `len`
/// is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_partition_new(
    parts: *const u32,
    len: usize,
    out: *mut *mut SollabPartition,
) -> SollabStatus {
    guard(|| {
        non_null(out, "out")?;
        let v = if len == 0 {
            Vec::new()
        } else {
            non_null(parts, "parts")?;
            std::slice::from_raw_parts(parts, len).to_vec()
        };
        let p = Partition::new(v)?;
        *out = Box::into_raw(Box::new(SollabPartition(p)));
        Ok(SollabStatus::Ok)
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sollab_partition_free(p: *mut SollabPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of parts.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_partition_len(p: *const SollabPartition, out: *mut usize) -> SollabStatus {
    guard(|| {
        non_null(p, "partition")?;
        non_null(out, "out")?;
        *out = (*p).0.len();
        Ok(SollabStatus::Ok)
    })
}

/// Sum of the parts.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_partition_weight(p: *const SollabPartition, out: *mut u64) -> SollabStatus {
    guard(|| {
        non_null(p, "partition")?;
        non_null(out, "out")?;
        *out = (*p).0.weight();
        Ok(SollabStatus::Ok)
    })
}

/// Copies the parts in increasing order into `buf`, which holds `cap`
/// values. `InvalidArgument` if `cap` is smaller than the length.
///
/// # Safety
/// `p` must be a live handle and `buf` writable for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sollab_partition_parts(p: *const SollabPartition, buf: *mut u32, cap: usize) -> SollabStatus {
    guard(|| {
        non_null(p, "partition")?;
        let parts = (*p).0.parts();
        if parts.len() > cap {
            return Err(invalid(format!("buffer holds {cap} parts, need {}", parts.len())));
        }
        if !parts.is_empty() {
            non_null(buf, "buf")?;
            ptr::copy_nonoverlapping(parts.as_ptr(), buf, parts.len());
        }
        Ok(SollabStatus::Ok)
    })
}

/// Applies the involution ψ. `NotMember` unless the input has
/// multiplicities at most 2 and adjacent distinct sizes at least 2 apart.
///
/// # Safety
/// `p` must be a live handle; `out` and `case_out` writable (`case_out` may
/// be null).
#[no_mangle]
pub unsafe extern "C" fn sollab_psi(
    p: *const SollabPartition,
    out: *mut *mut SollabPartition,
    case_out: *mut SollabPsiCase,
) -> SollabStatus {
    guard(|| {
        non_null(p, "partition")?;
        non_null(out, "out")?;
        let r = psi(&(*p).0)?;
        if !case_out.is_null() {
            *case_out = match r.case {
                PsiCase::Fixed => SollabPsiCase::Fixed,
                PsiCase::CaseI => SollabPsiCase::CaseI,
                PsiCase::CaseII => SollabPsiCase::CaseII,
            };
        }
        *out = Box::into_raw(Box::new(SollabPartition(r.output)));
        Ok(SollabStatus::Ok)
    })
}

unsafe fn series_side(
    id: *const c_char,
    order: u32,
    out: *mut *mut SollabSeries,
    side: fn(IdentityId, u32) -> Result<QSeries, SeriesError>,
) -> SollabStatus {
    guard(|| {
        non_null(out, "out")?;
        let id: IdentityId = str_arg(id, "id")?.parse()?;
        *out = Box::into_raw(Box::new(SollabSeries(side(id, order)?)));
        Ok(SollabStatus::Ok)
    })
}

/// Left-hand side of a registered identity through `q^order`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_series_lhs(id: *const c_char, order: u32, out: *mut *mut SollabSeries) -> SollabStatus {
    series_side(id, order, out, registry::lhs)
}

/// Right-hand side of a registered identity through `q^order`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_series_rhs(id: *const c_char, order: u32, out: *mut *mut SollabSeries) -> SollabStatus {
    series_side(id, order, out, registry::rhs)
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sollab_series_free(s: *mut SollabSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Serializes a series; free the result with [`sollab_string_free`].
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_series_to_json(s: *const SollabSeries, out: *mut *mut c_char) -> SollabStatus {
    guard(|| {
        non_null(s, "series")?;
        non_null(out, "out")?;
        let json = serde_json::to_string(&(*s).0).map_err(|e| Fail(SollabStatus::Internal, e.to_string()))?;
        *out = into_c_string(json);
        Ok(SollabStatus::Ok)
    })
}

/// Verifies one identity in one mode (`series`, `enum`, `pairing` or
/// `counting`) and writes the report as JSON to `out`. An `order` of 0
/// selects the registry default. Returns `Mismatch` (with the report still
/// written) when the sides differ.
///
/// # Safety
/// `id` and `mode` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sollab_verify_json(
    id: *const c_char,
    mode: *const c_char,
    order: u32,
    out: *mut *mut c_char,
) -> SollabStatus {
    guard(|| {
        non_null(out, "out")?;
        let id: IdentityId = str_arg(id, "id")?.parse()?;
        let mode: Mode = str_arg(mode, "mode")?.parse()?;
        let order = if order == 0 { id.default_order(mode) } else { order };
        let report = registry::verify(id, mode, order)?;
        let json = serde_json::to_string(&report).map_err(|e| Fail(SollabStatus::Internal, e.to_string()))?;
        *out = into_c_string(json);
        if report.is_equal() {
            Ok(SollabStatus::Ok)
        } else {
            set_error(&report.to_string());
            Ok(SollabStatus::Mismatch)
        }
    })
}
