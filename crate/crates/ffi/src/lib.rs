//! C ABI over `spo_core`.
//!
//! Every fallible call returns an [`SpoStatus`]. On a non-zero status the
//! message is available from [`spo_last_error`] on the same thread.
//! Root systems are opaque handles created by [`spo_root_system_new`] and
//! released by [`spo_root_system_free`]. Strings returned through an
//! out-pointer belong to the caller and are released by
//! [`spo_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spo_core::chevalley::{restricted_check, ChevalleyBasis};
use spo_core::classify::in_xdag;
use spo_core::partitions::Partition;
use spo_core::rootdata::{RootSystem, Weight};

/// Status code of every fallible call.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CheckFailed = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

/// Opaque handle to a root system of `spo(2n|l)`.
pub struct SpoRootSystem {
    inner: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn fail(status: SpoStatus, message: impl Into<String>) -> SpoStatus {
    set_error(message);
    status
}

fn guarded(body: impl FnOnce() -> SpoStatus) -> SpoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => {
            if status == SpoStatus::Ok {
                set_error("");
            }
            status
        }
        Err(_) => fail(SpoStatus::Internal, "internal panic"),
    }
}

/// # Safety
/// `data` must be null only when `len == 0`, otherwise valid for `len` reads.
unsafe fn slice<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if data.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(data, len))
    }
}

/// # Safety
/// Pointer arguments as in the public functions taking a weight.
unsafe fn weight_arg<'a>(
    rs: *const SpoRootSystem,
    neg: *const i64,
    neg_len: usize,
    pos: *const i64,
    pos_len: usize,
) -> Result<(&'a RootSystem, Weight), SpoStatus> {
    let rs = rs
        .as_ref()
        .ok_or_else(|| fail(SpoStatus::NullPointer, "null root system"))?;
    let (Some(neg), Some(pos)) = (slice(neg, neg_len), slice(pos, pos_len)) else {
        return Err(fail(SpoStatus::NullPointer, "null coordinate array"));
    };
    let w = Weight::new(neg.to_vec(), pos.to_vec());
    rs.inner
        .check_shape(&w)
        .map_err(|e| fail(SpoStatus::InvalidArgument, e.to_string()))?;
    Ok((&rs.inner, w))
}

/// # Safety
/// `parts` must be valid for `len` reads unless `len == 0`.
unsafe fn partition_arg(parts: *const usize, len: usize) -> Result<Partition, SpoStatus> {
    let parts = slice(parts, len).ok_or_else(|| fail(SpoStatus::NullPointer, "null partition"))?;
    Partition::new(parts.to_vec()).map_err(|e| fail(SpoStatus::InvalidArgument, e.to_string()))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer is valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn spo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds the root system of `spo(2n|ell)` into `*out`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn spo_root_system_new(
    n: usize,
    ell: usize,
    out: *mut *mut SpoRootSystem,
) -> SpoStatus {
    guarded(|| {
        if out.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        match RootSystem::new(n, ell) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SpoRootSystem { inner }));
                SpoStatus::Ok
            }
            Err(e) => {
                *out = ptr::null_mut();
                fail(SpoStatus::InvalidArgument, e.to_string())
            }
        }
    })
}

/// Releases a handle. Null is accepted.
///
/// # Safety
/// `rs` must come from [`spo_root_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spo_root_system_free(rs: *mut SpoRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Number of negative and positive weight coordinates.
///
/// # Safety
/// `rs` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn spo_root_system_ranks(
    rs: *const SpoRootSystem,
    neg_rank: *mut usize,
    pos_rank: *mut usize,
) -> SpoStatus {
    guarded(|| {
        let Some(rs) = rs.as_ref() else {
            return fail(SpoStatus::NullPointer, "null root system");
        };
        if neg_rank.is_null() || pos_rank.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        *neg_rank = rs.inner.neg_rank();
        *pos_rank = rs.inner.pos_rank();
        SpoStatus::Ok
    })
}

/// `*out = lam` is dominant, with `lam` given by its negative coordinates
/// `(lam_{-n}, ..., lam_{-1})` and positive coordinates `(lam_1, ...)`.
///
/// # Safety
/// `rs` must be a live handle, the arrays valid for their lengths and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spo_is_dominant(
    rs: *const SpoRootSystem,
    neg: *const i64,
    neg_len: usize,
    pos: *const i64,
    pos_len: usize,
    out: *mut bool,
) -> SpoStatus {
    guarded(|| {
        let (rs, w) = try_status!(weight_arg(rs, neg, neg_len, pos, pos_len));
        if out.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        *out = rs.is_dominant(&w);
        SpoStatus::Ok
    })
}

/// `*out = lam` is the highest weight of a finite-dimensional simple
/// module in characteristic `p` (0 or an odd prime).
///
/// # Safety
/// As for [`spo_is_dominant`].
#[no_mangle]
pub unsafe extern "C" fn spo_in_xdag(
    rs: *const SpoRootSystem,
    neg: *const i64,
    neg_len: usize,
    pos: *const i64,
    pos_len: usize,
    p: u64,
    out: *mut bool,
) -> SpoStatus {
    guarded(|| {
        let (rs, w) = try_status!(weight_arg(rs, neg, neg_len, pos, pos_len));
        if out.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        if p != 0 && !spo_core::is_odd_prime(p) {
            return fail(
                SpoStatus::InvalidArgument,
                format!("p must be 0 or an odd prime, got {p}"),
            );
        }
        *out = in_xdag(&w, rs, p);
        SpoStatus::Ok
    })
}

/// `j(mu)` at `p`.
///
/// # Safety
/// `parts` must be valid for `len` reads and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spo_little_j(
    parts: *const usize,
    len: usize,
    p: u32,
    out: *mut usize,
) -> SpoStatus {
    guarded(|| {
        let mu = try_status!(partition_arg(parts, len));
        if out.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        match mu.little_j(p) {
            Ok(j) => {
                *out = j;
                SpoStatus::Ok
            }
            Err(e) => fail(SpoStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Mullineux image of a `p`-restricted partition. The parts are written
/// to `out` (capacity `cap`) and their count to `*out_len`. When `cap` is
/// too small nothing is written to `out`, `*out_len` holds the required
/// length and the status is `BufferTooSmall`.
///
/// # Safety
/// `parts` valid for `len` reads, `out` valid for `cap` writes (may be
/// null when `cap == 0`), `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn spo_mullineux(
    parts: *const usize,
    len: usize,
    p: u32,
    out: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> SpoStatus {
    guarded(|| {
        let mu = try_status!(partition_arg(parts, len));
        if out_len.is_null() {
            return fail(SpoStatus::NullPointer, "null length pointer");
        }
        let image = match mu.mullineux(p) {
            Ok(image) => image,
            Err(e) => return fail(SpoStatus::InvalidArgument, e.to_string()),
        };
        *out_len = image.len();
        if image.len() > cap {
            return fail(
                SpoStatus::BufferTooSmall,
                format!("need {} parts, capacity {cap}", image.len()),
            );
        }
        if !image.is_empty() {
            if out.is_null() {
                return fail(SpoStatus::NullPointer, "null output buffer");
            }
            std::slice::from_raw_parts_mut(out, image.len()).copy_from_slice(image.parts());
        }
        SpoStatus::Ok
    })
}

/// Bracket table of the Chevalley basis as a JSON list of
/// `{"lhs", "rhs", "result"}` rows. `*out` receives a string owned by the
/// caller.
///
/// # Safety
/// `rs` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spo_bracket_table_json(
    rs: *const SpoRootSystem,
    out: *mut *mut c_char,
) -> SpoStatus {
    guarded(|| {
        let Some(rs) = rs.as_ref() else {
            return fail(SpoStatus::NullPointer, "null root system");
        };
        if out.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        *out = ptr::null_mut();
        let table = match ChevalleyBasis::new(&rs.inner).and_then(|b| b.bracket_table()) {
            Ok(table) => table,
            Err(e) => return fail(SpoStatus::CheckFailed, e.to_string()),
        };
        let text = match serde_json::to_string(&table.rows()) {
            Ok(text) => text,
            Err(e) => return fail(SpoStatus::Internal, e.to_string()),
        };
        match CString::new(text) {
            Ok(c) => {
                *out = c.into_raw();
                SpoStatus::Ok
            }
            Err(e) => fail(SpoStatus::Internal, e.to_string()),
        }
    })
}

/// `ad(X^[p]) = (ad X)^p` for every even basis element. The number of
/// failing elements goes to `*violations`; any failure gives
/// `CheckFailed`.
///
/// # Safety
/// `rs` must be a live handle and `violations` writable.
#[no_mangle]
pub unsafe extern "C" fn spo_restricted_check(
    rs: *const SpoRootSystem,
    p: u64,
    violations: *mut u64,
) -> SpoStatus {
    guarded(|| {
        let Some(rs) = rs.as_ref() else {
            return fail(SpoStatus::NullPointer, "null root system");
        };
        if violations.is_null() {
            return fail(SpoStatus::NullPointer, "null out pointer");
        }
        let basis = match ChevalleyBasis::new(&rs.inner) {
            Ok(b) => b,
            Err(e) => return fail(SpoStatus::CheckFailed, e.to_string()),
        };
        let report = match basis
            .bracket_table()
            .and_then(|t| restricted_check(&basis, &t, p))
        {
            Ok(r) => r,
            Err(e) => return fail(SpoStatus::InvalidArgument, e.to_string()),
        };
        *violations = report.violations.len() as u64;
        match report.violations.first() {
            None => SpoStatus::Ok,
            Some(first) => fail(SpoStatus::CheckFailed, first.clone()),
        }
    })
}

/// Releases a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn spo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
