// SPDX-License-Identifier: Apache-2.0

//! C ABI over `matching-frames`.
//!
//! Matrices are opaque `MfMatrix` handles created by [`mf_matrix_new`] and
//! released by [`mf_matrix_free`]. Every fallible call returns an
//! [`MfStatus`]; on failure the message is kept per thread and can be copied
//! out with [`mf_last_error_message`]. Frames are 1-based and inclusive.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use matching_frames::grid::{is_matching, Frame, Matrix, SymbolCode};
use matching_frames::{approx_max_frame, decide, max_matching_frame, Error};

/// Result codes. `MF_NOT_FOUND` is not an error: the call succeeded and the
/// matrix has no matching frame.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MfStatus {
    MfOk = 0,
    MfNotFound = 1,
    MfNullPointer = 2,
    MfInvalidInput = 3,
    MfOutOfBounds = 4,
    MfDegenerateStride = 5,
    MfPanic = 6,
}

/// Frame with rows `u..=d` and columns `l..=r`, 1-based.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MfFrame {
    pub u: usize,
    pub d: usize,
    pub l: usize,
    pub r: usize,
}

impl From<Frame> for MfFrame {
    fn from(f: Frame) -> Self {
        Self {
            u: f.u,
            d: f.d,
            l: f.l,
            r: f.r,
        }
    }
}

/// Opaque matrix handle.
pub struct MfMatrix {
    inner: Matrix,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: MfStatus, msg: impl Into<String>) -> MfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
    status
}

fn from_error(err: Error) -> MfStatus {
    let status = match err {
        Error::OutOfBounds(_) => MfStatus::MfOutOfBounds,
        Error::DegenerateStride { .. } => MfStatus::MfDegenerateStride,
        _ => MfStatus::MfInvalidInput,
    };
    fail(status, err.to_string())
}

fn guarded(body: impl FnOnce() -> MfStatus) -> MfStatus {
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| fail(MfStatus::MfPanic, "internal panic"))
}

unsafe fn matrix<'a>(handle: *const MfMatrix) -> Result<&'a Matrix, MfStatus> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(MfStatus::MfNullPointer, "null matrix handle"))
}

fn null(what: &str) -> MfStatus {
    fail(MfStatus::MfNullPointer, format!("null {what} pointer"))
}

unsafe fn report(found: Option<Frame>, out: *mut MfFrame) -> MfStatus {
    match found {
        Some(f) => {
            *out = f.into();
            MfStatus::MfOk
        }
        None => MfStatus::MfNotFound,
    }
}

/// Builds a `rows x cols` matrix from `cells` in row-major order.
///
/// # Safety
/// `cells` must point to `rows * cols` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mf_matrix_new(
    rows: usize,
    cols: usize,
    cells: *const u32,
    out: *mut *mut MfMatrix,
) -> MfStatus {
    guarded(|| {
        if out.is_null() {
            return null("output");
        }
        let Some(len) = rows.checked_mul(cols) else {
            return fail(MfStatus::MfInvalidInput, "rows * cols overflows");
        };
        if cells.is_null() && len > 0 {
            return null("cells");
        }
        let data: Vec<SymbolCode> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(cells, len).to_vec()
        };
        match Matrix::new(rows, cols, data) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(MfMatrix { inner }));
                MfStatus::MfOk
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from [`mf_matrix_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mf_matrix_free(handle: *mut MfMatrix) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Row count, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn mf_matrix_rows(handle: *const MfMatrix) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.rows())
}

/// Column count, or 0 for a null handle.
///
/// # Safety
/// `handle` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn mf_matrix_cols(handle: *const MfMatrix) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.cols())
}

/// Maximum-perimeter matching frame. Writes `out` on `MF_OK`.
///
/// # Safety
/// `handle` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_exact(handle: *const MfMatrix, out: *mut MfFrame) -> MfStatus {
    guarded(|| {
        let m = match matrix(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return null("output");
        }
        report(max_matching_frame(m).frame, out)
    })
}

/// Matching frame with perimeter at least `(1 - epsilon)` times the
/// optimum, for `0 < epsilon < 1`. Writes `out` on `MF_OK`.
///
/// # Safety
/// `handle` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_approx(
    handle: *const MfMatrix,
    epsilon: f64,
    out: *mut MfFrame,
) -> MfStatus {
    guarded(|| {
        let m = match matrix(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return null("output");
        }
        match approx_max_frame(m, epsilon) {
            Ok(found) => report(found, out),
            Err(e) => from_error(e),
        }
    })
}

/// Sets `*out` to whether any matching frame exists.
///
/// # Safety
/// `handle` must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_decide(handle: *const MfMatrix, out: *mut bool) -> MfStatus {
    guarded(|| {
        let m = match matrix(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        if out.is_null() {
            return null("output");
        }
        match decide(m) {
            Ok(found) => {
                *out = found;
                MfStatus::MfOk
            }
            Err(e) => from_error(e),
        }
    })
}

/// Sets `*out` to whether `frame` is a matching frame of the matrix.
///
/// # Safety
/// `handle` must be valid, `frame` readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mf_is_matching(
    handle: *const MfMatrix,
    frame: *const MfFrame,
    out: *mut bool,
) -> MfStatus {
    guarded(|| {
        let m = match matrix(handle) {
            Ok(m) => m,
            Err(s) => return s,
        };
        let (Some(f), false) = (frame.as_ref(), out.is_null()) else {
            return null("frame or output");
        };
        let checked = Frame::new(f.u, f.d, f.l, f.r).and_then(|f| is_matching(m, &f));
        match checked {
            Ok(ok) => {
                *out = ok;
                MfStatus::MfOk
            }
            Err(e) => from_error(e),
        }
    })
}

/// `2 * (d - u + r - l)`, or 0 for a null or inverted frame.
///
/// # Safety
/// `frame` must be null or readable.
#[no_mangle]
pub unsafe extern "C" fn mf_perimeter(frame: *const MfFrame) -> usize {
    match frame.as_ref() {
        Some(f) if f.u <= f.d && f.l <= f.r => 2 * (f.d - f.u + f.r - f.l),
        _ => 0,
    }
}

/// Copies the calling thread's last error message into `buf` (NUL
/// terminated, truncated to `len`). Returns the full message length in
/// bytes, excluding the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn mf_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn mf_status_name(status: MfStatus) -> *const c_char {
    let name: &'static CStr = match status {
        MfStatus::MfOk => c"ok",
        MfStatus::MfNotFound => c"not found",
        MfStatus::MfNullPointer => c"null pointer",
        MfStatus::MfInvalidInput => c"invalid input",
        MfStatus::MfOutOfBounds => c"out of bounds",
        MfStatus::MfDegenerateStride => c"degenerate stride",
        MfStatus::MfPanic => c"panic",
    };
    name.as_ptr()
}
