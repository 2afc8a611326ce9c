//! C ABI for mdecc.
//!
//! Codes are opaque `MdeccCode` handles built from a JSON code configuration.
//! Every fallible call returns an `MdeccStatus`; the message of the most
//! recent failure on the calling thread is available from
//! `mdecc_last_error_message`. Arrays cross the boundary as one byte per cell
//! (0 or 1) in row-major order, syndromes as one byte per check bit.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use mdecc::array::BitArray;
use mdecc::config::CodeConfig;
use mdecc::pipeline::AnyCode;
use mdecc::{Correction, DecodeError, LinearCode};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdeccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidConfig = 3,
    OutOfRange = 4,
    LengthMismatch = 5,
    BufferTooSmall = 6,
    Uncorrectable = 7,
    Ambiguous = 8,
    Panic = 9,
}

/// Opaque code handle.
pub struct MdeccCode {
    code: AnyCode,
    name: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(status: MdeccStatus, message: impl Into<String>) -> MdeccStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> MdeccStatus) -> MdeccStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(MdeccStatus::Panic, "internal panic"),
    }
}

unsafe fn code_ref<'a>(code: *const MdeccCode) -> Result<&'a MdeccCode, MdeccStatus> {
    code.as_ref().ok_or_else(|| fail(MdeccStatus::NullPointer, "null code handle"))
}

unsafe fn cells_in<'a>(code: &MdeccCode, array: *const u8, len: usize) -> Result<&'a [u8], MdeccStatus> {
    if array.is_null() {
        return Err(fail(MdeccStatus::NullPointer, "null array"));
    }
    let volume = code.code.dims().volume();
    if len != volume {
        return Err(fail(MdeccStatus::LengthMismatch, format!("array length {len}, expected {volume}")));
    }
    Ok(slice::from_raw_parts(array, len))
}

fn to_array(code: &MdeccCode, cells: &[u8]) -> Result<BitArray, MdeccStatus> {
    BitArray::from_cells(code.code.dims(), cells.to_vec()).map_err(|e| fail(MdeccStatus::OutOfRange, e.to_string()))
}

fn decode(code: &MdeccCode, array: &BitArray) -> Result<Vec<usize>, MdeccStatus> {
    match code.code.decode_syndrome(&code.code.syndrome_of_array(array)) {
        Ok(Correction::NoError) => Ok(Vec::new()),
        Ok(Correction::Pattern(p)) => Ok(p.cells().to_vec()),
        Err(e @ DecodeError::Ambiguous(_)) => Err(fail(MdeccStatus::Ambiguous, e.to_string())),
        Err(e) => Err(fail(MdeccStatus::Uncorrectable, e.to_string())),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mdecc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failure on this thread, or NULL. Free with
/// `mdecc_string_free`.
#[no_mangle]
pub extern "C" fn mdecc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Free a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdecc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build a code from a JSON configuration such as
/// `{"construction":"A","dims":[4,4]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_from_config_json(json: *const c_char, out: *mut *mut MdeccCode) -> MdeccStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(MdeccStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let text = tri!(CStr::from_ptr(json).to_str().map_err(|e| fail(MdeccStatus::InvalidUtf8, e.to_string())));
        let config: CodeConfig =
            tri!(serde_json::from_str(text).map_err(|e| fail(MdeccStatus::InvalidConfig, e.to_string())));
        let built = tri!(config.build().map_err(|e| fail(MdeccStatus::InvalidConfig, e.to_string())));
        let name = CString::new(built.code.name()).unwrap_or_default();
        *out = Box::into_raw(Box::new(MdeccCode { code: built.code, name }));
        MdeccStatus::Ok
    })
}

/// Release a code handle.
///
/// # Safety
/// `code` must be NULL or a handle from `mdecc_code_from_config_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_free(code: *mut MdeccCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Code name, valid for the lifetime of the handle.
///
/// # Safety
/// `code` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_name(code: *const MdeccCode) -> *const c_char {
    code.as_ref().map_or(ptr::null(), |c| c.name.as_ptr())
}

/// Number of parity-check rows r.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_redundancy(code: *const MdeccCode, out: *mut usize) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        if out.is_null() {
            return fail(MdeccStatus::NullPointer, "null output");
        }
        *out = code.code.redundancy();
        MdeccStatus::Ok
    })
}

/// Number of cells N.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_volume(code: *const MdeccCode, out: *mut usize) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        if out.is_null() {
            return fail(MdeccStatus::NullPointer, "null output");
        }
        *out = code.code.dims().volume();
        MdeccStatus::Ok
    })
}

/// Write the parity-check column of `cell` as `r` bytes.
///
/// # Safety
/// `code` must be a live handle; `bits` must hold `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_column(
    code: *const MdeccCode,
    cell: usize,
    bits: *mut u8,
    len: usize,
) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        if bits.is_null() {
            return fail(MdeccStatus::NullPointer, "null output");
        }
        let volume = code.code.dims().volume();
        if cell >= volume {
            return fail(MdeccStatus::OutOfRange, format!("cell {cell} outside 0..{volume}"));
        }
        let r = code.code.redundancy();
        if len < r {
            return fail(MdeccStatus::BufferTooSmall, format!("need {r} bytes"));
        }
        let column = code.code.column(cell);
        let out = slice::from_raw_parts_mut(bits, r);
        for (k, b) in out.iter_mut().enumerate() {
            *b = column.get(k) as u8;
        }
        MdeccStatus::Ok
    })
}

/// Syndrome of an array, written as `r` bytes.
///
/// # Safety
/// `array` must hold `len` readable bytes; `syndrome` must hold `syndrome_len`
/// writable bytes.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_syndrome(
    code: *const MdeccCode,
    array: *const u8,
    len: usize,
    syndrome: *mut u8,
    syndrome_len: usize,
) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        let cells = tri!(cells_in(code, array, len));
        if syndrome.is_null() {
            return fail(MdeccStatus::NullPointer, "null output");
        }
        let r = code.code.redundancy();
        if syndrome_len < r {
            return fail(MdeccStatus::BufferTooSmall, format!("need {r} bytes"));
        }
        let s = code.code.syndrome_of_array(&tri!(to_array(code, cells)));
        let out = slice::from_raw_parts_mut(syndrome, r);
        for (k, b) in out.iter_mut().enumerate() {
            *b = s.get(k) as u8;
        }
        MdeccStatus::Ok
    })
}

/// Decode an array without modifying it. The erroneous cells' linear indices
/// go to `cells` (capacity `cap`) and their number to `count`; zero means no
/// error.
///
/// # Safety
/// `array` must hold `len` readable bytes; `cells` must hold `cap` writable
/// entries; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_decode(
    code: *const MdeccCode,
    array: *const u8,
    len: usize,
    cells: *mut usize,
    cap: usize,
    count: *mut usize,
) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        let input = tri!(cells_in(code, array, len));
        if count.is_null() || (cells.is_null() && cap > 0) {
            return fail(MdeccStatus::NullPointer, "null output");
        }
        let found = tri!(decode(code, &tri!(to_array(code, input))));
        *count = found.len();
        if found.len() > cap {
            return fail(MdeccStatus::BufferTooSmall, format!("need {} entries", found.len()));
        }
        if !found.is_empty() {
            slice::from_raw_parts_mut(cells, found.len()).copy_from_slice(&found);
        }
        MdeccStatus::Ok
    })
}

/// Decode and flip the erroneous cells in place; `count` receives their number.
///
/// # Safety
/// `array` must hold `len` writable bytes; `count` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mdecc_code_correct(
    code: *const MdeccCode,
    array: *mut u8,
    len: usize,
    count: *mut usize,
) -> MdeccStatus {
    guard(|| {
        let code = tri!(code_ref(code));
        let input = tri!(cells_in(code, array, len));
        let found = tri!(decode(code, &tri!(to_array(code, input))));
        let out = slice::from_raw_parts_mut(array, len);
        for &c in &found {
            out[c] ^= 1;
        }
        if !count.is_null() {
            *count = found.len();
        }
        MdeccStatus::Ok
    })
}
