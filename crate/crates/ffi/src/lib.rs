//! C ABI over `cubary`.
//!
//! Complexes cross the boundary as opaque `CubaryComplex` handles owned by
//! the caller and released with `cubary_complex_free`. Strings returned by
//! the library are released with `cubary_string_free`. Every function
//! returns a `CubaryStatus`; on failure `cubary_last_error` gives a message
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cubary::complex::{ComplexError, CubicalComplex};
use cubary::num_bigint::BigInt;
use cubary::subdivision::{subdivide_n, SubdivisionError};
use cubary::transform::{b_matrix, c_matrix, TransformError};
use cubary::vectors::Vectors;
use num_traits::ToPrimitive;

/// Opaque complex handle.
pub struct CubaryComplex {
    inner: CubicalComplex,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubaryStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidComplex = 4,
    BudgetExceeded = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    CrossCheck = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubaryMatrix {
    B = 0,
    C = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl ToString) {
    let s = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

type Res<T> = Result<T, (CubaryStatus, String)>;

fn fail<T>(status: CubaryStatus, msg: impl ToString) -> Res<T> {
    Err((status, msg.to_string()))
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Res<()>) -> CubaryStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CubaryStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CubaryStatus::Panic
        }
    }
}

unsafe fn handle<'a>(c: *const CubaryComplex) -> Res<&'a CubicalComplex> {
    match c.as_ref() {
        Some(h) => Ok(&h.inner),
        None => fail(CubaryStatus::NullPointer, "null complex handle"),
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> Res<()> {
    if out.is_null() {
        return fail(CubaryStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    Ok(())
}

unsafe fn put_complex(out: *mut *mut CubaryComplex, k: CubicalComplex) -> Res<()> {
    if out.is_null() {
        return fail(CubaryStatus::NullPointer, "null output pointer");
    }
    out.write(Box::into_raw(Box::new(CubaryComplex { inner: k })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let c = CString::new(s).map_err(|_| (CubaryStatus::Panic, "nul byte in output".to_string()))?;
    put(out, c.into_raw())
}

/// Message for the last failing call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cubary_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Solid `d`-cube.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_gen_cube(d: usize, out: *mut *mut CubaryComplex) -> CubaryStatus {
    guard(|| {
        if d > 12 {
            return fail(CubaryStatus::InvalidArgument, format!("d = {d} is too large"));
        }
        put_complex(out, CubicalComplex::gen_cube(d))
    })
}

/// Boundary of the `d`-cube, `d >= 1`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_gen_cube_boundary(d: usize, out: *mut *mut CubaryComplex) -> CubaryStatus {
    guard(|| {
        if !(1..=12).contains(&d) {
            return fail(CubaryStatus::InvalidArgument, format!("d must be in 1..=12, got {d}"));
        }
        match CubicalComplex::gen_cube_boundary(d) {
            Ok(k) => put_complex(out, k),
            Err(e) => fail(CubaryStatus::InvalidArgument, e),
        }
    })
}

/// Parses and validates complex JSON.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_complex_from_json(json: *const c_char, out: *mut *mut CubaryComplex) -> CubaryStatus {
    guard(|| {
        if json.is_null() {
            return fail(CubaryStatus::NullPointer, "null json string");
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (CubaryStatus::Parse, e.to_string()))?;
        let k = match CubicalComplex::from_json_str(text) {
            Ok(k) => k,
            Err(e @ ComplexError::Json(_)) => return fail(CubaryStatus::Parse, e),
            Err(e) => return fail(CubaryStatus::InvalidComplex, e),
        };
        let v = k.validate();
        if !v.is_ok() {
            return fail(CubaryStatus::InvalidComplex, v);
        }
        put_complex(out, k)
    })
}

/// Serializes a complex; free the result with `cubary_string_free`.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_complex_to_json(c: *const CubaryComplex, out: *mut *mut c_char) -> CubaryStatus {
    guard(|| put_string(out, handle(c)?.to_json_string()))
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cubary_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `c` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn cubary_complex_free(c: *mut CubaryComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// `n`-fold subdivision, refusing results with more than `budget` faces.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_subdivide(
    c: *const CubaryComplex,
    n: u32,
    budget: u64,
    out: *mut *mut CubaryComplex,
) -> CubaryStatus {
    guard(|| match subdivide_n(handle(c)?, n, budget) {
        Ok(k) => put_complex(out, k),
        Err(e @ SubdivisionError::BudgetExceeded { .. }) => fail(CubaryStatus::BudgetExceeded, e),
        Err(e @ SubdivisionError::Invalid(_)) => fail(CubaryStatus::InvalidComplex, e),
    })
}

/// Dimension of the complex.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_complex_dim(c: *const CubaryComplex, out: *mut usize) -> CubaryStatus {
    guard(|| put(out, handle(c)?.dim()))
}

/// Number of nonempty faces.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_complex_face_count(c: *const CubaryComplex, out: *mut usize) -> CubaryStatus {
    guard(|| put(out, handle(c)?.len()))
}

#[derive(Clone, Copy)]
enum Which {
    F,
    Hsc,
    Hc,
}

unsafe fn write_vector(
    c: *const CubaryComplex,
    which: Which,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> CubaryStatus {
    guard(|| {
        let v = Vectors::of_complex(handle(c)?);
        let entries: &[BigInt] = match which {
            Which::F => v.f.entries(),
            Which::Hsc => v.hsc.entries(),
            Which::Hc => v.hc.entries(),
        };
        put(len_out, entries.len())?;
        if cap < entries.len() {
            return fail(CubaryStatus::BufferTooSmall, format!("need {} slots, got {cap}", entries.len()));
        }
        if buf.is_null() {
            return fail(CubaryStatus::NullPointer, "null buffer");
        }
        let vals = entries
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| (CubaryStatus::Overflow, format!("{x} does not fit in int64_t"))))
            .collect::<Res<Vec<i64>>>()?;
        ptr::copy_nonoverlapping(vals.as_ptr(), buf, vals.len());
        Ok(())
    })
}

/// f-vector `(f_0, ..., f_(d-1))`. `len_out` always receives the length, so
/// a call with `cap = 0` sizes the buffer.
///
/// # Safety
/// `c` must be a live handle, `len_out` valid for writes and `buf` valid for
/// `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_f_vector(
    c: *const CubaryComplex,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> CubaryStatus {
    write_vector(c, Which::F, buf, cap, len_out)
}

/// Short cubical h-vector, length `d`. Same buffer protocol as `cubary_f_vector`.
///
/// # Safety
/// As for `cubary_f_vector`.
#[no_mangle]
pub unsafe extern "C" fn cubary_hsc_vector(
    c: *const CubaryComplex,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> CubaryStatus {
    write_vector(c, Which::Hsc, buf, cap, len_out)
}

/// Long cubical h-vector, length `d + 1`. Same buffer protocol as `cubary_f_vector`.
///
/// # Safety
/// As for `cubary_f_vector`.
#[no_mangle]
pub unsafe extern "C" fn cubary_hc_vector(
    c: *const CubaryComplex,
    buf: *mut i64,
    cap: usize,
    len_out: *mut usize,
) -> CubaryStatus {
    write_vector(c, Which::Hc, buf, cap, len_out)
}

/// Reduced Euler characteristic.
///
/// # Safety
/// `c` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_euler_reduced(c: *const CubaryComplex, out: *mut i64) -> CubaryStatus {
    guard(|| {
        let e = Vectors::of_complex(handle(c)?).euler_reduced;
        let v = e.to_i64().ok_or_else(|| (CubaryStatus::Overflow, format!("{e} does not fit in int64_t")))?;
        put(out, v)
    })
}

/// `B(d)` or `C(d)` as JSON with rational string entries; free the result
/// with `cubary_string_free`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cubary_matrix_json(kind: CubaryMatrix, d: usize, out: *mut *mut c_char) -> CubaryStatus {
    guard(|| {
        let m = match kind {
            CubaryMatrix::B => b_matrix(d),
            CubaryMatrix::C => c_matrix(d),
        };
        match m {
            Ok(m) => put_string(out, m.to_json_string()),
            Err(e @ TransformError::CrossCheck { .. }) => fail(CubaryStatus::CrossCheck, e),
            Err(e) => fail(CubaryStatus::InvalidArgument, e),
        }
    })
}

