//! C interface to `treeseries`.
//!
//! Series and tensors cross the boundary as opaque handles owned by the
//! caller and released with the matching `_free` function. Every call
//! returns a [`TsStatus`]; on failure [`ts_last_error`] describes the
//! problem until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use treeseries::hopf::{antipode, Coproduct, Gen, Tensor};
use treeseries::io::{format_series, read_series, series_to_json, tensor_to_json, Shape};
use treeseries::operad::Instance;
use treeseries::series::GradedSeries;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Compute = 4,
    InvalidArgument = 5,
    Panic = 6,
}

/// How series text is read.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsCarrier {
    /// Diffeomorphism form, composed with `ts_series_compose`.
    Operad = 0,
    /// Invertible form under the over product.
    MonoidOver = 1,
    /// Invertible form under the under product.
    MonoidUnder = 2,
}

pub struct TsSeries(GradedSeries);

pub struct TsTensor(Tensor);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(TsStatus, String);

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> TsStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TsStatus::Panic
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure(TsStatus::Compute, e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(TsStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(TsStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(TsStatus::NullPointer, "null handle".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TsStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(TsStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).map_err(compute)?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a series from text or a JSON document. A negative `truncation`
/// means the largest grading present in the input.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_parse(
    src: *const c_char,
    carrier: TsCarrier,
    truncation: i64,
    out: *mut *mut TsSeries,
) -> TsStatus {
    guard(|| {
        let src = text(src)?;
        let shape = match carrier {
            TsCarrier::Operad => Shape::Operad,
            TsCarrier::MonoidOver => Shape::Monoid(Some("over".into())),
            TsCarrier::MonoidUnder => Shape::Monoid(Some("under".into())),
        };
        let n = usize::try_from(truncation).ok();
        let s = read_series(src, &shape, Instance::Dup, n).map_err(|e| Failure(TsStatus::Parse, e.to_string()))?;
        write_out(out, TsSeries(s))
    })
}

unsafe fn binary(
    a: *const TsSeries,
    b: *const TsSeries,
    out: *mut *mut TsSeries,
    op: fn(&GradedSeries, &GradedSeries) -> Result<GradedSeries, treeseries::error::SeriesError>,
) -> TsStatus {
    guard(|| {
        let r = op(&handle(a)?.0, &handle(b)?.0).map_err(compute)?;
        write_out(out, TsSeries(r))
    })
}

unsafe fn unary(
    a: *const TsSeries,
    out: *mut *mut TsSeries,
    op: fn(&GradedSeries) -> Result<GradedSeries, treeseries::error::SeriesError>,
) -> TsStatus {
    guard(|| {
        let r = op(&handle(a)?.0).map_err(compute)?;
        write_out(out, TsSeries(r))
    })
}

/// `a ∘ b` for two series in diffeomorphism form.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_compose(a: *const TsSeries, b: *const TsSeries, out: *mut *mut TsSeries) -> TsStatus {
    binary(a, b, out, GradedSeries::compose)
}

/// Monoid product `a · b`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_multiply(a: *const TsSeries, b: *const TsSeries, out: *mut *mut TsSeries) -> TsStatus {
    binary(a, b, out, GradedSeries::mul)
}

/// The right action `f^ψ`.
///
/// # Safety
/// `f` and `psi` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_act(f: *const TsSeries, psi: *const TsSeries, out: *mut *mut TsSeries) -> TsStatus {
    binary(f, psi, out, GradedSeries::act)
}

/// Inverse for the monoid product.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_invert(a: *const TsSeries, out: *mut *mut TsSeries) -> TsStatus {
    unary(a, out, GradedSeries::inverse)
}

/// Inverse for composition.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_comp_invert(a: *const TsSeries, out: *mut *mut TsSeries) -> TsStatus {
    unary(a, out, GradedSeries::comp_inverse)
}

/// Canonical text; release with `ts_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_to_text(s: *const TsSeries, out: *mut *mut c_char) -> TsStatus {
    guard(|| write_string(out, format_series(&handle(s)?.0)))
}

/// JSON document; release with `ts_string_free`.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_series_to_json(s: *const TsSeries, out: *mut *mut c_char) -> TsStatus {
    guard(|| write_string(out, series_to_json(&handle(s)?.0).to_string()))
}

/// Number of nonzero terms, or -1 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_series_len(s: *const TsSeries) -> i64 {
    s.as_ref().map_or(-1, |s| s.0.len() as i64)
}

/// # Safety
/// `s` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_series_free(s: *mut TsSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn generator_map(
    algebra: *const c_char,
    generator: *const c_char,
    out: *mut *mut TsTensor,
    f: impl FnOnce(Coproduct, &Gen) -> Result<Tensor, treeseries::error::HopfError>,
) -> TsStatus {
    guard(|| {
        let name = text(algebra)?;
        let cop = Coproduct::from_name(name)
            .ok_or_else(|| Failure(TsStatus::InvalidArgument, format!("unknown algebra {name}")))?;
        let g = Gen::parse(text(generator)?).map_err(|e| Failure(TsStatus::Parse, e))?;
        let t = f(cop, &g).map_err(compute)?;
        write_out(out, TsTensor(t))
    })
}

/// Coproduct or coaction named `algebra` (as on the command line, e.g.
/// `dif`, `rho`, `inv-over`) applied to a generator code such as
/// `1100100` or `a3`.
///
/// # Safety
/// Strings must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_coproduct(
    algebra: *const c_char,
    generator: *const c_char,
    commutative: bool,
    out: *mut *mut TsTensor,
) -> TsStatus {
    generator_map(algebra, generator, out, |cop, g| cop.generator(g, commutative))
}

/// Antipode of a generator for the named coproduct.
///
/// # Safety
/// Strings must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_antipode(
    algebra: *const c_char,
    generator: *const c_char,
    commutative: bool,
    out: *mut *mut TsTensor,
) -> TsStatus {
    generator_map(algebra, generator, out, |cop, g| antipode(g, cop.source(commutative), cop))
}

/// Counit of a one-legged tensor, as a decimal or fraction string.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_tensor_counit(t: *const TsTensor, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let t = &handle(t)?.0;
        if t.legs() != 1 {
            return Err(Failure(TsStatus::InvalidArgument, format!("counit of a {}-legged tensor", t.legs())));
        }
        write_string(out, t.counit().to_string())
    })
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ts_tensor_to_json(t: *const TsTensor, out: *mut *mut c_char) -> TsStatus {
    guard(|| write_string(out, tensor_to_json(&handle(t)?.0).to_string()))
}

/// Number of terms, or -1 for a null handle.
///
/// # Safety
/// `t` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_tensor_len(t: *const TsTensor) -> i64 {
    t.as_ref().map_or(-1, |t| t.0.len() as i64)
}

/// # Safety
/// `t` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_tensor_free(t: *mut TsTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
