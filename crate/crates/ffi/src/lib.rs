//! C ABI for the `wkam` solver.
//!
//! Handles are opaque pointers created by `wkam_*_new`/`from_*` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`WkamStatus`]; on failure `wkam_last_error_message` describes the error
//! for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use wkam::barrier::{aubry, peierls_barrier};
use wkam::critical::critical_value;
use wkam::models::io::from_json_str;
use wkam::models::AnyInstance;
use wkam::oracle::verify_all;
use wkam::potential::mane_potential;
use wkam::subsolution::max_strict_subsolution;
use wkam::tropical::{CostInstance, Ext, Matrix, Scalar};
use wkam::WkamError;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WkamStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    GraphMode = 3,
    SizeGuard = 4,
    BufferTooSmall = 5,
    OutOfRange = 6,
    Internal = 7,
    Panic = 8,
}

/// A cost instance in exact or float mode.
pub struct WkamInstance {
    inner: AnyInstance,
}

/// Critical value, potential, barrier and Aubry set of one instance.
pub struct WkamSolution {
    n: usize,
    alpha0: f64,
    alpha0_text: String,
    phi: Vec<f64>,
    h: Vec<f64>,
    aubry: Vec<bool>,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &WkamError) -> WkamStatus {
    match e {
        WkamError::GraphMode { .. } => WkamStatus::GraphMode,
        WkamError::SizeGuard { .. } => WkamStatus::SizeGuard,
        e if e.is_input_error() => WkamStatus::InvalidInput,
        _ => WkamStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), WkamStatus>) -> WkamStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WkamStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside wkam");
            WkamStatus::Panic
        }
    }
}

fn fail(e: WkamError) -> WkamStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> WkamStatus {
    set_error(format!("{what} is null"));
    WkamStatus::NullPointer
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wkam_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wkam_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an instance from a JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wkam_instance_from_json(json: *const c_char, out: *mut *mut WkamInstance) -> WkamStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| fail(WkamError::Parse(e.to_string())))?;
        let doc = from_json_str(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(WkamInstance { inner: doc.instance }));
        Ok(())
    })
}

/// Builds an instance from an `n * n` row-major cost matrix. Positive
/// infinity marks a missing edge. With `exact != 0` every double is
/// converted to the rational it represents.
///
/// # Safety
/// `cost` must point to `n * n` doubles and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wkam_instance_from_matrix(
    cost: *const f64,
    n: usize,
    exact: i32,
    out: *mut *mut WkamInstance,
) -> WkamStatus {
    guard(|| {
        if cost.is_null() {
            return Err(null("cost"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let len = n.checked_mul(n).ok_or_else(|| fail(WkamError::InvalidArgument("n too large".into())))?;
        let values = std::slice::from_raw_parts(cost, len);
        let rows: Vec<Vec<Ext<f64>>> = (0..n)
            .map(|x| {
                values[x * n..(x + 1) * n]
                    .iter()
                    .map(|&v| if v == f64::INFINITY { Ext::Inf } else { Ext::Fin(v) })
                    .collect()
            })
            .collect();
        let inst = Matrix::from_rows(rows).and_then(CostInstance::new).map_err(fail)?;
        let any = AnyInstance::Float(inst);
        let inner = if exact != 0 { any.into_mode(Some("exact"), None).map_err(fail)? } else { any };
        *out = Box::into_raw(Box::new(WkamInstance { inner }));
        Ok(())
    })
}

/// Releases an instance. Null is ignored.
///
/// # Safety
/// `inst` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wkam_instance_free(inst: *mut WkamInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of points.
///
/// # Safety
/// `inst` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_instance_size(inst: *const WkamInstance, out: *mut usize) -> WkamStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = inst.inner.n();
        Ok(())
    })
}

/// Critical constant only, as a double.
///
/// # Safety
/// `inst` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_critical_value(inst: *const WkamInstance, out: *mut f64) -> WkamStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = match &inst.inner {
            AnyInstance::Exact(i) => critical_value(i).map(|c| c.alpha0.to_f64()),
            AnyInstance::Float(i) => critical_value(i).map(|c| c.alpha0),
        }
        .map_err(fail)?;
        Ok(())
    })
}

fn flat<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    m.rows().flat_map(|r| r.iter().map(Scalar::to_f64)).collect()
}

fn solve<T: Scalar>(inst: &CostInstance<T>) -> Result<WkamSolution, WkamError> {
    let crit = critical_value(inst)?;
    let phi = mane_potential(inst, &crit)?.dense()?;
    let bar = peierls_barrier(inst, &crit)?;
    let h = bar.dense()?;
    let a = aubry(inst, &crit, &bar)?;
    let u1 = max_strict_subsolution(inst, &crit)?;
    let rows = |m: &Matrix<T>| -> Vec<Vec<serde_json::Value>> {
        m.rows().map(|r| r.iter().map(Scalar::to_json).collect()).collect()
    };
    let json = json!({
        "alpha0": crit.alpha0.to_json(),
        "cycle": crit.witness_cycle,
        "phi": rows(&phi),
        "h": rows(&h),
        "aubry": a.vertices,
        "aubry_edges": a.edges,
        "strict_subsolution": u1.values.iter().map(Ext::to_json).collect::<Vec<_>>(),
    });
    let n = inst.n();
    Ok(WkamSolution {
        n,
        alpha0: crit.alpha0.to_f64(),
        alpha0_text: crit.alpha0.to_string(),
        phi: flat(&phi),
        h: flat(&h),
        aubry: (0..n).map(|x| a.contains(x)).collect(),
        json: serde_json::to_string(&json)?,
    })
}

/// Computes the critical constant, Mane potential, Peierls barrier, Aubry
/// set and a maximally strict sub-solution.
///
/// # Safety
/// `inst` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_solve(inst: *const WkamInstance, out: *mut *mut WkamSolution) -> WkamStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let sol = match &inst.inner {
            AnyInstance::Exact(i) => solve(i),
            AnyInstance::Float(i) => solve(i),
        }
        .map_err(fail)?;
        *out = Box::into_raw(Box::new(sol));
        Ok(())
    })
}

/// Releases a solution. Null is ignored.
///
/// # Safety
/// `sol` must come from [`wkam_solve`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_free(sol: *mut WkamSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `sol` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_alpha0(sol: *const WkamSolution, out: *mut f64) -> WkamStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| null("sol"))?;
        *out.as_mut().ok_or_else(|| null("out"))? = sol.alpha0;
        Ok(())
    })
}

unsafe fn copy_matrix(src: &[f64], buf: *mut f64, len: usize) -> Result<(), WkamStatus> {
    if buf.is_null() {
        return Err(null("buf"));
    }
    if len < src.len() {
        set_error(format!("buffer holds {len} values, need {}", src.len()));
        return Err(WkamStatus::BufferTooSmall);
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Copies the Peierls barrier `h` (row-major, `n * n` values) into `buf`.
///
/// # Safety
/// `sol` must be valid and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_barrier(sol: *const WkamSolution, buf: *mut f64, len: usize) -> WkamStatus {
    guard(|| copy_matrix(&sol.as_ref().ok_or_else(|| null("sol"))?.h, buf, len))
}

/// Copies the Mane potential (row-major, `n * n` values) into `buf`.
///
/// # Safety
/// `sol` must be valid and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_potential(sol: *const WkamSolution, buf: *mut f64, len: usize) -> WkamStatus {
    guard(|| copy_matrix(&sol.as_ref().ok_or_else(|| null("sol"))?.phi, buf, len))
}

/// Whether point `x` belongs to the Aubry set.
///
/// # Safety
/// `sol` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_is_aubry(sol: *const WkamSolution, x: usize, out: *mut bool) -> WkamStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| null("sol"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if x >= sol.n {
            set_error(format!("point {x} out of range for {} points", sol.n));
            return Err(WkamStatus::OutOfRange);
        }
        *out = sol.aubry[x];
        Ok(())
    })
}

fn to_c_string(s: &str, out: *mut *mut c_char) -> Result<(), WkamStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| {
        set_error("string contains NUL");
        WkamStatus::Internal
    })?;
    // SAFETY: checked non-null above
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// The critical constant exactly (`"p/q"` in exact mode). Free with [`wkam_string_free`].
///
/// # Safety
/// `sol` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_alpha0_text(sol: *const WkamSolution, out: *mut *mut c_char) -> WkamStatus {
    guard(|| to_c_string(&sol.as_ref().ok_or_else(|| null("sol"))?.alpha0_text, out))
}

/// The whole solution as compact JSON. Free with [`wkam_string_free`].
///
/// # Safety
/// `sol` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_solution_to_json(sol: *const WkamSolution, out: *mut *mut c_char) -> WkamStatus {
    guard(|| to_c_string(&sol.as_ref().ok_or_else(|| null("sol"))?.json, out))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wkam_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Runs the oracle check suite; `passed` is set to 1 when every check holds.
///
/// # Safety
/// `inst` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wkam_verify(inst: *const WkamInstance, passed: *mut i32) -> WkamStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("inst"))?;
        let passed = passed.as_mut().ok_or_else(|| null("passed"))?;
        let report = match &inst.inner {
            AnyInstance::Exact(i) => verify_all(i),
            AnyInstance::Float(i) => verify_all(i),
        }
        .map_err(fail)?;
        if let Some(c) = report.failures().next() {
            set_error(format!("{} failed: {}", c.name, c.witness.clone().unwrap_or_default()));
        }
        *passed = i32::from(report.all_pass());
        Ok(())
    })
}
