//! C ABI over the `qgs` toolkit.
//!
//! Parameters live behind the opaque `QgsParam` handle. Every call returns a
//! `QgsStatus`; on failure `qgs_last_error` gives a message owned by the
//! library and valid until the next failing call on the same thread. Outputs
//! are written only on success. Panics never cross the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qgs::estimates::{self, Verdict};
use qgs::freewords::{self, TypePattern};
use qgs::{chebyshev, spectrum, templieb, Error, QParameter};

/// Opaque deformation parameter `(N, q)`.
pub struct QgsParam {
    inner: QParameter,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QgsStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Resource = 3,
    Numerical = 4,
    Invalid = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QgsVerdict {
    Finite = 0,
    Divergent = 1,
    Inconclusive = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(QgsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Resource(_) => QgsStatus::Resource,
            Error::NumericalDegradation { .. } | Error::InternalConsistency { .. } => QgsStatus::Numerical,
            Error::InvalidVector(_) => QgsStatus::Invalid,
            Error::Domain(_)
            | Error::Degenerate(_)
            | Error::NotReduced(_)
            | Error::EmptySpectrum
            | Error::UnsortedSpectrum(_) => QgsStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(QgsStatus::NullPointer, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QgsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QgsStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("panic: {msg}"));
            QgsStatus::Panic
        }
    }
}

unsafe fn param_ref<'a>(p: *const QgsParam) -> Result<&'a QParameter, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("param"))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn emit_param(out: *mut *mut QgsParam, p: QParameter) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(QgsParam { inner: p })), "out")
}

/// Message of the last failure on this thread, or NULL.
#[no_mangle]
pub extern "C" fn qgs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parameter with `N >= 2` and `0 < q <= q0(N)`. Free with `qgs_param_free`.
#[no_mangle]
pub unsafe extern "C" fn qgs_param_new(n: u32, q: f64, out: *mut *mut QgsParam) -> QgsStatus {
    guard(|| emit_param(out, QParameter::new(n, q)?))
}

/// The Kac point `q = q0(N)`.
#[no_mangle]
pub unsafe extern "C" fn qgs_param_kac(n: u32, out: *mut *mut QgsParam) -> QgsStatus {
    guard(|| emit_param(out, QParameter::kac(n)?))
}

/// Parses `q` as a decimal, a fraction `p/r` or `q0`; decimals stay exact.
#[no_mangle]
pub unsafe extern "C" fn qgs_param_parse(n: u32, q: *const c_char, out: *mut *mut QgsParam) -> QgsStatus {
    guard(|| {
        if q.is_null() {
            return Err(null("q"));
        }
        let s = CStr::from_ptr(q)
            .to_str()
            .map_err(|_| Failure(QgsStatus::Invalid, "q is not UTF-8".into()))?;
        emit_param(out, QParameter::parse(n, s)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn qgs_param_free(p: *mut QgsParam) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn qgs_param_q(p: *const QgsParam, out: *mut f64) -> QgsStatus {
    guard(|| write(out, param_ref(p)?.q(), "out"))
}

#[no_mangle]
pub unsafe extern "C" fn qgs_param_q0(p: *const QgsParam, out: *mut f64) -> QgsStatus {
    guard(|| write(out, param_ref(p)?.q0(), "out"))
}

/// Quantum integer `[n]_q`.
#[no_mangle]
pub unsafe extern "C" fn qgs_q_number(p: *const QgsParam, n: usize, out: *mut f64) -> QgsStatus {
    guard(|| write(out, chebyshev::q_number(n, param_ref(p)?), "out"))
}

/// Dirichlet eigenvalue `Delta_alpha`.
#[no_mangle]
pub unsafe extern "C" fn qgs_delta(p: *const QgsParam, alpha: usize, out: *mut f64) -> QgsStatus {
    guard(|| write(out, spectrum::delta(param_ref(p)?, alpha), "out"))
}

/// Semigroup coefficient `c_alpha(t)`, `t` in `(-1, 1]`.
#[no_mangle]
pub unsafe extern "C" fn qgs_semigroup_coeff(p: *const QgsParam, alpha: usize, t: f64, out: *mut f64) -> QgsStatus {
    guard(|| write(out, spectrum::semigroup_coeff(param_ref(p)?, alpha, t)?, "out"))
}

/// Ratio of the eigenvalue gap to its `q`-power bound.
#[no_mangle]
pub unsafe extern "C" fn qgs_gap_ratio(
    p: *const QgsParam,
    alpha: usize,
    beta: usize,
    gamma: i64,
    out: *mut f64,
) -> QgsStatus {
    guard(|| write(out, estimates::gap(param_ref(p)?, alpha, beta, gamma)?.ratio, "out"))
}

/// Hilbert-Schmidt summability verdict and the root-test value.
#[no_mangle]
pub unsafe extern "C" fn qgs_hs_certificate(
    p: *const QgsParam,
    t: f64,
    alpha_max: usize,
    out_verdict: *mut QgsVerdict,
    out_ratio: *mut f64,
) -> QgsStatus {
    guard(|| {
        if out_verdict.is_null() || out_ratio.is_null() {
            return Err(null("output"));
        }
        let c = estimates::hs_certificate(param_ref(p)?, t, alpha_max)?;
        let v = match c.verdict {
            Verdict::Finite => QgsVerdict::Finite,
            Verdict::Divergent => QgsVerdict::Divergent,
            Verdict::Inconclusive => QgsVerdict::Inconclusive,
        };
        write(out_verdict, v, "out_verdict")?;
        write(out_ratio, c.ratio_value, "out_ratio")
    })
}

/// Recoupling defect and its bound `q^{alpha + (k - r)/2}`.
#[no_mangle]
pub unsafe extern "C" fn qgs_pentagon_defect(
    p: *const QgsParam,
    alpha: usize,
    r: usize,
    s: usize,
    k: i64,
    l: i64,
    align_phase: bool,
    out_defect: *mut f64,
    out_bound: *mut f64,
) -> QgsStatus {
    guard(|| {
        if out_defect.is_null() || out_bound.is_null() {
            return Err(null("output"));
        }
        let d = templieb::pentagon_defect(param_ref(p)?, alpha, r, s, k, l, align_phase)?;
        write(out_defect, d.defect, "out_defect")?;
        write(out_bound, d.bound, "out_bound")
    })
}

/// Quantum trace of the Jones-Wenzl projection `p_n` and the expected `[n+1]_q`.
#[no_mangle]
pub unsafe extern "C" fn qgs_jw_qtrace(
    p: *const QgsParam,
    n: usize,
    out_qtrace: *mut f64,
    out_expected: *mut f64,
) -> QgsStatus {
    guard(|| {
        if out_qtrace.is_null() || out_expected.is_null() {
            return Err(null("output"));
        }
        let jw = templieb::jones_wenzl(param_ref(p)?, n)?;
        write(out_qtrace, jw.residuals().qtrace, "out_qtrace")?;
        write(out_expected, jw.residuals().qtrace_expected, "out_expected")
    })
}

unsafe fn type_slice<'a>(ptr: *const u8, len: usize, what: &str) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// Exact check of the free-product expansion for the algebra types of `b`,
/// `x` and `a`. `out_pass` receives whether the residual vanishes and the
/// remainder respects the length bound.
#[no_mangle]
pub unsafe extern "C" fn qgs_freeprod_verify(
    b: *const u8,
    k: usize,
    x: *const u8,
    n: usize,
    a: *const u8,
    m: usize,
    out_pass: *mut bool,
) -> QgsStatus {
    guard(|| {
        let pattern = TypePattern::new(
            type_slice(b, k, "b")?.to_vec(),
            type_slice(x, n, "x")?.to_vec(),
            type_slice(a, m, "a")?.to_vec(),
        );
        let r = freewords::verify_expansion_identity(&pattern)?;
        write(out_pass, r.pass, "out_pass")
    })
}
