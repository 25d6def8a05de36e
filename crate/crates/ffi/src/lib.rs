//! C ABI over `rde-lab`.
//!
//! Objects are opaque handles created by `rde_*_new` style calls and
//! released by the matching `*_free`. Every fallible call returns an
//! [`RdeStatus`]; on failure `rde_last_error()` describes the cause for the
//! calling thread. Strings handed out by the library are NUL-terminated,
//! owned by the caller and must be released with `rde_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rde_lab::classify::classify_analytic;
use rde_lab::forbidden::membership_with_cap;
use rde_lab::{
    iterate_direct, ClosedForm, Error, ForbiddenVerdict, InitWindow, Orbit, Params, Rational, Scalar,
    Terminator,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    /// The orbit is undefined at the requested index.
    Singular = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdeBackend {
    Rational = 0,
    Float = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdeWitness {
    NotForbidden = 0,
    ZeroInitial = 1,
    KernelRoot = 2,
}

/// Forbidden-set verdict. `index` is the zero window index for
/// `ZeroInitial` and the kernel root exponent `m` for `KernelRoot`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RdeVerdict {
    pub witness: RdeWitness,
    pub index: i64,
}

/// Orbit terminator. `singular_step` is 0 when the orbit completed.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RdeTerminator {
    pub completed: bool,
    pub steps: u64,
    pub singular_step: u64,
}

/// Equation parameters plus initial window, stored exactly.
pub struct RdeProblem {
    params: Params<Rational>,
    init: InitWindow<Rational>,
}

pub struct RdeOrbit {
    inner: OrbitData,
}

enum OrbitData {
    Rational(Orbit<Rational>),
    Float(Orbit<f64>),
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn fail(status: RdeStatus, message: impl Into<String>) -> RdeStatus {
    set_error(message);
    status
}

fn status_of(err: &Error) -> RdeStatus {
    match err {
        Error::Parse { .. } => RdeStatus::ParseError,
        Error::KernelRoot(_) | Error::ZeroInitial(_) | Error::DivisionByZero { .. } => RdeStatus::Singular,
        Error::IndexOutOfRange { .. } => RdeStatus::OutOfRange,
        _ => RdeStatus::InvalidArgument,
    }
}

fn from_error(err: Error) -> RdeStatus {
    fail(status_of(&err), err.to_string())
}

/// Runs `body`, converting panics into [`RdeStatus::Panic`].
fn guard(body: impl FnOnce() -> RdeStatus) -> RdeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(RdeStatus::Panic, "internal panic"),
    }
}

unsafe fn text_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, RdeStatus> {
    if ptr.is_null() {
        return Err(fail(RdeStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(RdeStatus::ParseError, format!("{name} is not UTF-8")))
}

fn export_string(text: String, out: *mut *mut c_char) -> RdeStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RdeStatus::Ok
        }
        Err(_) => fail(RdeStatus::InvalidArgument, "string contains NUL"),
    }
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(RdeStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rde_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `text` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rde_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Builds a problem from `k`, the coefficient `a` and a comma-separated
/// window `x_{-k},...,x_0`. Scalars accept `p/q`, integers and decimals.
///
/// # Safety
/// `a` and `init` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_problem_new(
    k: usize,
    a: *const c_char,
    init: *const c_char,
    out: *mut *mut RdeProblem,
) -> RdeStatus {
    guard(|| {
        nonnull!(out);
        let a = match text_arg(a, "a") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let init = match text_arg(init, "init") {
            Ok(t) => t,
            Err(s) => return s,
        };
        let built = (|| {
            let params = Params::new(k, Rational::parse_text(a)?)?;
            let values = init
                .split(',')
                .map(|v| Rational::parse_text(v.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let init = InitWindow::new(k, values)?;
            Ok::<_, Error>(RdeProblem { params, init })
        })();
        match built {
            Ok(problem) => {
                *out = Box::into_raw(Box::new(problem));
                RdeStatus::Ok
            }
            Err(err) => from_error(err),
        }
    })
}

/// # Safety
/// `problem` must come from `rde_problem_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rde_problem_free(problem: *mut RdeProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Iterates `steps` times. A singular orbit is still a successful call;
/// inspect it with `rde_orbit_terminator`.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_iterate(
    problem: *const RdeProblem,
    steps: u64,
    backend: RdeBackend,
    out: *mut *mut RdeOrbit,
) -> RdeStatus {
    guard(|| {
        nonnull!(problem, out);
        let problem = &*problem;
        let inner = match backend {
            RdeBackend::Rational => {
                OrbitData::Rational(iterate_direct(&problem.params, &problem.init, steps))
            }
            RdeBackend::Float => OrbitData::Float(iterate_direct(
                &problem.params.to_float(),
                &problem.init.to_float(),
                steps,
            )),
        };
        *out = Box::into_raw(Box::new(RdeOrbit { inner }));
        RdeStatus::Ok
    })
}

/// # Safety
/// `orbit` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_free(orbit: *mut RdeOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Number of computed iterates `x_1, ...`. Returns 0 for NULL.
///
/// # Safety
/// `orbit` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_len(orbit: *const RdeOrbit) -> u64 {
    match orbit.as_ref().map(|o| &o.inner) {
        Some(OrbitData::Rational(o)) => o.points.len() as u64,
        Some(OrbitData::Float(o)) => o.points.len() as u64,
        None => 0,
    }
}

/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_terminator(orbit: *const RdeOrbit, out: *mut RdeTerminator) -> RdeStatus {
    guard(|| {
        nonnull!(orbit, out);
        let terminator = match &(*orbit).inner {
            OrbitData::Rational(o) => o.terminator,
            OrbitData::Float(o) => o.terminator,
        };
        *out = match terminator {
            Terminator::Completed { steps } => RdeTerminator {
                completed: true,
                steps,
                singular_step: 0,
            },
            Terminator::Singular { step, .. } => RdeTerminator {
                completed: false,
                steps: step - 1,
                singular_step: step,
            },
        };
        RdeStatus::Ok
    })
}

/// `x_n` as text for `-k <= n <= len`.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_value_text(
    orbit: *const RdeOrbit,
    n: i64,
    out: *mut *mut c_char,
) -> RdeStatus {
    guard(|| {
        nonnull!(orbit, out);
        let text = match &(*orbit).inner {
            OrbitData::Rational(o) => o.value(n).map(Scalar::to_text),
            OrbitData::Float(o) => o.value(n).map(Scalar::to_text),
        };
        match text {
            Some(text) => export_string(text, out),
            None => fail(RdeStatus::OutOfRange, format!("no iterate at n = {n}")),
        }
    })
}

/// `x_n` rounded to double for `-k <= n <= len`.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_value_f64(orbit: *const RdeOrbit, n: i64, out: *mut f64) -> RdeStatus {
    guard(|| {
        nonnull!(orbit, out);
        let value = match &(*orbit).inner {
            OrbitData::Rational(o) => o.value(n).map(Scalar::to_f64),
            OrbitData::Float(o) => o.value(n).copied(),
        };
        match value {
            Some(v) => {
                *out = v;
                RdeStatus::Ok
            }
            None => fail(RdeStatus::OutOfRange, format!("no iterate at n = {n}")),
        }
    })
}

/// The orbit in the CLI's CSV layout.
///
/// # Safety
/// `orbit` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_orbit_csv(orbit: *const RdeOrbit, out: *mut *mut c_char) -> RdeStatus {
    guard(|| {
        nonnull!(orbit, out);
        let csv = match &(*orbit).inner {
            OrbitData::Rational(o) => o.to_csv(),
            OrbitData::Float(o) => o.to_csv(),
        };
        export_string(csv, out)
    })
}

/// Exact closed-form value of `x_n` as text. Fails with `Singular` when
/// the orbit is undefined at or before `n`.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_closed_form(
    problem: *const RdeProblem,
    n: i64,
    out: *mut *mut c_char,
) -> RdeStatus {
    guard(|| {
        nonnull!(problem, out);
        let problem = &*problem;
        match ClosedForm::new(&problem.params, &problem.init).and_then(|cf| cf.term(n)) {
            Ok(value) => export_string(value.to_text(), out),
            Err(err) => from_error(err),
        }
    })
}

/// Exact forbidden-set membership, searching kernel roots up to `m_max`.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_check(
    problem: *const RdeProblem,
    m_max: u64,
    out: *mut RdeVerdict,
) -> RdeStatus {
    guard(|| {
        nonnull!(problem, out);
        let problem = &*problem;
        match membership_with_cap(&problem.params, &problem.init, m_max) {
            Ok(verdict) => {
                *out = match verdict {
                    ForbiddenVerdict::NotForbidden => RdeVerdict {
                        witness: RdeWitness::NotForbidden,
                        index: 0,
                    },
                    ForbiddenVerdict::ZeroInitial(i) => RdeVerdict {
                        witness: RdeWitness::ZeroInitial,
                        index: i,
                    },
                    ForbiddenVerdict::KernelRoot(m) => RdeVerdict {
                        witness: RdeWitness::KernelRoot,
                        index: m as i64,
                    },
                };
                RdeStatus::Ok
            }
            Err(err) => from_error(err),
        }
    })
}

/// Analytic classification as a JSON object (same schema as the CLI).
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rde_classify_json(problem: *const RdeProblem, out: *mut *mut c_char) -> RdeStatus {
    guard(|| {
        nonnull!(problem, out);
        let problem = &*problem;
        match classify_analytic(&problem.params, &problem.init) {
            Ok(class) => export_string(class.to_json().to_string(), out),
            Err(err) => from_error(err),
        }
    })
}
