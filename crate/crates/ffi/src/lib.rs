//! C ABI over `iet3-core`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Every call returns an [`Iet3Status`]; on
//! failure [`iet3_last_error_message`] describes the error. Strings passed
//! in are NUL-terminated UTF-8; strings handed out must be released with
//! [`iet3_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use iet3_core::iet::{code_orbit, IetSpec};
use iet3_core::invariance::{decide, DecisionReport, SynthesisOptions, Verdict};
use iet3_core::report::{decide_set, FieldInput, ParamSet, Report};
use iet3_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iet3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidSpec = 4,
    DegenerateField = 5,
    OutOfDomain = 6,
    NotApplicable = 7,
    StepBudgetExceeded = 8,
    StraddlesDiscontinuity = 9,
    VerificationFailed = 10,
    BufferTooSmall = 11,
    Internal = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iet3Verdict {
    Invariant = 0,
    NotInvariant = 1,
    Degenerate = 2,
}

/// A validated exchange in normalized parameters.
pub struct Iet3Spec {
    inner: IetSpec,
}

/// The outcome of a decision, with the synthesized substitution when
/// invariant.
pub struct Iet3Report {
    verdict: Verdict,
    report: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> Iet3Status {
    match err {
        Error::Parse(_) | Error::UnknownLetter(_) => Iet3Status::Parse,
        Error::DegenerateField(_) | Error::PerfectSquare(_) => Iet3Status::DegenerateField,
        Error::OutOfDomain(_) => Iet3Status::OutOfDomain,
        Error::NotApplicable(_) => Iet3Status::NotApplicable,
        Error::StepBudgetExceeded(_) => Iet3Status::StepBudgetExceeded,
        Error::StraddlesDiscontinuity { .. } => Iet3Status::StraddlesDiscontinuity,
        Error::VerificationFailed(_) => Iet3Status::VerificationFailed,
        Error::FieldMismatch
        | Error::NotInLattice { .. }
        | Error::RationalSlope(_)
        | Error::InvalidSpec(_)
        | Error::InvalidWindow(_)
        | Error::DangerousEta(_) => Iet3Status::InvalidSpec,
    }
}

struct Fail(Iet3Status, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording its error and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> Iet3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            Iet3Status::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            Iet3Status::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(Iet3Status::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(Iet3Status::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn opt_text(p: *const c_char, name: &str) -> Result<Option<String>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, name).map(|s| Some(s.to_string()))
    }
}

fn out_ptr<T>(out: *mut *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(Iet3Status::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

fn options(step_budget: u64) -> SynthesisOptions {
    let mut opts = SynthesisOptions::default();
    if step_budget > 0 {
        opts.step_budget = step_budget;
    }
    opts
}

fn make_report(spec: Option<&IetSpec>, rep: &DecisionReport) -> Result<Box<Iet3Report>, Fail> {
    Ok(Box::new(Iet3Report { verdict: rep.verdict, report: Report::build(spec, rep)? }))
}

/// Builds a spec from `field` (`"A,B,C[,+|-]"`) and exact expressions for
/// `eps`, `l`, `c`.
///
/// # Safety
/// String arguments must be valid NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn iet3_spec_new(
    field: *const c_char,
    eps: *const c_char,
    l: *const c_char,
    c: *const c_char,
    out: *mut *mut Iet3Spec,
) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let set = ParamSet {
            field: Some(FieldInput::Text(text(field, "field")?.to_string())),
            eps: Some(text(eps, "eps")?.to_string()),
            l: Some(text(l, "l")?.to_string()),
            c: Some(text(c, "c")?.to_string()),
            ..Default::default()
        };
        let spec = set.spec()?;
        *out = Box::into_raw(Box::new(Iet3Spec { inner: spec }));
        Ok(())
    })
}

/// Builds a spec from raw lengths `alpha1..3` and starting point `x0`.
///
/// # Safety
/// As for [`iet3_spec_new`].
#[no_mangle]
pub unsafe extern "C" fn iet3_spec_new_raw(
    field: *const c_char,
    alpha1: *const c_char,
    alpha2: *const c_char,
    alpha3: *const c_char,
    x0: *const c_char,
    out: *mut *mut Iet3Spec,
) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let set = ParamSet {
            field: Some(FieldInput::Text(text(field, "field")?.to_string())),
            alpha1: Some(text(alpha1, "alpha1")?.to_string()),
            alpha2: Some(text(alpha2, "alpha2")?.to_string()),
            alpha3: Some(text(alpha3, "alpha3")?.to_string()),
            x0: Some(text(x0, "x0")?.to_string()),
            ..Default::default()
        };
        let spec = set.spec()?;
        *out = Box::into_raw(Box::new(Iet3Spec { inner: spec }));
        Ok(())
    })
}

/// # Safety
/// `spec` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn iet3_spec_free(spec: *mut Iet3Spec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Decides invariance; `step_budget = 0` selects the default.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iet3_decide(spec: *const Iet3Spec, step_budget: u64, out: *mut *mut Iet3Report) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let spec = spec.as_ref().ok_or(Fail(Iet3Status::NullPointer, "spec is null".into()))?;
        let rep = decide(&spec.inner, &options(step_budget))?;
        *out = Box::into_raw(make_report(Some(&spec.inner), &rep)?);
        Ok(())
    })
}

/// Decides invariance straight from parameters, so that degenerate lengths
/// are reported as a verdict rather than an invalid spec. `eps`, `l`, `c`
/// may be null to use `alpha1..3`, `x0` instead, and vice versa.
///
/// # Safety
/// Non-null string arguments must be valid NUL-terminated strings; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn iet3_decide_params(
    field: *const c_char,
    eps: *const c_char,
    l: *const c_char,
    c: *const c_char,
    alpha1: *const c_char,
    alpha2: *const c_char,
    alpha3: *const c_char,
    x0: *const c_char,
    step_budget: u64,
    out: *mut *mut Iet3Report,
) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let set = ParamSet {
            field: Some(FieldInput::Text(text(field, "field")?.to_string())),
            eps: opt_text(eps, "eps")?,
            l: opt_text(l, "l")?,
            c: opt_text(c, "c")?,
            alpha1: opt_text(alpha1, "alpha1")?,
            alpha2: opt_text(alpha2, "alpha2")?,
            alpha3: opt_text(alpha3, "alpha3")?,
            x0: opt_text(x0, "x0")?,
        };
        let (spec, rep) = decide_set(&set, &options(step_budget))?;
        *out = Box::into_raw(make_report(spec.as_ref(), &rep)?);
        Ok(())
    })
}

/// Like [`iet3_decide`], but fails with `NotApplicable` unless invariant.
///
/// # Safety
/// As for [`iet3_decide`].
#[no_mangle]
pub unsafe extern "C" fn iet3_synthesize(
    spec: *const Iet3Spec,
    step_budget: u64,
    out: *mut *mut Iet3Report,
) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let spec = spec.as_ref().ok_or(Fail(Iet3Status::NullPointer, "spec is null".into()))?;
        let rep = decide(&spec.inner, &options(step_budget))?;
        if rep.verdict != Verdict::Invariant {
            return Err(Error::NotApplicable(format!("verdict is {}", rep.verdict)).into());
        }
        *out = Box::into_raw(make_report(Some(&spec.inner), &rep)?);
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn iet3_report_verdict(report: *const Iet3Report, out: *mut Iet3Verdict) -> Iet3Status {
    guard(|| {
        let report = report.as_ref().ok_or(Fail(Iet3Status::NullPointer, "report is null".into()))?;
        if out.is_null() {
            return Err(Fail(Iet3Status::NullPointer, "output pointer is null".into()));
        }
        *out = match report.verdict {
            Verdict::Invariant => Iet3Verdict::Invariant,
            Verdict::NotInvariant => Iet3Verdict::NotInvariant,
            Verdict::Degenerate => Iet3Verdict::Degenerate,
        };
        Ok(())
    })
}

/// The report as JSON, with the same keys as the command-line tool.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable. Release the
/// string with [`iet3_string_free`].
#[no_mangle]
pub unsafe extern "C" fn iet3_report_to_json(report: *const Iet3Report, out: *mut *mut c_char) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let report = report.as_ref().ok_or(Fail(Iet3Status::NullPointer, "report is null".into()))?;
        let json = serde_json_string(&report.report)?;
        *out = CString::new(json).map_err(|_| Fail(Iet3Status::Internal, "NUL in JSON".into()))?.into_raw();
        Ok(())
    })
}

fn serde_json_string(r: &Report) -> Result<String, Fail> {
    r.to_json().map_err(|e| Fail(Iet3Status::Internal, e.to_string()))
}

/// The image of `letter` (`'A'`, `'B'` or `'C'`) under the synthesized
/// substitution. `NotApplicable` when the report has none.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable. Release the
/// string with [`iet3_string_free`].
#[no_mangle]
pub unsafe extern "C" fn iet3_report_image(
    report: *const Iet3Report,
    letter: c_char,
    out: *mut *mut c_char,
) -> Iet3Status {
    guard(|| {
        out_ptr(out)?;
        let report = report.as_ref().ok_or(Fail(Iet3Status::NullPointer, "report is null".into()))?;
        let sub = report
            .report
            .substitution
            .as_ref()
            .ok_or_else(|| Fail(Iet3Status::NotApplicable, "report has no substitution".into()))?;
        let key = (letter as u8 as char).to_string();
        let img = sub.get(&key).ok_or_else(|| Fail::from(Error::UnknownLetter(letter as u8 as char)))?;
        *out = CString::new(img.as_str()).map_err(|_| Fail(Iet3Status::Internal, "NUL in word".into()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not be used afterwards. Null
/// is ignored.
#[no_mangle]
pub unsafe extern "C" fn iet3_report_free(report: *mut Iet3Report) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Writes the coding of `T^n(0)` for `from <= n < to` as ASCII `A`/`B`/`C`
/// into `buf` (not NUL-terminated) and the letter count into `written`.
/// With `buf` null or `len` too small, returns `BufferTooSmall` and stores
/// the required length in `written`.
///
/// # Safety
/// `spec` must be a live handle, `buf` writable for `len` bytes and
/// `written` writable.
#[no_mangle]
pub unsafe extern "C" fn iet3_code_orbit(
    spec: *const Iet3Spec,
    from: i64,
    to: i64,
    buf: *mut u8,
    len: usize,
    written: *mut usize,
) -> Iet3Status {
    guard(|| {
        let spec = spec.as_ref().ok_or(Fail(Iet3Status::NullPointer, "spec is null".into()))?;
        if written.is_null() {
            return Err(Fail(Iet3Status::NullPointer, "written is null".into()));
        }
        if to < from {
            return Err(Error::InvalidSpec(format!("empty range [{from}, {to})")).into());
        }
        let need = usize::try_from(to - from).map_err(|_| Fail(Iet3Status::InvalidSpec, "range too long".into()))?;
        *written = need;
        if buf.is_null() || len < need {
            return Err(Fail(Iet3Status::BufferTooSmall, format!("{need} bytes needed")));
        }
        let word = code_orbit(&spec.inner, from, to);
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (d, letter) in dst.iter_mut().zip(word) {
            *d = letter.byte();
        }
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn iet3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn iet3_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn iet3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
