//! C ABI for the crepant engine.
//!
//! Every fallible function returns a [`CrepantStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`crepant_last_error`] on the same thread. Strings handed out by the
//! library are freed with [`crepant_string_free`], groups with
//! [`crepant_group_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use crepant::cli::report::{emit_jsonl, emit_text, Report};
use crepant::cli::suites;
use crepant::data::DataSource;
use crepant::groups::{Family, Group};
use crepant::localization::FixedLocusGraph;
use crepant::{qrr, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrepantStatus {
    Ok = 0,
    /// The call ran but at least one check failed.
    CheckFailed = 1,
    InvalidArgument = 2,
    NotFound = 3,
    DataError = 4,
    MathError = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrepantFormat {
    Text = 0,
    Jsonl = 1,
}

/// Opaque handle to a loaded group.
pub struct CrepantGroup {
    inner: Arc<Group>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CrepantStatus {
    use CrepantStatus::*;
    match e {
        Error::InvalidParameter(_)
        | Error::Parse { .. }
        | Error::UnsupportedGenus(_)
        | Error::InvalidSector(_)
        | Error::TrivialClass => InvalidArgument,
        Error::UnknownClass(_) | Error::UnknownDivisor(_) | Error::UnknownIntegral(_) => NotFound,
        Error::Io(_) | Error::Validation(_) | Error::NonIntegerMultiplicity(..) => DataError,
        Error::Pole(_)
        | Error::NonzeroConstantTerm
        | Error::NotInvertible
        | Error::ZeroWeight(_)
        | Error::MismatchAt(_)
        | Error::SqrtNotCyclotomic(_) => MathError,
    }
}

enum Fail {
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, records any error and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<CrepantStatus, Fail>) -> CrepantStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Arg(m))) => {
            set_error(m);
            CrepantStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            CrepantStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Arg(format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Arg(format!("{name} is not UTF-8")))
}

unsafe fn source(data_dir: *const c_char) -> Result<DataSource, Fail> {
    if data_dir.is_null() {
        return Ok(DataSource::resolve(None));
    }
    Ok(DataSource::resolve(Some(Path::new(str_arg(data_dir, "data_dir")?))))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<CrepantStatus, Fail> {
    if out.is_null() {
        return Err(Fail::Arg("out is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail::Arg("result contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(CrepantStatus::Ok)
}

unsafe fn group_ref<'a>(g: *const CrepantGroup) -> Result<&'a Group, Fail> {
    g.as_ref().map(|h| &*h.inner).ok_or_else(|| Fail::Arg("group is null".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn crepant_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on this thread.
#[no_mangle]
pub extern "C" fn crepant_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn crepant_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a group by name (`A5`, `D7`, `E8`). `data_dir` may be null to use
/// `CREPANT_DATA_DIR` or the built-in data.
///
/// # Safety
/// `name` must be a valid C string, `data_dir` null or a valid C string,
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crepant_group_load(
    name: *const c_char,
    data_dir: *const c_char,
    out: *mut *mut CrepantGroup,
) -> CrepantStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Arg("out is null".into()));
        }
        let f = Family::parse(str_arg(name, "name")?)?;
        let inner = Group::get_with(f, &source(data_dir)?)?;
        *out = Box::into_raw(Box::new(CrepantGroup { inner }));
        Ok(CrepantStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from [`crepant_group_load`], freed once.
#[no_mangle]
pub unsafe extern "C" fn crepant_group_free(g: *mut CrepantGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Group order, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn crepant_group_order(g: *const CrepantGroup) -> usize {
    g.as_ref().map_or(0, |h| h.inner.order())
}

/// Number of conjugacy classes, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn crepant_group_class_count(g: *const CrepantGroup) -> usize {
    g.as_ref().map_or(0, |h| h.inner.classes.len())
}

/// Label of class `index` in table order.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn crepant_group_class_label(
    g: *const CrepantGroup,
    index: usize,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let g = group_ref(g)?;
        let c = g
            .classes
            .get(index)
            .ok_or_else(|| Fail::Arg(format!("class index {index} out of range")))?;
        write_string(out, c.name.clone())
    })
}

/// Three-point correlator of three class labels, as a reduced fraction.
///
/// # Safety
/// `g` must be a live handle, the labels valid C strings, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn crepant_three_point(
    g: *const CrepantGroup,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let g = group_ref(g)?;
        let labels = [str_arg(a, "a")?, str_arg(b, "b")?, str_arg(c, "c")?];
        write_string(out, g.bg_three_point(labels)?.to_string())
    })
}

/// Genus-one one-point psi integral of a class.
///
/// # Safety
/// `g` must be a live handle, `class` a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn crepant_psi_one_point(
    g: *const CrepantGroup,
    class: *const c_char,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let g = group_ref(g)?;
        write_string(out, qrr::psi_one_point(g, str_arg(class, "class")?)?.to_string())
    })
}

/// Genus-one one-point integral of the first Chern character against a
/// nontrivial class.
///
/// # Safety
/// `g` must be a live handle, `class` a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn crepant_ch1_one_point(
    g: *const CrepantGroup,
    class: *const c_char,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let g = group_ref(g)?;
        let r = qrr::ch1_one_point(g, str_arg(class, "class")?)?;
        write_string(out, r.ch1_integral.to_string())
    })
}

/// Degree-zero invariant of the resolution by localization, rendered as a
/// rational function of the torus weights. `genus` is 1 (one unit
/// insertion) or 2 (no insertions).
///
/// # Safety
/// `name` must be a valid C string, `data_dir` null or valid, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn crepant_localization(
    name: *const c_char,
    genus: u32,
    data_dir: *const c_char,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let f = Family::parse(str_arg(name, "name")?)?;
        let graph = FixedLocusGraph::load(f, &source(data_dir)?)?;
        let v = match genus {
            1 => graph.genus1_one_point()?,
            2 => graph.genus2_zero_point()?,
            _ => return Err(Error::UnsupportedGenus(genus).into()),
        };
        write_string(out, v.render())
    })
}

/// Runs a verification suite and writes the rendered report.
///
/// `suite` is one of `localization`, `hurwitz-hodge`, `three-point`,
/// `change-of-vars` (these need `group`), `jfunction`, `wronskian` (these
/// use `order`) or `all`. Returns `CheckFailed` when the report contains a
/// failed check; the report is written in that case too.
///
/// # Safety
/// `suite` must be a valid C string, `group` and `data_dir` null or valid,
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn crepant_verify(
    suite: *const c_char,
    group: *const c_char,
    order: usize,
    data_dir: *const c_char,
    format: CrepantFormat,
    out: *mut *mut c_char,
) -> CrepantStatus {
    guard(|| {
        let suite = str_arg(suite, "suite")?;
        let src = source(data_dir)?;
        let family = || -> Result<Family, Fail> { Ok(Family::parse(str_arg(group, "group")?)?) };
        let reports: Vec<Report> = match suite {
            "localization" => vec![suites::localization(family()?, &src, false)?],
            "hurwitz-hodge" => vec![suites::hurwitz_hodge(family()?, &src, false)?],
            "three-point" => vec![suites::three_point(family()?, &src, false)?],
            "change-of-vars" => vec![suites::change_of_vars(family()?, &src, false)?],
            "jfunction" => vec![suites::jfunction(order, false)?],
            "wronskian" => vec![suites::wronskian(order, false)?],
            "all" => suites::all(&src, false)?,
            other => return Err(Fail::Arg(format!("unknown suite {other}"))),
        };
        let text = match format {
            CrepantFormat::Text => emit_text(&reports),
            CrepantFormat::Jsonl => emit_jsonl(&reports),
        };
        write_string(out, text)?;
        Ok(if reports.iter().all(Report::passed) { CrepantStatus::Ok } else { CrepantStatus::CheckFailed })
    })
}
