//! C ABI over the shderiv engine.
//!
//! Structures are passed around as opaque `ShdStructure` handles. Every
//! fallible function returns an `ShdStatus`; on anything other than
//! `SHD_STATUS_OK` a message is available from `shd_last_error` on the same
//! thread until the next call. Strings handed out by the library are owned
//! by the caller and released with `shd_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use shderiv::cli::fixture_document;
use shderiv::fixtures;
use shderiv::homotopy_assoc as assoc;
use shderiv::homotopy_lie as lie;
use shderiv::io::{self, Document, StructureDocument, StructureKind};
use shderiv::operad::{check_d_squared, generator_differential, render, Preset, RenderStyle};
use shderiv::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShdStatus {
    Ok = 0,
    /// A relation fails or a mathematical precondition is violated.
    MathFailure = 1,
    /// Malformed input: bad JSON, unknown labels, shape mismatches.
    InputError = 2,
    NullPointer = 3,
    /// A string argument is not valid UTF-8.
    InvalidUtf8 = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// An A-infinity or L-infinity structure, optionally with a derivation.
pub struct ShdStructure {
    doc: StructureDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ShdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotClosed
            | Error::NotAssociative(_)
            | Error::DifferentialNotSquareZero(_)
            | Error::LeibnizFails(_)
            | Error::NotAntisymmetric(_)
            | Error::JacobiFails(_) => ShdStatus::MathFailure,
            _ => ShdStatus::InputError,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, recording its error message and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ShdStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ShdStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ShdStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ShdStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn read_handle<'a>(p: *const ShdStructure) -> Result<&'a ShdStructure, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(ShdStatus::NullPointer, "null structure handle".into()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ShdStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ShdStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s.replace('\0', " ")).expect("interior nul bytes removed").into_raw();
    Ok(())
}

fn parse_preset(name: &str) -> Result<Preset, Failure> {
    name.parse::<Preset>().map_err(Failure::from)
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn shd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn shd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn shd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a structure document (`"structure": "ainfty"` or `"linfty"`).
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_from_json(json: *const c_char, out: *mut *mut ShdStructure) -> ShdStatus {
    guard(|| {
        let doc = io::parse(read_str(json)?)?.into_structure()?;
        write_out(out, ShdStructure { doc })
    })
}

/// Loads a built-in fixture, for example `"dual-numbers"` or `"sl2"`.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_from_fixture(name: *const c_char, out: *mut *mut ShdStructure) -> ShdStatus {
    guard(|| {
        let f = fixtures::by_name(read_str(name)?)?;
        write_out(out, ShdStructure { doc: fixture_document(&f) })
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_free(s: *mut ShdStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// 1 for A-infinity, 2 for L-infinity, 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_kind(s: *const ShdStructure) -> c_int {
    match s.as_ref().map(|s| s.doc.kind) {
        Some(StructureKind::AInfinity) => 1,
        Some(StructureKind::LInfinity) => 2,
        None => 0,
    }
}

/// Whether the handle carries a derivation (1) or not (0).
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_has_derivation(s: *const ShdStructure) -> c_int {
    s.as_ref().map_or(0, |s| c_int::from(s.doc.derivation.is_some()))
}

/// Serializes the structure into the JSON document format.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_to_json(s: *const ShdStructure, out: *mut *mut c_char) -> ShdStatus {
    guard(|| {
        let s = read_handle(s)?;
        write_string(out, io::to_json(&Document::Structure(s.doc.clone())))
    })
}

/// Checks the structure relations up to `max_arity`, and the derivation
/// relations too when `with_derivation` is nonzero. Returns
/// `SHD_STATUS_MATH_FAILURE` with the first failing arity and tuple in
/// `shd_last_error` when a relation fails.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn shd_structure_verify(s: *const ShdStructure, max_arity: usize, with_derivation: c_int) -> ShdStatus {
    guard(|| {
        let s = read_handle(s)?;
        match s.doc.first_failure(max_arity, with_derivation != 0)? {
            None => Ok(()),
            Some(w) => Err(Failure(ShdStatus::MathFailure, w.to_string())),
        }
    })
}

/// The tautological derivation `θ_q = m_q` (or `l_q`), of degree one.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_derive_tautological(s: *const ShdStructure, out: *mut *mut ShdStructure) -> ShdStatus {
    guard(|| {
        let s = read_handle(s)?;
        let doc = match s.doc.kind {
            StructureKind::AInfinity => {
                let m = s.doc.ainfty()?;
                StructureDocument::from_ainfty(&m, Some(&assoc::tautological_derivation(&m)))
            }
            StructureKind::LInfinity => {
                let l = s.doc.linfty()?;
                StructureDocument::from_linfty(&l, Some(&lie::tautological_derivation(&l)))
            }
        };
        write_out(out, ShdStructure { doc })
    })
}

/// The inner derivation of the element `label=coeff,…`. `degree` is used
/// only when the element is zero; otherwise the element's own degree is
/// taken. Fails with `SHD_STATUS_MATH_FAILURE` when `m1(a) != 0`.
///
/// # Safety
/// `s` must be a live handle, `element` a valid C string and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_derive_inner(
    s: *const ShdStructure,
    element: *const c_char,
    degree: i64,
    out: *mut *mut ShdStructure,
) -> ShdStatus {
    guard(|| {
        let s = read_handle(s)?;
        let a = io::parse_element(&s.doc.space, read_str(element)?)?;
        let degree = match a.degree() {
            Some(d) => d,
            None if a.is_zero() => degree,
            None => return Err(Error::InhomogeneousElement.into()),
        };
        let doc = match s.doc.kind {
            StructureKind::AInfinity => {
                let m = s.doc.ainfty()?;
                StructureDocument::from_ainfty(&m, Some(&assoc::inner_derivation(&m, &a, degree)?))
            }
            StructureKind::LInfinity => {
                let l = s.doc.linfty()?;
                StructureDocument::from_linfty(&l, Some(&lie::inner_derivation(&l, &a, degree)?))
            }
        };
        write_out(out, ShdStructure { doc })
    })
}

/// Runs the `∂² = 0` check of the `"ass"` or `"lie"` resolution with
/// derivation degree `k` up to `max_arity`. The text report is written to
/// `report` when it is non-null; a nonzero residue gives
/// `SHD_STATUS_MATH_FAILURE`.
///
/// # Safety
/// `preset` must be a valid C string; `report` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn shd_operad_check_d2(
    preset: *const c_char,
    k: i64,
    max_arity: usize,
    report: *mut *mut c_char,
) -> ShdStatus {
    guard(|| {
        let result = check_d_squared(parse_preset(read_str(preset)?)?, k, max_arity)?;
        if !report.is_null() {
            write_string(report, result.render(RenderStyle::Text))?;
        }
        if result.passed() {
            Ok(())
        } else {
            Err(Failure(ShdStatus::MathFailure, "nonzero residue in d^2".into()))
        }
    })
}

/// `∂g` for the generator `"x^n"`, `"xbar^n"` or `"phi"`, rendered as
/// LaTeX when `latex` is nonzero and as plain text otherwise.
///
/// # Safety
/// `preset` and `generator` must be valid C strings and `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn shd_operad_differential(
    preset: *const c_char,
    generator: *const c_char,
    k: i64,
    latex: c_int,
    out: *mut *mut c_char,
) -> ShdStatus {
    guard(|| {
        let d = generator_differential(parse_preset(read_str(preset)?)?, read_str(generator)?, k)?;
        let style = if latex != 0 { RenderStyle::Latex } else { RenderStyle::Text };
        write_string(out, render(&d, style))
    })
}
