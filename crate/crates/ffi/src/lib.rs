//! C ABI over `gstar`. Algebras are opaque handles created by
//! `gstar_algebra_from_catalog` or `gstar_algebra_from_json` and released
//! with `gstar_algebra_free`. Every fallible call returns a [`GstarStatus`];
//! `gstar_last_error` gives the message of the most recent failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gstar::algebra::GStarAlgebra;
use gstar::catalog::{self, CatalogParams};
use gstar::freepoly::ElementNames;
use gstar::group::FiniteAbelianGroup;
use gstar::invariants::{cocharacter_table, codim_total, Limits};
use gstar::Error;

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GstarStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Parameter = 4,
    InvalidAlgebra = 5,
    ResourceCap = 6,
    Internal = 7,
}

/// Opaque algebra handle.
pub struct GstarAlgebra {
    inner: GStarAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GstarStatus {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Io(_) => GstarStatus::Parse,
        Error::Parameter { .. } | Error::GroupMismatch(_) | Error::Structural(_) => GstarStatus::Parameter,
        Error::InvalidAlgebra(_) => GstarStatus::InvalidAlgebra,
        Error::ResourceCap { .. } => GstarStatus::ResourceCap,
        _ => GstarStatus::Internal,
    }
}

enum Failure {
    Status(GstarStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GstarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GstarStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("panic inside gstar");
            GstarStatus::Internal
        }
    }
}

/// Reads an optional C string; null gives `None`.
unsafe fn opt_str<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|_| Failure::Status(GstarStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    opt_str(p, what)?.ok_or_else(|| Failure::Status(GstarStatus::NullArgument, format!("{what} is null")))
}

unsafe fn handle<'a>(a: *const GstarAlgebra) -> Result<&'a GStarAlgebra, Failure> {
    a.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::Status(GstarStatus::NullArgument, "algebra handle is null".into()))
}

fn null_out() -> Failure {
    Failure::Status(GstarStatus::NullArgument, "output pointer is null".into())
}

/// Message of the last failed call on this thread (empty after a success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gstar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a catalog algebra. `group` is a list of cyclic orders such as
/// `"4"` or `"2,2"` (null or `"1"` for the trivial group); `g` and `h` are
/// element tuples such as `"(1)"` or null; `k` is 0 when unused.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gstar_algebra_from_catalog(
    name: *const c_char,
    group: *const c_char,
    g: *const c_char,
    h: *const c_char,
    k: usize,
    out: *mut *mut GstarAlgebra,
) -> GstarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        *out = ptr::null_mut();
        let name = req_str(name, "name")?;
        let group = FiniteAbelianGroup::parse(opt_str(group, "group")?.unwrap_or("1"))?;
        let names = ElementNames::default();
        let mut params = CatalogParams::new(group.clone());
        if let Some(g) = opt_str(g, "g")? {
            params = params.g(names.resolve(g, &group)?);
        }
        if let Some(h) = opt_str(h, "h")? {
            params = params.h(names.resolve(h, &group)?);
        }
        if k > 0 {
            params = params.k(k);
        }
        let inner = catalog::build(name, &params)?;
        *out = Box::into_raw(Box::new(GstarAlgebra { inner }));
        Ok(())
    })
}

/// Reads an algebra from its JSON interchange form and checks the axioms.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gstar_algebra_from_json(json: *const c_char, out: *mut *mut GstarAlgebra) -> GstarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        *out = ptr::null_mut();
        let inner = GStarAlgebra::from_json(req_str(json, "json")?)?.validated()?;
        *out = Box::into_raw(Box::new(GstarAlgebra { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is accepted.
///
/// # Safety
/// `a` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gstar_algebra_free(a: *mut GstarAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gstar_algebra_dim(a: *const GstarAlgebra) -> usize {
    a.as_ref().map_or(0, |h| h.inner.dim())
}

/// Serialises the algebra to JSON. Free the string with `gstar_string_free`.
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gstar_algebra_to_json(a: *const GstarAlgebra, out: *mut *mut c_char) -> GstarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        *out = ptr::null_mut();
        let json = handle(a)?.to_json();
        *out = CString::new(json).map_err(|_| Failure::Status(GstarStatus::Internal, "NUL in JSON".into()))?.into_raw();
        Ok(())
    })
}

/// Frees a string returned by this library. Null is accepted.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gstar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Checks the algebra axioms; `*valid` receives the verdict and
/// `*violations` the number of violated axiom instances.
///
/// # Safety
/// `a` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gstar_validate(
    a: *const GstarAlgebra,
    valid: *mut bool,
    violations: *mut usize,
) -> GstarStatus {
    guard(|| {
        if valid.is_null() || violations.is_null() {
            return Err(null_out());
        }
        let report = handle(a)?.validate();
        *valid = report.is_ok();
        *violations = report.violations.len();
        Ok(())
    })
}

/// Total codimension `c_n`. `cap` is the degree cap (0 for the default).
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gstar_codim(a: *const GstarAlgebra, n: usize, cap: usize, out: *mut u64) -> GstarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        *out = codim_total(handle(a)?, n, &limits(cap))?;
        Ok(())
    })
}

/// Colength `l_n`. `cap` is the degree cap (0 for the default).
///
/// # Safety
/// `a` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gstar_colength(a: *const GstarAlgebra, n: usize, cap: usize, out: *mut u64) -> GstarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_out());
        }
        *out = cocharacter_table(handle(a)?, n, &limits(cap))?.colength;
        Ok(())
    })
}

fn limits(cap: usize) -> Limits {
    if cap == 0 {
        Limits::default()
    } else {
        Limits::with_cap(cap)
    }
}
