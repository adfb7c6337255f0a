//! C ABI for the qhk engine.
//!
//! Elements cross the boundary as opaque `QhkElement` handles owned by the
//! caller and released with `qhk_element_free`. Strings returned to C are
//! released with `qhk_string_free`. Every fallible call returns a
//! `QhkStatus`; on failure `qhk_last_error_message` describes the error until
//! the next call on the same thread. Panics never unwind into C.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qhk::hopf::{is_primitive, square_root};
use qhk::json::element_to_json;
use qhk::parse::parse_expr;
use qhk::sieve::max_reachable_length;
use qhk::steenrod::{is_a_annihilated, sq_down};
use qhk::verify::{verify_square_root, verify_theorem1, verify_theorem2, verify_theorem3};
use qhk::{Element, Error, Space};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGenerator = 4,
    UnknownSpace = 5,
    Domain = 6,
    NonHomogeneous = 7,
    SpaceMismatch = 8,
    Cache = 9,
    Panic = 10,
}

/// Which verifier `qhk_verify` runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhkTheorem {
    One = 1,
    Two = 2,
    Three = 3,
    Root = 4,
}

/// An element of `H_*QX` over one space.
pub struct QhkElement {
    space: Space,
    value: Element,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(QhkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let status = match e {
            Error::Domain(_) => QhkStatus::Domain,
            Error::NonHomogeneous(..) => QhkStatus::NonHomogeneous,
            Error::SpaceMismatch(_) => QhkStatus::SpaceMismatch,
            Error::Parse { .. } => QhkStatus::Parse,
            Error::UnknownGenerator { .. } => QhkStatus::UnknownGenerator,
            Error::Cache(_) => QhkStatus::Cache,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QhkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> QhkStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QhkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            QhkStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QhkStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn read_space(p: *const c_char) -> Result<Space, Fail> {
    read_str(p, "space")?.parse().map_err(|e: Error| Fail(QhkStatus::UnknownSpace, e.to_string()))
}

unsafe fn read_element<'a>(p: *const QhkElement) -> Result<&'a QhkElement, Fail> {
    p.as_ref().ok_or_else(|| null("element"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn boxed(space: Space, value: Element) -> *mut QhkElement {
    Box::into_raw(Box::new(QhkElement { space, value }))
}

/// Message describing the last failed call on this thread, or an empty
/// string. The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn qhk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` over `space` (for example `"P"`, `"S1"`, `"SCP^s1"`) into
/// canonical form.
///
/// # Safety
/// `text` and `space` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_parse(text: *const c_char, space: *const c_char, out: *mut *mut QhkElement) -> QhkStatus {
    guard(|| {
        let space = read_space(space)?;
        let value = parse_expr(read_str(text, "text")?, space)?;
        write_out(out, boxed(space, value))
    })
}

/// Releases an element. Null is ignored.
///
/// # Safety
/// `element` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qhk_element_free(element: *mut QhkElement) {
    if !element.is_null() {
        drop(Box::from_raw(element));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qhk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical text of an element, or null if `element` is null.
///
/// # Safety
/// `element` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qhk_element_to_string(element: *const QhkElement) -> *mut c_char {
    element.as_ref().map_or(ptr::null_mut(), |e| into_c_string(e.value.to_string()))
}

/// JSON form of an element, or null if `element` is null.
///
/// # Safety
/// `element` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qhk_element_to_json(element: *const QhkElement) -> *mut c_char {
    element.as_ref().map_or(ptr::null_mut(), |e| into_c_string(element_to_json(&e.value)))
}

/// Whether two elements are equal.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_element_equal(a: *const QhkElement, b: *const QhkElement, out: *mut bool) -> QhkStatus {
    guard(|| {
        let (a, b) = (read_element(a)?, read_element(b)?);
        write_out(out, a.space == b.space && a.value == b.value)
    })
}

unsafe fn binary(
    a: *const QhkElement,
    b: *const QhkElement,
    out: *mut *mut QhkElement,
    op: fn(&Element, &Element) -> Element,
) -> QhkStatus {
    guard(|| {
        let (a, b) = (read_element(a)?, read_element(b)?);
        if a.space != b.space {
            return Err(Error::SpaceMismatch(format!("{} and {}", a.space, b.space)).into());
        }
        write_out(out, boxed(a.space, op(&a.value, &b.value)))
    })
}

/// Sum of two elements over the same space.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_add(a: *const QhkElement, b: *const QhkElement, out: *mut *mut QhkElement) -> QhkStatus {
    binary(a, b, out, Element::add)
}

/// Product of two elements over the same space.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_mul(a: *const QhkElement, b: *const QhkElement, out: *mut *mut QhkElement) -> QhkStatus {
    binary(a, b, out, Element::mul)
}

/// The dual Steenrod operation `Sq^a_*` applied to a homogeneous element.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_sq_down(a: u32, element: *const QhkElement, out: *mut *mut QhkElement) -> QhkStatus {
    guard(|| {
        let e = read_element(element)?;
        write_out(out, boxed(e.space, sq_down(a, &e.value)?))
    })
}

/// The square root `r`, dual to squaring in cohomology.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_square_root(element: *const QhkElement, out: *mut *mut QhkElement) -> QhkStatus {
    guard(|| {
        let e = read_element(element)?;
        write_out(out, boxed(e.space, square_root(&e.value)?))
    })
}

/// Whether every positive-degree Steenrod operation kills the element.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_is_a_annihilated(element: *const QhkElement, out: *mut bool) -> QhkStatus {
    guard(|| write_out(out, is_a_annihilated(&read_element(element)?.value)?))
}

/// Whether the element is primitive for the coproduct.
///
/// # Safety
/// `element` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_is_primitive(element: *const QhkElement, out: *mut bool) -> QhkStatus {
    guard(|| write_out(out, is_primitive(&read_element(element)?.value)?))
}

/// Runs a verifier over degrees `1..=max_degree`. A `max_length` of 0 selects
/// the longest word length reachable in that range. Writes whether the check
/// passed and the JSON report, to be freed with `qhk_string_free`.
///
/// # Safety
/// `space` must be a NUL-terminated string; `passed` and `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qhk_verify(
    theorem: QhkTheorem,
    space: *const c_char,
    max_degree: u32,
    max_length: u32,
    max_vectors: u32,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> QhkStatus {
    guard(|| {
        let space = read_space(space)?;
        if passed.is_null() || report_json.is_null() {
            return Err(null("output pointer"));
        }
        let cap = match max_length {
            0 => max_reachable_length(space, max_degree),
            n => n as usize,
        };
        let report = match theorem {
            QhkTheorem::One => verify_theorem1(space, max_degree, cap),
            QhkTheorem::Two => verify_theorem2(space, max_degree, cap, max_vectors as usize)?,
            QhkTheorem::Three => {
                let degrees: Vec<u32> = (1..=max_degree).collect();
                verify_theorem3(space, &degrees, cap, max_vectors as usize)
            }
            QhkTheorem::Root => verify_square_root(space, max_degree, cap),
        };
        let json = serde_json::to_string(&report).map_err(|e| Fail(QhkStatus::Panic, e.to_string()))?;
        write_out(passed, report.passed())?;
        write_out(report_json, into_c_string(json))
    })
}
