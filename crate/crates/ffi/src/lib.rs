//! C ABI over `argrank`.
//!
//! Frameworks are opaque handles created by [`argrank_framework_parse`] and
//! released with [`argrank_framework_free`]. Every fallible call returns an
//! [`ArgrankStatus`]; on failure [`argrank_last_error_message`] describes the
//! error for the calling thread. Strings handed out by the library must be
//! released with [`argrank_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use argrank::api::{payload_json, solve_framework, Task};
use argrank::format::parse_auto;
use argrank::{ArgumentationFramework, Budget, Error, PowerIndex, Semantics, HARD_MAX_ARGS};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgrankStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    TooManyArguments = 4,
    InvalidArgument = 5,
    BudgetExceeded = 6,
    Panic = 7,
}

/// Opaque framework handle.
pub struct ArgrankFramework {
    inner: ArgumentationFramework,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn status_of(error: &Error) -> ArgrankStatus {
    match error {
        Error::Parse { .. }
        | Error::InvalidId(_)
        | Error::DuplicateArgument(_)
        | Error::DuplicateAttack(..) => ArgrankStatus::ParseError,
        Error::TooManyArguments { .. } => ArgrankStatus::TooManyArguments,
        Error::BudgetExceeded { .. } => ArgrankStatus::BudgetExceeded,
        _ => ArgrankStatus::InvalidArgument,
    }
}

struct Failure(ArgrankStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ArgrankStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ArgrankStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ArgrankStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ArgrankStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ArgrankStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn framework<'a>(handle: *const ArgrankFramework) -> Result<&'a ArgumentationFramework, Failure> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure(ArgrankStatus::NullPointer, "framework handle is null".into()))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text)
        .map_err(|_| Failure(ArgrankStatus::InvalidArgument, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(
            ArgrankStatus::NullPointer,
            "output pointer is null".into(),
        ))
    } else {
        Ok(())
    }
}

/// Parses APX or JSON text (JSON when it starts with `{`) into a new handle.
/// `max_args` of 0 selects the library default.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn argrank_framework_parse(
    text: *const c_char,
    max_args: usize,
    out: *mut *mut ArgrankFramework,
) -> ArgrankStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let text = read_str(text, "text")?;
        let limit = match max_args {
            0 => argrank::DEFAULT_MAX_ARGS,
            m => m.min(HARD_MAX_ARGS),
        };
        let inner = parse_auto(text, limit)?;
        *out = Box::into_raw(Box::new(ArgrankFramework { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must come from [`argrank_framework_parse`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn argrank_framework_free(handle: *mut ArgrankFramework) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of arguments.
///
/// # Safety
/// `handle` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn argrank_framework_len(
    handle: *const ArgrankFramework,
    out: *mut usize,
) -> ArgrankStatus {
    guard(|| {
        check_out(out)?;
        *out = framework(handle)?.len();
        Ok(())
    })
}

fn parse_semantics(s: &str) -> Result<Semantics, Failure> {
    s.parse().map_err(Failure::from)
}

/// Rank payload as JSON, identical to the service's `payload` field.
///
/// # Safety
/// `handle` must be live, strings NUL-terminated, `out` valid. The result must
/// be released with [`argrank_string_free`].
#[no_mangle]
pub unsafe extern "C" fn argrank_rank_json(
    handle: *const ArgrankFramework,
    semantics: *const c_char,
    index: *const c_char,
    exact: bool,
    out: *mut *mut c_char,
) -> ArgrankStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let af = framework(handle)?;
        let semantics = parse_semantics(read_str(semantics, "semantics")?)?;
        let index: PowerIndex = read_str(index, "index")?.parse()?;
        let payload = solve_framework(
            af,
            semantics,
            Task::Rank,
            Some(index),
            exact,
            &Budget::unlimited(),
        )?;
        write_string(out, payload_json(&payload))
    })
}

/// Extension payload as JSON.
///
/// # Safety
/// As for [`argrank_rank_json`].
#[no_mangle]
pub unsafe extern "C" fn argrank_extensions_json(
    handle: *const ArgrankFramework,
    semantics: *const c_char,
    out: *mut *mut c_char,
) -> ArgrankStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let af = framework(handle)?;
        let semantics = parse_semantics(read_str(semantics, "semantics")?)?;
        let payload = solve_framework(af, semantics, Task::Extensions, None, false, &Budget::unlimited())?;
        write_string(out, payload_json(&payload))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn argrank_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn argrank_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
