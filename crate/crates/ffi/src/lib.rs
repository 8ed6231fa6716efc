//! C ABI over the `wnalg` engine.
//!
//! Every fallible function returns a [`WnalgStatus`] and writes its result
//! through an out pointer. On failure a message is kept per thread and can be
//! read with [`wnalg_last_error`]. Strings returned through `char **` belong to
//! the caller and are released with [`wnalg_string_free`]; handles are released
//! with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use wnalg::engine::{self, AlgebraKind, CheckOptions, EngineError};
use wnalg::frontend::{parse_expr_in, parse_identity, parse_identity_file, render_poly, vars_to_gens, ParseError};
use wnalg::oracle::{IdentitySet, Oracle, OracleError, DEFAULT_CAP};
use wnalg::poly::{MagmaPoly, PolyError};
use wnalg::scalar::Field;
use wnalg::word::Multidegree;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WnalgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    LimitExceeded = 5,
    ComputationError = 6,
    Panic = 7,
}

/// Opaque polynomial over the free magma.
pub struct WnalgPoly(MagmaPoly);

/// Opaque list of identities.
pub struct WnalgIdentitySet(IdentitySet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(WnalgStatus, String);

impl Failure {
    fn new(status: WnalgStatus, msg: impl Into<String>) -> Failure {
        Failure(status, msg.into())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure::new(WnalgStatus::ParseError, e.to_string())
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Failure {
        Failure::new(WnalgStatus::InvalidArgument, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        let status = match &e {
            OracleError::CapExceeded { .. } | OracleError::SmallPrime { .. } => WnalgStatus::LimitExceeded,
            OracleError::Parse(_) | OracleError::File { .. } => WnalgStatus::ParseError,
            OracleError::Io { .. } => WnalgStatus::ComputationError,
            _ => WnalgStatus::InvalidArgument,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Failure {
        match e {
            EngineError::Oracle(o) => o.into(),
            EngineError::CapTooLarge { .. } => Failure::new(WnalgStatus::LimitExceeded, e.to_string()),
            other => Failure::new(WnalgStatus::InvalidArgument, other.to_string()),
        }
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records any failure and converts panics into [`WnalgStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WnalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            WnalgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            WnalgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(WnalgStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(WnalgStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(WnalgStatus::NullArgument, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(WnalgStatus::NullArgument, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::new(WnalgStatus::ComputationError, "result contains a NUL byte"))?;
    write_out(out, c.into_raw())
}

/// `0` means the rationals, anything else a prime modulus.
fn field_of(prime: u64) -> Result<Field, Failure> {
    if prime == 0 {
        Ok(Field::Rational)
    } else {
        Field::prime(prime).map_err(|e| Failure::new(WnalgStatus::InvalidArgument, e.to_string()))
    }
}

fn algebra_of(name: &str) -> Result<AlgebraKind, Failure> {
    name.parse::<AlgebraKind>().map_err(Failure::from)
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library on this
/// thread.
#[no_mangle]
pub extern "C" fn wnalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wnalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an expression over the rationals (`prime == 0`) or GF(prime).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_poly_parse(text: *const c_char, prime: u64, out: *mut *mut WnalgPoly) -> WnalgStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let p = parse_expr_in(text, field_of(prime)?)?;
        write_out(out, Box::into_raw(Box::new(WnalgPoly(p))))
    })
}

/// Parses an identity `<expr over v1, v2, ...> = 0`.
///
/// # Safety
/// As for [`wnalg_poly_parse`].
#[no_mangle]
pub unsafe extern "C" fn wnalg_identity_parse(text: *const c_char, out: *mut *mut WnalgPoly) -> WnalgStatus {
    guard(|| {
        let p = parse_identity(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(WnalgPoly(p))))
    })
}

/// # Safety
/// `p` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wnalg_poly_free(p: *mut WnalgPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of a polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_poly_render(p: *const WnalgPoly, out: *mut *mut c_char) -> WnalgStatus {
    guard(|| {
        let p = deref(p, "polynomial")?;
        write_string(out, render_poly(&p.0))
    })
}

/// Normal form of `p` in the algebra `"wlc"` or `"wnov"`.
///
/// # Safety
/// `algebra` must be a NUL-terminated string, `p` a live handle and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_normalize(algebra: *const c_char, p: *const WnalgPoly, out: *mut *mut c_char) -> WnalgStatus {
    guard(|| {
        let algebra = algebra_of(read_str(algebra, "algebra")?)?;
        let p = deref(p, "polynomial")?;
        write_string(out, algebra.normalize(&p.0)?)
    })
}

/// A preset such as `"wnov2"`, a `+` union like `"wlc2+flex"`, or a file path.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_identity_set_preset(name: *const c_char, out: *mut *mut WnalgIdentitySet) -> WnalgStatus {
    guard(|| {
        let set = IdentitySet::resolve(read_str(name, "name")?)?;
        write_out(out, Box::into_raw(Box::new(WnalgIdentitySet(set))))
    })
}

/// An identity set from text: one identity `<expr> = 0` per line, `#`
/// comments.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_identity_set_parse(text: *const c_char, out: *mut *mut WnalgIdentitySet) -> WnalgStatus {
    guard(|| {
        let ids = parse_identity_file(read_str(text, "text")?)
            .map_err(|(line, e)| Failure::new(WnalgStatus::ParseError, format!("line {line}: {e}")))?;
        let set = IdentitySet::new("custom", ids)?;
        write_out(out, Box::into_raw(Box::new(WnalgIdentitySet(set))))
    })
}

/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wnalg_identity_set_free(s: *mut WnalgIdentitySet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension of the component with multiplicities `m[0]` of x1, `m[1]` of
/// x2, and so on, over Q (`prime == 0`) or GF(prime).
///
/// # Safety
/// `set` must be a live handle, `m` must point to `len` integers and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_quotient_dimension(
    set: *const WnalgIdentitySet,
    m: *const u32,
    len: usize,
    prime: u64,
    out: *mut usize,
) -> WnalgStatus {
    guard(|| {
        let set = deref(set, "identity set")?;
        if m.is_null() {
            return Err(Failure::new(WnalgStatus::NullArgument, "multidegree is null"));
        }
        let m = std::slice::from_raw_parts(m, len);
        if m.iter().all(|&c| c == 0) {
            return Err(Failure::new(WnalgStatus::InvalidArgument, "multidegree must be nonzero"));
        }
        let oracle = Oracle {
            field: field_of(prime)?,
            cap: DEFAULT_CAP,
        };
        let d = oracle.quotient_dimension(&set.0, &Multidegree::from_multiplicities(m))?;
        write_out(out, d)
    })
}

/// Whether the homogeneous polynomial `p` lies in the T-ideal of `set`.
/// Variables are read as generators.
///
/// # Safety
/// `set` and `p` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_membership(set: *const WnalgIdentitySet, p: *const WnalgPoly, prime: u64, out: *mut bool) -> WnalgStatus {
    guard(|| {
        let set = deref(set, "identity set")?;
        let p = deref(p, "polynomial")?;
        let member = Oracle::over(field_of(prime)?).membership(&vars_to_gens(&p.0), &set.0)?;
        write_out(out, member)
    })
}

/// Nilpotency classification of a multilinear polynomial on generators, as
/// JSON. With `verify` set, bounds up to the oracle cap are rechecked over
/// GF(1009) and reported under `"oracle"`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_classify(p: *const WnalgPoly, verify: bool, out: *mut *mut c_char) -> WnalgStatus {
    guard(|| {
        let p = deref(p, "polynomial")?;
        let c = engine::classify_multilinear(&p.0.to_field(Field::Rational)?)?;
        let mut v = c.to_json();
        if verify {
            let field = Field::Prime(1009);
            if let Some(profile) = engine::verify_bound(&c, &Oracle::over(field))? {
                v["oracle"] = serde_json::json!({
                    "degree": profile.degree,
                    "field": field.to_string(),
                    "confirmed": profile.all_zero(),
                });
            }
        }
        write_string(out, v.to_string())
    })
}

/// Substitution check of an identity in `"wlc"` or `"wnov"` over generators
/// x1..x5 up to result degree `max_degree`, as JSON.
///
/// # Safety
/// `algebra` must be a NUL-terminated string, `identity` a live handle and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wnalg_check_identity(
    algebra: *const c_char,
    identity: *const WnalgPoly,
    max_degree: u32,
    out: *mut *mut c_char,
) -> WnalgStatus {
    guard(|| {
        let algebra = algebra_of(read_str(algebra, "algebra")?)?;
        let f = deref(identity, "identity")?;
        let opts = CheckOptions {
            max_degree,
            ..CheckOptions::default()
        };
        let report = engine::check_identity(algebra, &f.0, opts)?;
        write_string(out, report.to_json().to_string())
    })
}
