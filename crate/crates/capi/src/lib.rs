//! C interface: opaque handles over the field-generic core, status codes,
//! JSON strings for structured results.
//!
//! Conventions: every function returns a [`ResintStatus`]; results come
//! back through out pointers. Strings handed out are NUL-terminated, owned
//! by the caller, and released with [`resint_string_free`]. On any failure
//! the thread-local message inspected by [`resint_last_error`] is updated.
//! No call unwinds across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use resint::bipoly::Bidegree;
use resint::bkm::{bkm_betti_table, kab_rank};
use resint::diagonal::DiagonalSpec;
use resint::field::{Fp, Rationals};
use resint::formats::{
    betti_rows, ideal_from_file, presentation_from_file, IdealFile, MatrixFile,
};
use resint::oracle::{quotient_piece_dim, IdealSpec, TorComputer};
use resint::rees::{rees_model, ReesModel};
use resint::{Error, Result};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ResintStatus {
    /// Success.
    Ok = 0,
    /// Malformed input or a violated hypothesis.
    InvalidInput = 1,
    /// A computation contradicted an internal identity or expected value.
    MathMismatch = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// Unexpected internal failure.
    Internal = 4,
}

enum IdealHandle {
    Prime(IdealSpec<Fp>),
    Rational(IdealSpec<Rationals>),
}

enum ReesHandle {
    Prime(ReesModel<Fp>),
    Rational(ReesModel<Rationals>),
}

/// Opaque ideal handle.
pub struct ResintIdeal(IdealHandle);

/// Opaque Rees model handle.
pub struct ResintRees(ReesHandle);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn status_of(e: &Error) -> ResintStatus {
    match e {
        Error::IdentityCheck(_) | Error::ComposeNonzero { .. } | Error::NegativeDimension(_) => {
            ResintStatus::MathMismatch
        }
        _ => ResintStatus::InvalidInput,
    }
}

fn fail(e: Error) -> ResintStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Run a fallible body, translating errors and panics into statuses.
fn guarded(body: impl FnOnce() -> Result<()>) -> ResintStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ResintStatus::Ok,
        Ok(Err(e)) => fail(e),
        Err(_) => {
            set_error("internal panic".into());
            ResintStatus::Internal
        }
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str> {
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| Error::Parse(format!("input is not utf-8: {e}")))
}

fn give_string(out: *mut *mut c_char, text: String) -> Result<()> {
    let c = CString::new(text).map_err(|_| Error::Parse("text contains NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the most recent failure on this thread, or null if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn resint_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn resint_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an ideal from its JSON file format. On success the handle must be
/// released with `resint_ideal_free`.
#[no_mangle]
pub unsafe extern "C" fn resint_ideal_parse(
    json: *const c_char,
    out: *mut *mut ResintIdeal,
) -> ResintStatus {
    if json.is_null() || out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let text = read_utf8(json)?;
        let file: IdealFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let handle = match file.ring.field {
            resint::field::FieldSpec::Prime(q) => {
                IdealHandle::Prime(ideal_from_file(&file, Fp::new(q)?)?)
            }
            resint::field::FieldSpec::Rational => {
                IdealHandle::Rational(ideal_from_file(&file, Rationals)?)
            }
        };
        *out = Box::into_raw(Box::new(ResintIdeal(handle)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn resint_ideal_free(ideal: *mut ResintIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// Number of generators of the ideal.
#[no_mangle]
pub unsafe extern "C" fn resint_ideal_generator_count(
    ideal: *const ResintIdeal,
    out: *mut usize,
) -> ResintStatus {
    if ideal.is_null() || out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        *out = match &(*ideal).0 {
            IdealHandle::Prime(i) => i.gens().len(),
            IdealHandle::Rational(i) => i.gens().len(),
        };
        Ok(())
    })
}

/// Dimension of the bidegree (a, b) piece of the quotient by the ideal.
#[no_mangle]
pub unsafe extern "C" fn resint_ideal_quotient_dim(
    ideal: *const ResintIdeal,
    a: i64,
    b: i64,
    out: *mut u64,
) -> ResintStatus {
    if ideal.is_null() || out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let d = Bidegree::new(a, b);
        *out = match &(*ideal).0 {
            IdealHandle::Prime(i) => quotient_piece_dim(i, d)?,
            IdealHandle::Rational(i) => quotient_piece_dim(i, d)?,
        };
        Ok(())
    })
}

/// Bigraded Betti numbers of the quotient inside the window i <= i_max,
/// a <= a_max, b <= b_max, as a JSON array of {i, a, b, mult} rows sorted
/// by (i, a, b). The caller frees the string.
#[no_mangle]
pub unsafe extern "C" fn resint_ideal_betti_window(
    ideal: *const ResintIdeal,
    i_max: usize,
    a_max: i64,
    b_max: i64,
    out_json: *mut *mut c_char,
) -> ResintStatus {
    if ideal.is_null() || out_json.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let table = match &(*ideal).0 {
            IdealHandle::Prime(i) => {
                TorComputer::bigraded(i.clone(), a_max, b_max)?.betti_window(i_max)?
            }
            IdealHandle::Rational(i) => {
                TorComputer::bigraded(i.clone(), a_max, b_max)?.betti_window(i_max)?
            }
        };
        give_string(out_json, serde_json::to_string(&betti_rows(&table))?)
    })
}

/// Parse a presentation matrix from its JSON file format and build the
/// Rees model: transposed matrix, row minors, residual ideal. On success
/// the handle must be released with `resint_rees_free`.
#[no_mangle]
pub unsafe extern "C" fn resint_rees_parse(
    json: *const c_char,
    out: *mut *mut ResintRees,
) -> ResintStatus {
    if json.is_null() || out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let text = read_utf8(json)?;
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let handle = match file.field {
            resint::field::FieldSpec::Prime(q) => {
                let pres = presentation_from_file(&file, Fp::new(q)?)?;
                ReesHandle::Prime(rees_model(&pres, None)?)
            }
            resint::field::FieldSpec::Rational => {
                let pres = presentation_from_file(&file, Rationals)?;
                ReesHandle::Rational(rees_model(&pres, None)?)
            }
        };
        *out = Box::into_raw(Box::new(ResintRees(handle)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn resint_rees_free(rees: *mut ResintRees) {
    if !rees.is_null() {
        drop(Box::from_raw(rees));
    }
}

/// Certificates for the (c, e) diagonal of the Rees algebra, as JSON. The
/// caller frees the string.
#[no_mangle]
pub unsafe extern "C" fn resint_rees_certificates(
    rees: *const ResintRees,
    c: i64,
    e: i64,
    out_json: *mut *mut c_char,
) -> ResintStatus {
    if rees.is_null() || out_json.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let diag = DiagonalSpec::new(c, e)?;
        let certs = match &(*rees).0 {
            ReesHandle::Prime(m) => m.certificates(diag)?,
            ReesHandle::Rational(m) => m.certificates(diag)?,
        };
        give_string(out_json, serde_json::to_string(&certs)?)
    })
}

/// Dimension of the degree-t piece of the s-th power of the presented
/// ideal.
#[no_mangle]
pub unsafe extern "C" fn resint_rees_power_piece_dim(
    rees: *const ResintRees,
    s: usize,
    t: i64,
    out: *mut u64,
) -> ResintStatus {
    if rees.is_null() || out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        *out = match &(*rees).0 {
            ReesHandle::Prime(m) => m.power_piece_dim(s, t)?,
            ReesHandle::Rational(m) => m.power_piece_dim(s, t)?,
        };
        Ok(())
    })
}

/// Closed-form Betti table for the quotient built from a generic n x m
/// matrix, as a JSON array of {i, a, b, mult} rows. The caller frees the
/// string.
#[no_mangle]
pub unsafe extern "C" fn resint_bkm_betti_json(
    n: usize,
    m: usize,
    out_json: *mut *mut c_char,
) -> ResintStatus {
    if out_json.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        let table = bkm_betti_table(n, m)?;
        give_string(out_json, serde_json::to_string(&betti_rows(&table))?)
    })
}

/// Rank of the degree-a strand kernel in homological position b of the
/// Koszul complex on n variables, verified against its closed form.
#[no_mangle]
pub unsafe extern "C" fn resint_kab_rank(
    n: usize,
    a: i64,
    b: i64,
    out: *mut u64,
) -> ResintStatus {
    if out.is_null() {
        return ResintStatus::NullPointer;
    }
    guarded(|| {
        *out = kab_rank(n, a, b)?.strand;
        Ok(())
    })
}
