//! C ABI over `twistkit`.
//!
//! Every function returns a [`TkStatus`]; results go through out-pointers.
//! On failure the message is available from [`tk_last_error`] on the same
//! thread until the next failing call. Handles are opaque and must be
//! released with their `_free` function; strings returned through `char **`
//! must be released with [`tk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistkit::newforms::{load_eigensystem, EigenSystem};
use twistkit::symplectic::{similitude_factor, RMatrix};
use twistkit::twists::{
    candidate_moduli, cocycle_check, detect_inner_twists, determinant_relation_check, group_axioms_check, TwistGroup,
};
use twistkit::yoshida::{build_lift_with, lift_to_json, trace_field, LiftOptions, YoshidaLift};
use twistkit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Precondition = 5,
    NotSimilitude = 6,
    Numeric = 7,
    Io = 8,
    Panic = 9,
}

/// Opaque eigen-system.
pub struct TkEigenSystem(EigenSystem);

/// Opaque inner-twist group, with the system it was detected on.
pub struct TkTwistGroup {
    group: TwistGroup,
    system: EigenSystem,
}

/// Opaque Yoshida lift.
pub struct TkLift(YoshidaLift);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TkStatus {
    match e {
        Error::Domain(_) => TkStatus::Domain,
        Error::Parse(_) | Error::Json(_) => TkStatus::Parse,
        Error::NotSimilitude(_) => TkStatus::NotSimilitude,
        Error::Precondition(_) => TkStatus::Precondition,
        Error::Numeric(_) => TkStatus::Numeric,
        Error::Io(_) => TkStatus::Io,
    }
}

struct Fail(TkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TkStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            TkStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(TkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(TkStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn parse_json(text: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(text).map_err(|e| Fail(TkStatus::Parse, format!("parse error: {e}")))
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn tk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn tk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an eigen-system document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out_system` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tk_eigensystem_from_json(json: *const c_char, out_system: *mut *mut TkEigenSystem) -> TkStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        let v = parse_json(read_str(json, "json")?)?;
        let e = load_eigensystem(&v)?;
        *slot = Box::into_raw(Box::new(TkEigenSystem(e)));
        Ok(())
    })
}

/// # Safety
/// `system` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_eigensystem_free(system: *mut TkEigenSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Level, weight and coefficient-field degree.
///
/// # Safety
/// `system` must be a live handle; the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn tk_eigensystem_info(
    system: *const TkEigenSystem,
    out_level: *mut u64,
    out_weight: *mut u64,
    out_degree: *mut usize,
) -> TkStatus {
    guard(|| {
        let e = &deref(system, "system")?.0;
        *out(out_level, "out_level")? = e.level;
        *out(out_weight, "out_weight")? = e.weight;
        *out(out_degree, "out_degree")? = e.field.degree();
        Ok(())
    })
}

/// # Safety
/// `system` must be a live handle; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_eigensystem_to_json(system: *const TkEigenSystem, out_json: *mut *mut c_char) -> TkStatus {
    guard(|| {
        let e = &deref(system, "system")?.0;
        *out(out_json, "out_json")? = to_c_string(e.to_json().to_string());
        Ok(())
    })
}

/// Detects the inner twists of `system` over primes up to `prime_bound`,
/// with characters of modulus dividing the level (or its square if `wide`).
///
/// # Safety
/// `system` must be a live handle; `out_group` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_twists_detect(
    system: *const TkEigenSystem,
    prime_bound: u64,
    wide: bool,
    out_group: *mut *mut TkTwistGroup,
) -> TkStatus {
    guard(|| {
        let e = &deref(system, "system")?.0;
        let slot = out(out_group, "out_group")?;
        let group = detect_inner_twists(e, &candidate_moduli(e.level, wide), prime_bound)?;
        *slot = Box::into_raw(Box::new(TkTwistGroup { group, system: e.clone() }));
        Ok(())
    })
}

/// # Safety
/// `group` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_twist_group_free(group: *mut TkTwistGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Number of detected twists (identity included) and of inconclusive
/// automorphisms.
///
/// # Safety
/// `group` must be a live handle; the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn tk_twist_group_order(
    group: *const TkTwistGroup,
    out_order: *mut usize,
    out_inconclusive: *mut usize,
) -> TkStatus {
    guard(|| {
        let g = deref(group, "group")?;
        *out(out_order, "out_order")? = g.group.order();
        *out(out_inconclusive, "out_inconclusive")? = g.group.inconclusive.len();
        Ok(())
    })
}

/// Whether group closure, the cocycle identity and the determinant
/// relation all hold.
///
/// # Safety
/// `group` must be a live handle; `out_ok` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_twist_group_identities(group: *const TkTwistGroup, out_ok: *mut bool) -> TkStatus {
    guard(|| {
        let g = deref(group, "group")?;
        *out(out_ok, "out_ok")? =
            group_axioms_check(&g.group) && cocycle_check(&g.group) && determinant_relation_check(&g.system, &g.group);
        Ok(())
    })
}

/// Conductor of the character attached to the `index`-th twist, in
/// canonical order.
///
/// # Safety
/// `group` must be a live handle; `out_conductor` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_twist_group_conductor(
    group: *const TkTwistGroup,
    index: usize,
    out_conductor: *mut u64,
) -> TkStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let slot = out(out_conductor, "out_conductor")?;
        let t = g.group.elements.get(index).ok_or_else(|| {
            Fail(TkStatus::Domain, format!("index {index} out of range for a group of order {}", g.group.order()))
        })?;
        *slot = t.character.conductor();
        Ok(())
    })
}

/// Builds the spin polynomials of the lift of `(left, right)` up to
/// `prime_bound`. `relaxed_weights` accepts both weights even and `>= 2`.
///
/// # Safety
/// `left` and `right` must be live handles; `out_lift` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_lift_build(
    left: *const TkEigenSystem,
    right: *const TkEigenSystem,
    prime_bound: u64,
    relaxed_weights: bool,
    out_lift: *mut *mut TkLift,
) -> TkStatus {
    guard(|| {
        let l = &deref(left, "left")?.0;
        let r = &deref(right, "right")?.0;
        let slot = out(out_lift, "out_lift")?;
        let opts = LiftOptions { relaxed_weights, discrete_series_prime: None };
        *slot = Box::into_raw(Box::new(TkLift(build_lift_with(l, r, prime_bound, opts)?)));
        Ok(())
    })
}

/// # Safety
/// `lift` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tk_lift_free(lift: *mut TkLift) {
    if !lift.is_null() {
        drop(Box::from_raw(lift));
    }
}

/// Degrees of the trace field and of the compositum of the two
/// coefficient fields.
///
/// # Safety
/// `lift` must be a live handle; the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn tk_lift_field_degrees(
    lift: *const TkLift,
    out_trace_degree: *mut usize,
    out_compositum_degree: *mut usize,
) -> TkStatus {
    guard(|| {
        let y = &deref(lift, "lift")?.0;
        *out(out_trace_degree, "out_trace_degree")? = trace_field(y, y.prime_bound).degree();
        *out(out_compositum_degree, "out_compositum_degree")? = y.field().degree();
        Ok(())
    })
}

/// # Safety
/// `lift` must be a live handle; `out_json` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_lift_to_json(lift: *const TkLift, out_json: *mut *mut c_char) -> TkStatus {
    guard(|| {
        let y = &deref(lift, "lift")?.0;
        *out(out_json, "out_json")? = to_c_string(lift_to_json(y).to_string());
        Ok(())
    })
}

/// Similitude factor of a `dim x dim` integer matrix given row-major, as a
/// rational string such as `"9"` or `"1/4"`.
///
/// # Safety
/// `entries` must point to `dim * dim` values; `out_factor` valid.
#[no_mangle]
pub unsafe extern "C" fn tk_similitude_factor(entries: *const i64, dim: usize, out_factor: *mut *mut c_char) -> TkStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let slot = out(out_factor, "out_factor")?;
        let flat = std::slice::from_raw_parts(entries, dim * dim);
        let rows: Vec<Vec<i64>> = flat.chunks(dim.max(1)).map(<[i64]>::to_vec).collect();
        let m = RMatrix::from_i64(&rows)?;
        *slot = to_c_string(similitude_factor(&m)?.to_string());
        Ok(())
    })
}

/// Runs the checks on the bundled level-30 and level-100 examples and
/// writes the report as JSON.
///
/// # Safety
/// The out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tk_verify_paper_examples(
    prime_bound: u64,
    out_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let passed = out(out_passed, "out_passed")?;
        let slot = out(out_json, "out_json")?;
        let r = twistkit::cli::paper_examples(prime_bound, twistkit::cli::DEFAULT_PRECISION)?;
        *passed = r.passed();
        *slot = to_c_string(serde_json::to_string(&r).map_err(Error::from)?);
        Ok(())
    })
}
