//! C ABI for `eorder`.
//!
//! Objects cross the boundary as opaque handles (`EoPrefix`, `EoPaired`,
//! `EoEnumerator`) created by `*_new`/`*_parse`/`*_make` functions and
//! released with the matching `*_free`. Every fallible call returns an
//! [`EoStatus`]; on failure, [`eo_last_error`] describes the cause on the
//! calling thread. Output parameters are written only on success.
//!
//! Panics never cross the boundary: they are caught and reported as
//! [`EoStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eorder::algebra::transport;
use eorder::enumerators::{parse_spec, take_prefix, Enumerator};
use eorder::extraction::{decide_membership, make_paired, predecessor, Membership, PairedListings};
use eorder::format::{parse_paired, parse_prefix};
use eorder::oracle::run_property;
use eorder::{equiv_eo, inversions, leq_eo, standardize, Error, Pattern, PrefixListing, SetSample};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EoStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed text, a zero or repeated value, a bad pattern or sample.
    InvalidInput = 2,
    LengthMismatch = 3,
    ValueAbsent = 4,
    ValueSetMismatch = 5,
    /// The operation's precondition does not hold (e.g. non-reducible pair).
    Precondition = 6,
    InvalidPairing = 7,
    /// The prefix is too short to answer.
    InsufficientPrefix = 8,
    UnknownName = 9,
    OutOfRange = 10,
    /// A caller-supplied buffer cannot hold the result.
    BufferTooSmall = 11,
    Panic = 12,
}

/// Three-valued membership answer.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EoMembership {
    In = 0,
    Out = 1,
    Insufficient = 2,
}

/// A finite listing prefix.
pub struct EoPrefix(PrefixListing);

/// A rank-aligned pair of listings with its extra element.
pub struct EoPaired(PairedListings);

/// A stateful enumerator; successive takes continue where the last stopped.
pub struct EoEnumerator(Box<dyn Enumerator>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> EoStatus {
    match err {
        Error::LengthMismatch { .. } => EoStatus::LengthMismatch,
        Error::ValueAbsent(_) => EoStatus::ValueAbsent,
        Error::ValueSetMismatch => EoStatus::ValueSetMismatch,
        Error::PreconditionViolated(_) | Error::ChainInvariantViolated(_) => EoStatus::Precondition,
        Error::InvalidPairing(_) => EoStatus::InvalidPairing,
        Error::InsufficientPrefix(_) => EoStatus::InsufficientPrefix,
        Error::UnknownModel(_) | Error::UnknownProperty(_) => EoStatus::UnknownName,
        Error::TooLarge { .. } | Error::TooSmall { .. } | Error::BadBound { .. } => {
            EoStatus::OutOfRange
        }
        _ => EoStatus::InvalidInput,
    }
}

fn fail(status: EoStatus, msg: impl Into<String>) -> EoStatus {
    set_error(msg.into());
    status
}

/// Runs `body`, converting library errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), EoStatus>) -> EoStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            EoStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(EoStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, EoStatus>;
}

impl<T> OrStatus<T> for eorder::Result<T> {
    fn or_status(self) -> Result<T, EoStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, EoStatus> {
    p.as_ref()
        .ok_or_else(|| fail(EoStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, EoStatus> {
    p.as_mut()
        .ok_or_else(|| fail(EoStatus::NullPointer, format!("{what} is null")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], EoStatus> {
    if len == 0 {
        Ok(&[])
    } else {
        Ok(std::slice::from_raw_parts(deref(p, what)?, len))
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, EoStatus> {
    if p.is_null() {
        return Err(fail(EoStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(EoStatus::InvalidInput, format!("{what} is not UTF-8")))
}

/// Message for the last failed call on this thread, or null after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn eo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

// --- prefixes ---------------------------------------------------------------

/// Builds a prefix from `len` distinct naturals (each ≥ 1).
///
/// # Safety
/// `values` must point to `len` readable values (or be null with `len == 0`);
/// `out_prefix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_prefix_new(
    values: *const u64,
    len: usize,
    out_prefix: *mut *mut EoPrefix,
) -> EoStatus {
    guard(|| {
        let dst = out(out_prefix, "out_prefix")?;
        let p = PrefixListing::new(slice(values, len, "values")?.to_vec()).or_status()?;
        *dst = Box::into_raw(Box::new(EoPrefix(p)));
        Ok(())
    })
}

/// Parses a prefix from text: space-separated naturals or a JSON array.
///
/// # Safety
/// `text_in` must be a NUL-terminated string; `out_prefix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_prefix_parse(
    text_in: *const c_char,
    out_prefix: *mut *mut EoPrefix,
) -> EoStatus {
    guard(|| {
        let dst = out(out_prefix, "out_prefix")?;
        let p = parse_prefix(text(text_in, "text")?).or_status()?;
        *dst = Box::into_raw(Box::new(EoPrefix(p)));
        Ok(())
    })
}

/// Releases a prefix. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eo_prefix_free(p: *mut EoPrefix) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of values in the prefix; 0 for null.
///
/// # Safety
/// `p` must be null or a live prefix.
#[no_mangle]
pub unsafe extern "C" fn eo_prefix_len(p: *const EoPrefix) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Borrowed pointer to the prefix's values, valid while `p` lives.
///
/// # Safety
/// `p` must be null or a live prefix.
#[no_mangle]
pub unsafe extern "C" fn eo_prefix_values(p: *const EoPrefix) -> *const u64 {
    p.as_ref().map_or(ptr::null(), |p| p.0.values().as_ptr())
}

/// Decides `f ≤eo g`. On failure of the relation, `*out_i`/`*out_j` receive the
/// least violating position pair (1-based); otherwise both are 0.
///
/// # Safety
/// `f`, `g` must be live prefixes; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_leq(
    f: *const EoPrefix,
    g: *const EoPrefix,
    out_holds: *mut bool,
    out_i: *mut usize,
    out_j: *mut usize,
) -> EoStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        let (h, i, j) = (
            out(out_holds, "out_holds")?,
            out(out_i, "out_i")?,
            out(out_j, "out_j")?,
        );
        let verdict = leq_eo(&f.0, &g.0).or_status()?;
        let (vi, vj) = verdict.failure().unwrap_or((0, 0));
        (*h, *i, *j) = (verdict.holds(), vi, vj);
        Ok(())
    })
}

/// Decides `f ≡eo g`.
///
/// # Safety
/// `f`, `g` must be live prefixes; `out_equiv` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_equiv(
    f: *const EoPrefix,
    g: *const EoPrefix,
    out_equiv: *mut bool,
) -> EoStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        let dst = out(out_equiv, "out_equiv")?;
        *dst = equiv_eo(&f.0, &g.0).or_status()?;
        Ok(())
    })
}

/// Writes the prefix's pattern (1-based ranks) into `ranks[0..len]`.
///
/// # Safety
/// `p` must be a live prefix; `ranks` must hold `capacity` writable entries.
#[no_mangle]
pub unsafe extern "C" fn eo_standardize(
    p: *const EoPrefix,
    ranks: *mut usize,
    capacity: usize,
) -> EoStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let pattern = standardize(&p.0);
        if pattern.len() > capacity {
            return Err(fail(
                EoStatus::BufferTooSmall,
                format!("need {} entries, have {capacity}", pattern.len()),
            ));
        }
        if !pattern.is_empty() {
            let dst = std::slice::from_raw_parts_mut(out(ranks, "ranks")?, pattern.len());
            dst.copy_from_slice(pattern.ranks());
        }
        Ok(())
    })
}

/// Number of inverted position pairs.
///
/// # Safety
/// `p` must be a live prefix; `out_count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_inversion_count(p: *const EoPrefix, out_count: *mut usize) -> EoStatus {
    guard(|| {
        let p = deref(p, "p")?;
        *out(out_count, "out_count")? = inversions(&p.0).len();
        Ok(())
    })
}

/// Position `i` of the result holds `g'(h'^{-1}(h(i)))`.
///
/// # Safety
/// All three inputs must be live prefixes; `out_prefix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_transport(
    h: *const EoPrefix,
    h_prime: *const EoPrefix,
    g_prime: *const EoPrefix,
    out_prefix: *mut *mut EoPrefix,
) -> EoStatus {
    guard(|| {
        let (h, hp, gp) = (
            deref(h, "h")?,
            deref(h_prime, "h_prime")?,
            deref(g_prime, "g_prime")?,
        );
        let dst = out(out_prefix, "out_prefix")?;
        let p = transport(&h.0, &hp.0, &gp.0).or_status()?;
        *dst = Box::into_raw(Box::new(EoPrefix(p)));
        Ok(())
    })
}

// --- enumerators ------------------------------------------------------------

/// Builds an enumerator from a spec such as `even`, `nminus:3`, `asc:1,5,9`
/// or `halt:collatz`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out_enumerator` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_enumerator_parse(
    spec: *const c_char,
    out_enumerator: *mut *mut EoEnumerator,
) -> EoStatus {
    guard(|| {
        let dst = out(out_enumerator, "out_enumerator")?;
        let e = parse_spec(text(spec, "spec")?).or_status()?;
        *dst = Box::into_raw(Box::new(EoEnumerator(e)));
        Ok(())
    })
}

/// Takes up to `n` further values within `budget` scheduling rounds in total.
///
/// # Safety
/// `e` must be a live enumerator; `out_prefix` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_enumerator_take(
    e: *mut EoEnumerator,
    n: usize,
    budget: u64,
    out_prefix: *mut *mut EoPrefix,
) -> EoStatus {
    guard(|| {
        let e = out(e, "e")?;
        let dst = out(out_prefix, "out_prefix")?;
        let p = take_prefix(e.0.as_mut(), n, budget);
        *dst = Box::into_raw(Box::new(EoPrefix(p)));
        Ok(())
    })
}

/// Releases an enumerator. Null is ignored.
///
/// # Safety
/// `e` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eo_enumerator_free(e: *mut EoEnumerator) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

// --- paired listings ---------------------------------------------------------

/// Builds the aligned pair for sample `elements` (all ≤ `bound`), extra
/// element `m` and a pattern of length `elements_len` starting with rank 1.
///
/// # Safety
/// `elements` and `pattern` must point to readable arrays of the given
/// lengths; `out_paired` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_paired_make(
    elements: *const u64,
    elements_len: usize,
    bound: u64,
    m: u64,
    pattern: *const usize,
    pattern_len: usize,
    out_paired: *mut *mut EoPaired,
) -> EoStatus {
    guard(|| {
        let dst = out(out_paired, "out_paired")?;
        let sample = SetSample::new(
            slice(elements, elements_len, "elements")?.iter().copied(),
            bound,
        )
        .or_status()?;
        let pattern = Pattern::new(slice(pattern, pattern_len, "pattern")?.to_vec()).or_status()?;
        let pair = make_paired(&sample, m, &pattern).or_status()?;
        *dst = Box::into_raw(Box::new(EoPaired(pair)));
        Ok(())
    })
}

/// Parses a pair from text (`f` line, `g` line, `m=<nat>`) or JSON
/// `{"f":[..],"g":[..],"m":..}`, validating every invariant.
///
/// # Safety
/// `text_in` must be a NUL-terminated string; `out_paired` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_paired_parse(
    text_in: *const c_char,
    out_paired: *mut *mut EoPaired,
) -> EoStatus {
    guard(|| {
        let dst = out(out_paired, "out_paired")?;
        let pair = parse_paired(text(text_in, "text")?).or_status()?;
        *dst = Box::into_raw(Box::new(EoPaired(pair)));
        Ok(())
    })
}

/// Releases a pair. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eo_paired_free(p: *mut EoPaired) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The next smaller element of `A ∪ {m}` below `a`.
///
/// # Safety
/// `p` must be a live pair; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_predecessor(
    p: *const EoPaired,
    a: u64,
    out_value: *mut u64,
) -> EoStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let dst = out(out_value, "out_value")?;
        *dst = predecessor(&p.0, a).or_status()?;
        Ok(())
    })
}

/// Decides whether `x` belongs to `A`. An insufficient prefix is reported
/// through `*out_result`, not as an error.
///
/// # Safety
/// `p` must be a live pair; `out_result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_decide(
    p: *const EoPaired,
    x: u64,
    out_result: *mut EoMembership,
) -> EoStatus {
    guard(|| {
        let p = deref(p, "p")?;
        let dst = out(out_result, "out_result")?;
        *dst = match decide_membership(&p.0, x).or_status()?.result {
            Membership::InA => EoMembership::In,
            Membership::NotInA => EoMembership::Out,
            Membership::InsufficientPrefix => EoMembership::Insufficient,
        };
        Ok(())
    })
}

// --- oracle -----------------------------------------------------------------

/// Runs one exhaustive property check by id (e.g. `"lemma-2-8"`) at size `n`.
///
/// # Safety
/// `id` must be a NUL-terminated string; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn eo_verify_property(
    id: *const c_char,
    n: usize,
    out_pass: *mut bool,
    out_instances: *mut u64,
) -> EoStatus {
    guard(|| {
        let id = text(id, "id")?;
        let (pass, instances) = (
            out(out_pass, "out_pass")?,
            out(out_instances, "out_instances")?,
        );
        let report = run_property(id, n).or_status()?;
        (*pass, *instances) = (report.pass(), report.instances);
        Ok(())
    })
}
