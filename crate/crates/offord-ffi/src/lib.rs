//! C ABI over the offord library.
//!
//! Conventions: every function returns an OffordStatus; results come back
//! through out pointers. Handles are opaque and freed with their matching
//! free function. On any non-OK status a thread-local message is readable
//! through offord_last_error_message until the next call on that thread.
//! Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use offord::dist::LatticeDistribution;
use offord::entropy::RenyiOrder;
use offord::input::{BuiltProblem, ProblemSpec};
use offord::rational::Rational;

/// Result discipline for every exported function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum OffordStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input could not be parsed or validated.
    InvalidInput = 2,
    /// The inputs are well-formed but outside a theorem's hypotheses.
    Precondition = 3,
    /// A panic was caught at the boundary; state is unchanged.
    Panic = 4,
}

/// Opaque handle to a lattice distribution.
pub struct OffordDist {
    inner: LatticeDistribution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained a NUL byte").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Last error message for this thread, or null when the last call succeeded.
/// The pointer stays valid until the next offord call on the same thread.
#[no_mangle]
pub extern "C" fn offord_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

fn guard<F: FnOnce() -> OffordStatus>(body: F) -> OffordStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic".into());
            OffordStatus::Panic
        }
    }
}

fn fail(status: OffordStatus, message: impl Into<String>) -> OffordStatus {
    set_error(message.into());
    status
}

/// # Safety
/// `text` must be a valid NUL-terminated string pointer.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, OffordStatus> {
    if text.is_null() {
        return Err(OffordStatus::NullArgument);
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| OffordStatus::InvalidInput)
}

unsafe fn dist_ref<'a>(handle: *const OffordDist) -> Result<&'a LatticeDistribution, OffordStatus> {
    handle.as_ref().map(|h| &h.inner).ok_or(OffordStatus::NullArgument)
}

unsafe fn dist_slice(
    handles: *const *const OffordDist,
    len: usize,
) -> Result<Vec<LatticeDistribution>, OffordStatus> {
    if handles.is_null() || len == 0 {
        return Err(OffordStatus::NullArgument);
    }
    let raw = std::slice::from_raw_parts(handles, len);
    raw.iter()
        .map(|&h| dist_ref(h).cloned())
        .collect()
}

fn order_from(alpha: f64) -> Result<RenyiOrder, String> {
    RenyiOrder::new(alpha).map_err(|e| e.to_string())
}

/// Parses a problem spec (a family object or a weighted-sum object) and
/// builds the realized lattice distribution. For weighted sums the law is
/// that of scale·(a·X); the exact scale is written to `out_scale` when it is
/// non-null (1 for plain families).
///
/// # Safety
/// `spec_json` must be NUL-terminated; `out_dist` must be a valid pointer.
/// The returned handle must be released with offord_dist_free.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_from_json(
    spec_json: *const c_char,
    out_dist: *mut *mut OffordDist,
    out_scale: *mut i64,
) -> OffordStatus {
    guard(|| {
        if out_dist.is_null() {
            return fail(OffordStatus::NullArgument, "out_dist is null");
        }
        let text = match read_str(spec_json) {
            Ok(t) => t,
            Err(s) => return fail(s, "spec_json is null or not UTF-8"),
        };
        let spec = match ProblemSpec::parse(text) {
            Ok(s) => s,
            Err(e) => return fail(OffordStatus::InvalidInput, e.to_string()),
        };
        let built = match spec.build() {
            Ok(b) => b,
            Err(e) => return fail(OffordStatus::InvalidInput, e.to_string()),
        };
        let (dist, scale) = match built {
            BuiltProblem::Distribution(d) => (d, 1),
            BuiltProblem::WeightedSum(sum) => match sum.evaluate() {
                Ok(r) => (r.distribution, r.scale),
                Err(e) => return fail(OffordStatus::InvalidInput, e.to_string()),
            },
        };
        if !out_scale.is_null() {
            *out_scale = scale;
        }
        *out_dist = Box::into_raw(Box::new(OffordDist { inner: dist }));
        OffordStatus::Ok
    })
}

/// Releases a distribution handle. Null is a no-op.
///
/// # Safety
/// `dist` must be a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_free(dist: *mut OffordDist) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// Convolves two distributions into a new handle.
///
/// # Safety
/// All pointers must be valid; the result must be freed by the caller.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_convolve(
    a: *const OffordDist,
    b: *const OffordDist,
    out_dist: *mut *mut OffordDist,
) -> OffordStatus {
    guard(|| {
        if out_dist.is_null() {
            return fail(OffordStatus::NullArgument, "out_dist is null");
        }
        let (da, db) = match (dist_ref(a), dist_ref(b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return fail(OffordStatus::NullArgument, "distribution handle is null"),
        };
        match da.convolve(db) {
            Ok(c) => {
                *out_dist = Box::into_raw(Box::new(OffordDist { inner: c }));
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Largest atom M(X) = sup_x P(X = x).
///
/// # Safety
/// `dist` and `out_value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_max_prob(
    dist: *const OffordDist,
    out_value: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_value.is_null() {
            return fail(OffordStatus::NullArgument, "out_value is null");
        }
        match dist_ref(dist) {
            Ok(d) => {
                *out_value = d.max_prob();
                OffordStatus::Ok
            }
            Err(s) => fail(s, "dist handle is null"),
        }
    })
}

/// Mean and variance on the handle's own lattice.
///
/// # Safety
/// `dist` must be valid; each out pointer may be null to skip that moment.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_moments(
    dist: *const OffordDist,
    out_mean: *mut f64,
    out_variance: *mut f64,
) -> OffordStatus {
    guard(|| match dist_ref(dist) {
        Ok(d) => {
            let m = d.moments();
            if !out_mean.is_null() {
                *out_mean = m.mean;
            }
            if !out_variance.is_null() {
                *out_variance = m.variance;
            }
            OffordStatus::Ok
        }
        Err(s) => fail(s, "dist handle is null"),
    })
}

/// Whether the pmf is log-concave with contiguous support (1) or not (0).
///
/// # Safety
/// `dist` and `out_flag` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offord_dist_is_log_concave(
    dist: *const OffordDist,
    out_flag: *mut i32,
) -> OffordStatus {
    guard(|| {
        if out_flag.is_null() {
            return fail(OffordStatus::NullArgument, "out_flag is null");
        }
        match dist_ref(dist) {
            Ok(d) => {
                *out_flag = i32::from(d.is_log_concave());
                OffordStatus::Ok
            }
            Err(s) => fail(s, "dist handle is null"),
        }
    })
}

/// Rényi entropy H_alpha; alpha may be 0, 1 (Shannon), any positive value,
/// or INFINITY for min-entropy.
///
/// # Safety
/// `dist` and `out_value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offord_renyi_entropy(
    dist: *const OffordDist,
    alpha: f64,
    out_value: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_value.is_null() {
            return fail(OffordStatus::NullArgument, "out_value is null");
        }
        let d = match dist_ref(dist) {
            Ok(d) => d,
            Err(s) => return fail(s, "dist handle is null"),
        };
        match order_from(alpha) {
            Ok(order) => {
                *out_value = offord::entropy::renyi_entropy(d, order);
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e),
        }
    })
}

/// Entropy power N_alpha = exp(2 H_alpha).
///
/// # Safety
/// `dist` and `out_value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offord_entropy_power(
    dist: *const OffordDist,
    alpha: f64,
    out_value: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_value.is_null() {
            return fail(OffordStatus::NullArgument, "out_value is null");
        }
        let d = match dist_ref(dist) {
            Ok(d) => d,
            Err(s) => return fail(s, "dist handle is null"),
        };
        match order_from(alpha) {
            Ok(order) => {
                *out_value = offord::entropy::entropy_power(d, order);
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e),
        }
    })
}

/// Largest-atom bound 1/sqrt(1 + c Sum Var) over the component list, with
/// the symmetric constant chosen automatically.
///
/// # Safety
/// `components` must point to `n` valid handles; `out_bound` must be valid.
#[no_mangle]
pub unsafe extern "C" fn offord_bound_concentration(
    components: *const *const OffordDist,
    n: usize,
    out_bound: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_bound.is_null() {
            return fail(OffordStatus::NullArgument, "out_bound is null");
        }
        let dists = match dist_slice(components, n) {
            Ok(d) => d,
            Err(s) => return fail(s, "components must be n non-null handles"),
        };
        let symmetric = offord::bounds::all_symmetric(&dists);
        match offord::bounds::bound_concentration(&dists, symmetric) {
            Ok(r) => {
                *out_bound = r.bound;
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::Precondition, e.to_string()),
        }
    })
}

/// Entropy-power lower bound 1 + c Sum Var at the given order.
///
/// # Safety
/// `components` must point to `n` valid handles; `out_bound` must be valid.
#[no_mangle]
pub unsafe extern "C" fn offord_bound_entropy_power(
    components: *const *const OffordDist,
    n: usize,
    alpha: f64,
    out_bound: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_bound.is_null() {
            return fail(OffordStatus::NullArgument, "out_bound is null");
        }
        let dists = match dist_slice(components, n) {
            Ok(d) => d,
            Err(s) => return fail(s, "components must be n non-null handles"),
        };
        let order = match order_from(alpha) {
            Ok(o) => o,
            Err(e) => return fail(OffordStatus::InvalidInput, e),
        };
        let symmetric = offord::bounds::all_symmetric(&dists);
        match offord::bounds::bound_entropy_power(&dists, order, symmetric) {
            Ok(r) => {
                *out_bound = r.bound;
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::Precondition, e.to_string()),
        }
    })
}

/// Progression bound l/sqrt(1 + c Sum Var + c (l^2-1)/12), clamped to 1.
///
/// # Safety
/// `components` must point to `n` valid handles; `out_bound` must be valid.
#[no_mangle]
pub unsafe extern "C" fn offord_bound_ap(
    components: *const *const OffordDist,
    n: usize,
    length: u32,
    out_bound: *mut f64,
) -> OffordStatus {
    guard(|| {
        if out_bound.is_null() {
            return fail(OffordStatus::NullArgument, "out_bound is null");
        }
        let dists = match dist_slice(components, n) {
            Ok(d) => d,
            Err(s) => return fail(s, "components must be n non-null handles"),
        };
        let symmetric = offord::bounds::all_symmetric(&dists);
        match offord::bounds::bound_ap(&dists, length, symmetric) {
            Ok(r) => {
                *out_bound = r.bound;
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::Precondition, e.to_string()),
        }
    })
}

/// Exact progression supremum sup_x P(X in {x + (m_num/m_den) j, j=1..l}).
/// The achieving anchor is written as the exact rational
/// out_anchor_num/out_anchor_den when both pointers are non-null.
///
/// # Safety
/// `dist` and `out_value` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn offord_ap_sup_probability(
    dist: *const OffordDist,
    length: u32,
    m_num: i64,
    m_den: i64,
    out_value: *mut f64,
    out_anchor_num: *mut i64,
    out_anchor_den: *mut i64,
) -> OffordStatus {
    guard(|| {
        if out_value.is_null() {
            return fail(OffordStatus::NullArgument, "out_value is null");
        }
        let d = match dist_ref(dist) {
            Ok(d) => d,
            Err(s) => return fail(s, "dist handle is null"),
        };
        if m_den == 0 {
            return fail(OffordStatus::InvalidInput, "step denominator is zero");
        }
        match offord::verify::ap_sup_probability(d, length, Rational::new(m_num, m_den)) {
            Ok((value, anchor)) => {
                *out_value = value;
                if !out_anchor_num.is_null() && !out_anchor_den.is_null() {
                    *out_anchor_num = *anchor.numer();
                    *out_anchor_den = *anchor.denom();
                }
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Exhaustive worst-case search over nonzero integer coefficient vectors
/// with |a_i| <= coefficient_box. The maximizing vector is written to
/// `out_witness`, which must have room for `n` entries.
///
/// # Safety
/// `components` must point to `n` valid handles; `out_value` and
/// `out_witness` must be valid for writes (`out_witness` for `n` writes).
#[no_mangle]
pub unsafe extern "C" fn offord_worst_case_search(
    components: *const *const OffordDist,
    n: usize,
    coefficient_box: i64,
    out_value: *mut f64,
    out_witness: *mut i64,
) -> OffordStatus {
    guard(|| {
        if out_value.is_null() || out_witness.is_null() {
            return fail(OffordStatus::NullArgument, "out pointer is null");
        }
        let dists = match dist_slice(components, n) {
            Ok(d) => d,
            Err(s) => return fail(s, "components must be n non-null handles"),
        };
        match offord::verify::worst_case_search(
            &dists,
            coefficient_box,
            offord::dist::DEFAULT_WINDOW_CAP,
        ) {
            Ok((value, witness, _)) => {
                *out_value = value;
                std::slice::from_raw_parts_mut(out_witness, n).copy_from_slice(&witness);
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Runs the certification sweep described by a JSON config ("{}" for the
/// defaults) and returns the full report as a JSON string. The number of
/// failing cases is written to `out_failures` when it is non-null. The
/// returned string must be released with offord_string_free.
///
/// # Safety
/// `config_json` must be NUL-terminated; `out_report_json` must be valid.
#[no_mangle]
pub unsafe extern "C" fn offord_verify_json(
    config_json: *const c_char,
    out_report_json: *mut *mut c_char,
    out_failures: *mut u64,
) -> OffordStatus {
    guard(|| {
        if out_report_json.is_null() {
            return fail(OffordStatus::NullArgument, "out_report_json is null");
        }
        let text = match read_str(config_json) {
            Ok(t) => t,
            Err(s) => return fail(s, "config_json is null or not UTF-8"),
        };
        let cfg: offord::verify::SweepConfig = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return fail(OffordStatus::InvalidInput, format!("config: {e}")),
        };
        match offord::verify::run_suite(&cfg) {
            Ok(report) => {
                if !out_failures.is_null() {
                    *out_failures = report.failures;
                }
                let json = report.to_json_string();
                let stored = CString::new(json)
                    .expect("report JSON never contains NUL");
                *out_report_json = stored.into_raw();
                OffordStatus::Ok
            }
            Err(e) => fail(OffordStatus::InvalidInput, e.to_string()),
        }
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must have been returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn offord_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
