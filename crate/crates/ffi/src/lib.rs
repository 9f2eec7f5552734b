//! C ABI over `dowling-core`.
//!
//! Every function returns a [`DowlingStatus`]. On failure the message is
//! available from [`dowling_last_error`] on the same thread. Handles are
//! opaque and owned by the caller; strings returned through out-pointers are
//! released with [`dowling_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use dowling_core::dowling::DEFAULT_MAX_ELEMENTS;
use dowling_core::io::{parse_action, poset_json};
use dowling_core::moebius::sphere_count_formula;
use dowling_core::topology::{proper_part_homology, DEFAULT_MAX_FACES};
use dowling_core::{
    build_dowling, build_subposet, count_blooming, decreasing_chains, moebius, presets, verify_el,
    DowlingError, DowlingPoset, EdgeLabels, GroupAction, Labeling, TopologyError,
};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DowlingStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    SizeLimit = 5,
    NotBounded = 6,
    Internal = 7,
}

/// Edge labeling used by the chain and EL queries.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DowlingLabeling {
    Lambda = 0,
    Mu = 1,
}

impl From<DowlingLabeling> for Labeling {
    fn from(l: DowlingLabeling) -> Self {
        match l {
            DowlingLabeling::Lambda => Labeling::Lambda,
            DowlingLabeling::Mu => Labeling::Mu,
        }
    }
}

/// A finite group acting on a finite set.
pub struct DowlingAction(Arc<GroupAction>);

/// A generalized Dowling poset or one of its subposets, possibly bounded.
pub struct DowlingPosetHandle(DowlingPoset);

struct Failure(DowlingStatus, String);

impl Failure {
    fn new(status: DowlingStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

impl From<DowlingError> for Failure {
    fn from(e: DowlingError) -> Self {
        let status = match e {
            DowlingError::SizeLimitExceeded { .. } => DowlingStatus::SizeLimit,
            _ => DowlingStatus::InvalidArgument,
        };
        Failure::new(status, e)
    }
}

impl From<TopologyError> for Failure {
    fn from(e: TopologyError) -> Self {
        let status = match e {
            TopologyError::SizeLimitExceeded { .. } => DowlingStatus::SizeLimit,
            TopologyError::NotBounded => DowlingStatus::NotBounded,
        };
        Failure::new(status, e)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DowlingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DowlingStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DowlingStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(DowlingStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(DowlingStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(DowlingStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(DowlingStatus::NullPointer, "null out-pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(DowlingStatus::Internal, e))?;
    put(out, c.into_raw())
}

fn labels(p: &DowlingPoset, l: DowlingLabeling) -> Result<EdgeLabels, Failure> {
    if !p.is_bounded() {
        return Err(Failure::new(DowlingStatus::NotBounded, "poset is not bounded"));
    }
    EdgeLabels::for_poset(p, l.into()).map_err(|e| Failure::new(DowlingStatus::Internal, e))
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn dowling_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a group action from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_action_from_json(
    json: *const c_char,
    out: *mut *mut DowlingAction,
) -> DowlingStatus {
    guard(|| {
        let a = parse_action(str_arg(json)?).map_err(|e| Failure::new(DowlingStatus::ParseError, e))?;
        put(out, Box::into_raw(Box::new(DowlingAction(Arc::new(a)))))
    })
}

/// Look up a built-in action such as `z2-swap` or `z3-trivial-2`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_action_preset(
    name: *const c_char,
    out: *mut *mut DowlingAction,
) -> DowlingStatus {
    guard(|| {
        let name = str_arg(name)?;
        let a = presets::by_name(name)
            .ok_or_else(|| Failure::new(DowlingStatus::InvalidArgument, format!("unknown preset {name}")))?;
        put(out, Box::into_raw(Box::new(DowlingAction(Arc::new(a)))))
    })
}

/// # Safety
/// `action` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dowling_action_free(action: *mut DowlingAction) {
    if !action.is_null() {
        drop(Box::from_raw(action));
    }
}

/// Build `D_n(G,S)`, or the subposet for the colors `t[0..t_len]` when
/// `use_t` is set. `max_elements = 0` selects the default cap.
///
/// # Safety
/// `action` must be a live handle, `t` must point to `t_len` colors when
/// `use_t` is set, and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_build(
    action: *const DowlingAction,
    n: usize,
    use_t: bool,
    t: *const usize,
    t_len: usize,
    max_elements: usize,
    out: *mut *mut DowlingPosetHandle,
) -> DowlingStatus {
    guard(|| {
        let a = handle(action)?.0.clone();
        let cap = if max_elements == 0 { DEFAULT_MAX_ELEMENTS } else { max_elements };
        let p = if use_t {
            let colors: &[usize] = if t_len == 0 {
                &[]
            } else if t.is_null() {
                return Err(Failure::new(DowlingStatus::NullPointer, "null color list"));
            } else {
                std::slice::from_raw_parts(t, t_len)
            };
            if let Some(&c) = colors.iter().find(|&&c| c >= a.set_size()) {
                return Err(Failure::new(DowlingStatus::InvalidArgument, format!("color {c} out of range")));
            }
            build_subposet(n, a, colors, cap)?
        } else {
            build_dowling(n, a, cap)?
        };
        put(out, Box::into_raw(Box::new(DowlingPosetHandle(p))))
    })
}

/// New handle for the poset with a top element adjoined.
///
/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_adjoin_top(
    poset: *const DowlingPosetHandle,
    out: *mut *mut DowlingPosetHandle,
) -> DowlingStatus {
    guard(|| {
        let b = handle(poset)?.0.adjoin_top()?;
        put(out, Box::into_raw(Box::new(DowlingPosetHandle(b))))
    })
}

/// # Safety
/// `poset` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_free(poset: *mut DowlingPosetHandle) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_len(poset: *const DowlingPosetHandle, out: *mut usize) -> DowlingStatus {
    guard(|| put(out, handle(poset)?.0.poset().len()))
}

/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_rank(poset: *const DowlingPosetHandle, out: *mut usize) -> DowlingStatus {
    guard(|| put(out, handle(poset)?.0.poset().rank()))
}

/// Check the EL property of a bounded poset. Either out-pointer may be null.
///
/// # Safety
/// `poset` must be a live handle; non-null out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_verify_el(
    poset: *const DowlingPosetHandle,
    labeling: DowlingLabeling,
    passed: *mut bool,
    failing_intervals: *mut usize,
) -> DowlingStatus {
    guard(|| {
        let p = &handle(poset)?.0;
        let r = verify_el(p.poset(), &labels(p, labeling)?)
            .map_err(|e| Failure::new(DowlingStatus::NotBounded, e))?;
        if !passed.is_null() {
            passed.write(r.passed);
        }
        if !failing_intervals.is_null() {
            failing_intervals.write(r.failures.len());
        }
        Ok(())
    })
}

/// Number of maximal chains of a bounded poset with strictly decreasing labels.
///
/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_count_decreasing(
    poset: *const DowlingPosetHandle,
    labeling: DowlingLabeling,
    out: *mut usize,
) -> DowlingStatus {
    guard(|| {
        let p = &handle(poset)?.0;
        let chains = decreasing_chains(p.poset(), &labels(p, labeling)?)
            .map_err(|e| Failure::new(DowlingStatus::NotBounded, e))?;
        put(out, chains.len())
    })
}

/// Möbius value from bottom to top of a bounded poset, as a decimal string.
///
/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_moebius(
    poset: *const DowlingPosetHandle,
    out: *mut *mut c_char,
) -> DowlingStatus {
    guard(|| {
        let p = &handle(poset)?.0;
        let top = p
            .top()
            .ok_or_else(|| Failure::new(DowlingStatus::NotBounded, "poset is not bounded"))?;
        let mu = moebius(p.poset(), p.poset().bottom(), top).map_err(|e| Failure::new(DowlingStatus::Internal, e))?;
        put_string(out, mu.to_string())
    })
}

/// Elements and covers as JSON.
///
/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_to_json(
    poset: *const DowlingPosetHandle,
    out: *mut *mut c_char,
) -> DowlingStatus {
    guard(|| put_string(out, poset_json(&handle(poset)?.0, false).to_string()))
}

/// Reduced homology of the proper part of a bounded poset as JSON with keys
/// `betti`, `betti_minus_one` and `torsion`. `max_faces = 0` selects the
/// default cap.
///
/// # Safety
/// `poset` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_poset_homology_json(
    poset: *const DowlingPosetHandle,
    max_faces: usize,
    out: *mut *mut c_char,
) -> DowlingStatus {
    guard(|| {
        let cap = if max_faces == 0 { DEFAULT_MAX_FACES } else { max_faces };
        let h = proper_part_homology(handle(poset)?.0.poset(), cap)?;
        let torsion: Vec<Vec<String>> = h
            .torsion
            .iter()
            .map(|t| t.iter().map(|v| v.to_string()).collect())
            .collect();
        let json = serde_json::json!({
            "betti": h.reduced_betti,
            "betti_minus_one": h.betti_minus_one,
            "torsion": torsion,
        });
        put_string(out, json.to_string())
    })
}

/// Predicted number of spheres for the bounded Dowling poset, as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_sphere_count(
    n: usize,
    group_order: usize,
    set_size: usize,
    out: *mut *mut c_char,
) -> DowlingStatus {
    guard(|| {
        let c = sphere_count_formula(n, group_order, set_size)
            .map_err(|e| Failure::new(DowlingStatus::InvalidArgument, e))?;
        put_string(out, c.to_string())
    })
}

/// Number of `(q,r)`-blooming trees on `nodes` labels, as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dowling_count_blooming(
    nodes: usize,
    q: usize,
    r: usize,
    out: *mut *mut c_char,
) -> DowlingStatus {
    guard(|| put_string(out, count_blooming(nodes, q, r).to_string()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dowling_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
