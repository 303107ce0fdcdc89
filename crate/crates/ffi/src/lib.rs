//! C ABI for the hamfvs reduction compiler.
//!
//! Instances and reductions are opaque handles created and freed by this
//! library. Every fallible call returns a [`HamfvsStatus`]; the message of the
//! most recent failure on the calling thread is available from
//! [`hamfvs_last_error`]. Strings returned by the library must be released
//! with [`hamfvs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hamfvs::gadgets::{build_gadget, certify_gadget, GadgetKind};
use hamfvs::graph::Instance;
use hamfvs::io::{parse_graph, trace_from_json, trace_to_json, write_graph};
use hamfvs::oracle::branch::{fvs_branch_reduce, Budget};
use hamfvs::oracle::fvs::{fvs_exact_exhaustive, EXHAUSTIVE_LIMIT};
use hamfvs::pipeline::{compact_instance, run_pipeline, verify_trace, PipelineResult, Target};
use hamfvs::{Error, Result};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamfvsStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    InvalidArgument = 1,
    Format = 2,
    Precondition = 3,
    Certification = 4,
    Undecided = 5,
}

/// An FVS instance: graph, budget and optional Hamiltonian cycle.
pub struct HamfvsInstance(Instance);

/// Output of a reduction: the reduced instance and its trace.
pub struct HamfvsReduction {
    result: PipelineResult,
    output: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HamfvsStatus {
    match e.exit_code() {
        2 => HamfvsStatus::Format,
        3 => HamfvsStatus::Precondition,
        4 => HamfvsStatus::Certification,
        _ => HamfvsStatus::Undecided,
    }
}

fn report(r: Result<()>) -> HamfvsStatus {
    match r {
        Ok(()) => HamfvsStatus::Ok,
        Err(e) => {
            set_error(e.to_string());
            status_of(&e)
        }
    }
}

fn invalid(msg: &str) -> HamfvsStatus {
    set_error(msg.to_string());
    HamfvsStatus::InvalidArgument
}

unsafe fn str_arg<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null if none. The
/// caller owns the string.
#[no_mangle]
pub extern "C" fn hamfvs_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the graph text format into a new instance.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_instance_parse(text: *const c_char, out: *mut *mut HamfvsInstance) -> HamfvsStatus {
    if out.is_null() {
        return invalid("out is null");
    }
    let Some(text) = str_arg(text) else {
        return invalid("text is null or not UTF-8");
    };
    match parse_graph(text) {
        Ok(inst) => {
            *out = Box::into_raw(Box::new(HamfvsInstance(inst)));
            HamfvsStatus::Ok
        }
        Err(e) => report(Err(e)),
    }
}

/// Frees an instance.
///
/// # Safety
/// `inst` must be null or a handle from [`hamfvs_instance_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_instance_free(inst: *mut HamfvsInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices.
///
/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_instance_order(inst: *const HamfvsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.graph.n())
}

/// Number of edges.
///
/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_instance_size(inst: *const HamfvsInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.graph.m())
}

/// The budget `k`.
///
/// # Safety
/// `inst` must be a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_instance_budget(inst: *const HamfvsInstance) -> u64 {
    inst.as_ref().map_or(0, |i| i.0.k)
}

/// Minimum FVS size. `time_budget_secs <= 0` means no time limit.
///
/// # Safety
/// `inst` must be a live instance handle and `opt` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_solve(inst: *const HamfvsInstance, time_budget_secs: f64, opt: *mut usize) -> HamfvsStatus {
    let (Some(inst), false) = (inst.as_ref(), opt.is_null()) else {
        return invalid("null argument");
    };
    let g = &inst.0.graph;
    let sol = if g.n() <= EXHAUSTIVE_LIMIT && time_budget_secs <= 0.0 {
        fvs_exact_exhaustive(g)
    } else {
        let time = (time_budget_secs > 0.0).then(|| std::time::Duration::from_secs_f64(time_budget_secs));
        fvs_branch_reduce(g, Budget { time, ..Budget::default() })
    };
    match sol {
        Ok(s) => {
            *opt = s.size;
            HamfvsStatus::Ok
        }
        Err(e) => report(Err(e)),
    }
}

/// Runs the reduction to `target` (for example `"4reg-planar-ham"`).
///
/// # Safety
/// `inst` must be a live instance handle, `target` a valid NUL-terminated
/// string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_reduce(
    inst: *const HamfvsInstance,
    target: *const c_char,
    out: *mut *mut HamfvsReduction,
) -> HamfvsStatus {
    let (Some(inst), Some(target), false) = (inst.as_ref(), str_arg(target), out.is_null()) else {
        return invalid("null argument or target not UTF-8");
    };
    let run = || -> Result<HamfvsReduction> {
        let target: Target = target.parse()?;
        let result = run_pipeline(&inst.0, target)?;
        let output = compact_instance(&result.instance)?;
        Ok(HamfvsReduction { result, output })
    };
    match run() {
        Ok(r) => {
            *out = Box::into_raw(Box::new(r));
            HamfvsStatus::Ok
        }
        Err(e) => report(Err(e)),
    }
}

/// Frees a reduction.
///
/// # Safety
/// `red` must be null or a handle from [`hamfvs_reduce`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_reduction_free(red: *mut HamfvsReduction) {
    if !red.is_null() {
        drop(Box::from_raw(red));
    }
}

/// Budget of the reduced instance.
///
/// # Safety
/// `red` must be a live reduction handle.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_reduction_budget(red: *const HamfvsReduction) -> u64 {
    red.as_ref().map_or(0, |r| r.output.k)
}

/// Reduced graph in the text format (with budget and witness lines).
///
/// # Safety
/// `red` must be a live reduction handle. Free the result with
/// [`hamfvs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hamfvs_reduction_graph(red: *const HamfvsReduction) -> *mut c_char {
    red.as_ref().map_or(ptr::null_mut(), |r| owned(write_graph(&r.output)))
}

/// Reduction trace as JSON.
///
/// # Safety
/// `red` must be a live reduction handle. Free the result with
/// [`hamfvs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hamfvs_reduction_trace(red: *const HamfvsReduction) -> *mut c_char {
    red.as_ref().map_or(ptr::null_mut(), |r| owned(trace_to_json(&r.result.trace)))
}

/// Replays a trace against an output graph and re-checks all certificates.
///
/// # Safety
/// Both arguments must be valid NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn hamfvs_verify(graph_text: *const c_char, trace_json: *const c_char) -> HamfvsStatus {
    let (Some(g), Some(t)) = (str_arg(graph_text), str_arg(trace_json)) else {
        return invalid("null argument or not UTF-8");
    };
    report((|| {
        let out = parse_graph(g)?;
        let trace = trace_from_json(t)?;
        verify_trace(&trace, &out, None).map(|_| ())
    })())
}

/// Certifies a gadget (`"R"`, `"L"`, `"D"` or `"Y"` with `p`) and writes its
/// report as JSON to `out`.
///
/// # Safety
/// `kind` must be a valid NUL-terminated string and `out` a valid pointer.
/// Free `*out` with [`hamfvs_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hamfvs_gadget_report(kind: *const c_char, p: usize, out: *mut *mut c_char) -> HamfvsStatus {
    let (Some(kind), false) = (str_arg(kind), out.is_null()) else {
        return invalid("null argument or not UTF-8");
    };
    let run = || -> Result<String> {
        let kind = match kind {
            "Y" | "y" => GadgetKind::Y(p),
            k => k.parse()?,
        };
        let report = certify_gadget(&build_gadget(kind)?)?;
        Ok(serde_json::to_string(&report).expect("report serializes"))
    };
    match run() {
        Ok(s) => {
            *out = owned(s);
            HamfvsStatus::Ok
        }
        Err(e) => report(Err(e)),
    }
}
