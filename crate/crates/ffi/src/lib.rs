//! C ABI over `vcst-core`.
//!
//! Instances and solutions are opaque heap handles owned by the caller and
//! released with the matching `*_free` function. Every fallible call returns a
//! [`VcstStatus`]; on failure the message is kept per thread and can be read
//! with [`vcst_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vcst_core::cds::{RootPolicy, SetCoverBackend};
use vcst_core::graph::{Graph, VcstInstance as CoreVcst};
use vcst_core::harness::io::{InstanceFile, SolutionFile};
use vcst_core::harness::solve::{solve_instance, Algorithm, SolveOptions};
use vcst_core::num::Weight;
use vcst_core::Error;

/// Weight value standing for an infinite weight in the array constructors.
pub const VCST_INFINITE_WEIGHT: i64 = -1;

/// Fixed-point scale: weights cross the boundary as integer micro-units.
pub const VCST_WEIGHT_SCALE: i64 = 1_000_000;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcstStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8 or negative weight.
    InvalidArgument = 1,
    InvalidInstance = 2,
    Infeasible = 3,
    TooLarge = 4,
    /// Algorithm does not apply to this kind of instance.
    WrongVariant = 5,
    Parse = 6,
    /// An internal check failed; the result was discarded.
    Internal = 7,
    Panic = 8,
    /// A caller buffer was too small; the required length was written.
    BufferTooSmall = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcstAlgorithm {
    Exact = 0,
    CdsLp = 1,
    CdsSpanning = 2,
    PdPlanar = 3,
    ActivationExact = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcstBackend {
    Auto = 0,
    Exact = 1,
    Greedy = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct VcstSolveOptions {
    pub algorithm: VcstAlgorithm,
    pub backend: VcstBackend,
    /// Round from every root (rounding algorithms only).
    pub all_roots: bool,
    /// Also compute the exact optimum when the instance is small enough.
    pub compute_opt: bool,
}

/// Opaque instance handle.
pub struct VcstInstance {
    file: InstanceFile,
}

/// Opaque solution handle.
pub struct VcstSolution {
    file: SolutionFile,
    opt: Option<Weight>,
    wall_ms: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VcstStatus {
    match e {
        Error::InvalidInstance(_) | Error::InvalidTree(_) | Error::Domain(_) => {
            VcstStatus::InvalidInstance
        }
        Error::Infeasible(_) => VcstStatus::Infeasible,
        Error::TooLarge(_) => VcstStatus::TooLarge,
        Error::WrongVariant(_) => VcstStatus::WrongVariant,
        Error::Parse(_) => VcstStatus::Parse,
        Error::Lp(_) | Error::Invariant(_) => VcstStatus::Internal,
    }
}

struct Fail(VcstStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(VcstStatus::InvalidArgument, msg.to_string())
}

/// Runs `f`, records any failure and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VcstStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VcstStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            VcstStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(invalid("null array with nonzero length"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(VcstStatus::Internal, "nul byte in output".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Copies `src` into a caller buffer; `*len` is the capacity on entry and the
/// element count on return.
unsafe fn copy_out(src: &[usize], buf: *mut usize, len: *mut usize) -> Result<(), Fail> {
    if len.is_null() {
        return Err(invalid("null length pointer"));
    }
    let cap = *len;
    *len = src.len();
    if src.len() > cap {
        return Err(Fail(
            VcstStatus::BufferTooSmall,
            format!("{} entries needed", src.len()),
        ));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(invalid("null buffer"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

fn weight_of(micros: i64) -> Result<Weight, Fail> {
    match micros {
        VCST_INFINITE_WEIGHT => Ok(Weight::Infinite),
        m if m >= 0 => Ok(Weight::from_micros(m)),
        m => Err(invalid(&format!("weight {m} is negative"))),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn vcst_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn vcst_status_name(status: VcstStatus) -> *const c_char {
    let s: &'static CStr = match status {
        VcstStatus::Ok => c"ok",
        VcstStatus::InvalidArgument => c"invalid-argument",
        VcstStatus::InvalidInstance => c"invalid-instance",
        VcstStatus::Infeasible => c"infeasible",
        VcstStatus::TooLarge => c"too-large",
        VcstStatus::WrongVariant => c"wrong-variant",
        VcstStatus::Parse => c"parse",
        VcstStatus::Internal => c"internal",
        VcstStatus::Panic => c"panic",
        VcstStatus::BufferTooSmall => c"buffer-too-small",
    };
    s.as_ptr()
}

/// Parses and validates an instance file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_instance_from_json(
    json: *const c_char,
    out: *mut *mut VcstInstance,
) -> VcstStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        let file: InstanceFile = str_arg(json)?.parse()?;
        *out = Box::into_raw(Box::new(VcstInstance { file }));
        Ok(())
    })
}

/// Builds a VC-weighted Steiner instance. Weights are micro-units, or
/// [`VCST_INFINITE_WEIGHT`]; `edges` holds `2 * m` endpoints.
///
/// # Safety
/// Each array must hold the stated number of elements; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_instance_new(
    n: usize,
    weights: *const i64,
    m: usize,
    edges: *const usize,
    k: usize,
    terminals: *const usize,
    out: *mut *mut VcstInstance,
) -> VcstStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        let w = slice_arg(weights, n)?
            .iter()
            .map(|&x| weight_of(x))
            .collect::<Result<Vec<_>, _>>()?;
        let ends = slice_arg(edges, 2 * m)?;
        let g = Graph::new(w, ends.chunks_exact(2).map(|e| (e[0], e[1])))?;
        let inst = CoreVcst::new(g, slice_arg(terminals, k)?.iter().copied())?;
        *out = Box::into_raw(Box::new(VcstInstance {
            file: InstanceFile::from_vcst(&inst),
        }));
        Ok(())
    })
}

/// Serializes an instance; free the string with [`vcst_string_free`].
///
/// # Safety
/// `inst` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_instance_to_json(
    inst: *const VcstInstance,
    out: *mut *mut c_char,
) -> VcstStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| invalid("null instance"))?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        out_string(inst.file.to_json(), out)
    })
}

/// Vertex count of the instance graph (elements for set cover); 0 for null.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcst_instance_vertex_count(inst: *const VcstInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.file.size().0)
}

/// # Safety
/// `inst` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn vcst_instance_free(inst: *mut VcstInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Default options: exact algorithm, automatic backend.
#[no_mangle]
pub extern "C" fn vcst_solve_options_default() -> VcstSolveOptions {
    VcstSolveOptions {
        algorithm: VcstAlgorithm::Exact,
        backend: VcstBackend::Auto,
        all_roots: false,
        compute_opt: false,
    }
}

/// Solves an instance. The output is validated before it is returned.
///
/// # Safety
/// `inst` must be a live handle, `options` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_solve(
    inst: *const VcstInstance,
    options: *const VcstSolveOptions,
    out: *mut *mut VcstSolution,
) -> VcstStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| invalid("null instance"))?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        let o = options
            .as_ref()
            .copied()
            .unwrap_or_else(|| vcst_solve_options_default());
        let algorithm = match o.algorithm {
            VcstAlgorithm::Exact => Algorithm::Exact,
            VcstAlgorithm::CdsLp => Algorithm::CdsLp,
            VcstAlgorithm::CdsSpanning => Algorithm::CdsSpanning,
            VcstAlgorithm::PdPlanar => Algorithm::PdPlanar,
            VcstAlgorithm::ActivationExact => Algorithm::ActivationExact,
        };
        let mut opts = SolveOptions::new(algorithm);
        opts.backend = match o.backend {
            VcstBackend::Auto => SetCoverBackend::Auto,
            VcstBackend::Exact => SetCoverBackend::Exact,
            VcstBackend::Greedy => SetCoverBackend::Greedy,
        };
        opts.all_roots = o.all_roots;
        opts.root_policy = RootPolicy::All;
        opts.compute_opt = o.compute_opt;
        let outcome = solve_instance(&inst.file, &opts)?;
        *out = Box::into_raw(Box::new(VcstSolution {
            file: outcome.solution,
            opt: outcome.opt,
            wall_ms: outcome.wall_ms,
        }));
        Ok(())
    })
}

/// Objective in micro-units; [`VCST_INFINITE_WEIGHT`] when infinite.
///
/// # Safety
/// `sol` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_objective(
    sol: *const VcstSolution,
    out: *mut i64,
) -> VcstStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| invalid("null solution"))?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        *out = sol.file.objective.micros().unwrap_or(VCST_INFINITE_WEIGHT);
        Ok(())
    })
}

/// Exact optimum in micro-units when it was requested and computed.
/// Writes `false` to `*available` otherwise.
///
/// # Safety
/// `sol` must be a live handle; `out` and `available` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_optimum(
    sol: *const VcstSolution,
    out: *mut i64,
    available: *mut bool,
) -> VcstStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| invalid("null solution"))?;
        if out.is_null() || available.is_null() {
            return Err(invalid("null output pointer"));
        }
        *available = sol.opt.is_some();
        *out = sol
            .opt
            .and_then(Weight::micros)
            .unwrap_or(VCST_INFINITE_WEIGHT);
        Ok(())
    })
}

/// Wall time of the solve in milliseconds; negative for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_wall_ms(sol: *const VcstSolution) -> f64 {
    sol.as_ref().map_or(-1.0, |s| s.wall_ms)
}

/// Whether every certificate flag of the solution holds; false for null.
///
/// # Safety
/// `sol` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_certified(sol: *const VcstSolution) -> bool {
    sol.as_ref()
        .is_some_and(|s| s.file.certificates.values().all(|&ok| ok))
}

/// Tree edges as `2 * count` endpoints. `*len` is the buffer capacity in
/// entries on entry and the needed entry count on return.
///
/// # Safety
/// `sol` must be a live handle; `buf` must hold `*len` entries.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_tree_edges(
    sol: *const VcstSolution,
    buf: *mut usize,
    len: *mut usize,
) -> VcstStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| invalid("null solution"))?;
        let flat: Vec<usize> = sol.file.tree.as_ref().map_or_else(Vec::new, |t| {
            t.edges().iter().flat_map(|&(u, v)| [u, v]).collect()
        });
        copy_out(&flat, buf, len)
    })
}

/// Chosen vertices: the tree cover, the dominating set or the selected
/// vertex or set list, whichever the problem produces.
///
/// # Safety
/// `sol` must be a live handle; `buf` must hold `*len` entries.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_vertices(
    sol: *const VcstSolution,
    buf: *mut usize,
    len: *mut usize,
) -> VcstStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| invalid("null solution"))?;
        let f = &sol.file;
        let vs = f
            .cover
            .as_ref()
            .or(f.domset.as_ref())
            .or(f.chosen.as_ref())
            .cloned()
            .unwrap_or_default();
        copy_out(&vs, buf, len)
    })
}

/// Serializes a solution; free the string with [`vcst_string_free`].
///
/// # Safety
/// `sol` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_to_json(
    sol: *const VcstSolution,
    out: *mut *mut c_char,
) -> VcstStatus {
    guard(|| {
        let sol = sol.as_ref().ok_or_else(|| invalid("null solution"))?;
        if out.is_null() {
            return Err(invalid("null output pointer"));
        }
        out_string(sol.file.to_json(), out)
    })
}

/// # Safety
/// `sol` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn vcst_solution_free(sol: *mut VcstSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn vcst_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn vcst_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
