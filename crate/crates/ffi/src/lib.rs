//! C ABI for polynum.
//!
//! Every fallible function returns a [`PnStatus`]; on failure a message is
//! available from [`pn_last_error`] on the same thread. Handles are opaque and
//! must be released with their matching `_free` function. Strings returned
//! through `char **` are owned by the caller and released with
//! [`pn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use polynum::partition::{generic_point, vector_set};
use polynum::report::{run_pipeline, PipelineOptions, Subject};
use polynum::sequences::{self, SequenceMethod};
use polynum::vectors::VectorSet;
use polynum::{Error, PointedTriangulation, PolytopeFile};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    InvalidPolytope = 3,
    NonGeneric = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnVector {
    F = 0,
    H = 1,
    K = 2,
    E = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnMethod {
    Recursive = 0,
    SimplexSum = 1,
    HDecomposition = 2,
    KDecomposition = 3,
    HReversed = 4,
}

/// A polytope with its face lattice.
pub struct PnPolytope {
    subject: Subject,
}

/// A pointed triangulation and its vectors.
pub struct PnTriangulation {
    triangulation: PointedTriangulation,
    vectors: VectorSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PnStatus {
    match e {
        Error::NonGenericFunctional(..) | Error::NonGenericPoint(_) => PnStatus::NonGeneric,
        Error::UnknownBuiltin(_)
        | Error::UnknownMethod(_)
        | Error::MethodUnavailable { .. }
        | Error::InvalidDimension(_)
        | Error::ParseRational(_)
        | Error::Json(_) => PnStatus::InvalidArgument,
        _ => PnStatus::InvalidPolytope,
    }
}

struct Fail(PnStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> PnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PnStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PnStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(PnStatus::NullArgument, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(PnStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s)
        .map_err(|_| Fail(PnStatus::InvalidArgument, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_i64s(
    values: &[i64],
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> Result<(), Fail> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = values.len();
    if values.len() > cap {
        return Err(Fail(
            PnStatus::BufferTooSmall,
            format!("need {} entries, buffer holds {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail(PnStatus::InvalidArgument, e.to_string()))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a builtin such as `"cube:3"` or `"pyramid:square"`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_polytope_builtin(
    spec: *const c_char,
    out: *mut *mut PnPolytope,
) -> PnStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let subject = Subject::builtin(spec.parse()?)?;
        *out = Box::into_raw(Box::new(PnPolytope { subject }));
        Ok(())
    })
}

/// Parses a polytope JSON document (`name`, `vertices`, optional `faces`).
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_polytope_from_json(
    json: *const c_char,
    out: *mut *mut PnPolytope,
) -> PnStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let polytope = PolytopeFile::from_json(text)?.into_polytope()?;
        *out = Box::into_raw(Box::new(PnPolytope {
            subject: polytope.into(),
        }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from a `pn_polytope_*` constructor, or be null.
#[no_mangle]
pub unsafe extern "C" fn pn_polytope_free(p: *mut PnPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live polytope handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_polytope_dim(p: *const PnPolytope, out: *mut usize) -> PnStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polytope"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = p.subject.polytope.dim();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live polytope handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_polytope_to_json(
    p: *const PnPolytope,
    out: *mut *mut c_char,
) -> PnStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polytope"))?;
        write_string(out, json(&p.subject.polytope.to_file())?)
    })
}

/// Triangulates and computes vectors, using `seed` for the functional and
/// generic point searches.
///
/// # Safety
/// `p` must be a live polytope handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_triangulate(
    p: *const PnPolytope,
    seed: u64,
    out: *mut *mut PnTriangulation,
) -> PnStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polytope"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = PointedTriangulation::new(&p.subject.polytope, seed)?;
        let vectors = vector_set(&t, &generic_point(&t, seed)?)?;
        *out = Box::into_raw(Box::new(PnTriangulation {
            triangulation: t,
            vectors,
        }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`pn_triangulate`], or be null.
#[no_mangle]
pub unsafe extern "C" fn pn_triangulation_free(t: *mut PnTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Copies the vector named by a `PnVector` value into `buf`. `*len` always receives the
/// full length; `PN_STATUS_BUFFER_TOO_SMALL` is returned when it exceeds `cap`.
///
/// # Safety
/// `t` must be a live handle, `buf` must hold `cap` values and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pn_triangulation_vector(
    t: *const PnTriangulation,
    which: i32,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PnStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triangulation"))?;
        let v = &t.vectors;
        let values = match which {
            w if w == PnVector::F as i32 => &v.f,
            w if w == PnVector::H as i32 => &v.h,
            w if w == PnVector::K as i32 => &v.k,
            w if w == PnVector::E as i32 => &v.e,
            _ => {
                return Err(Fail(
                    PnStatus::InvalidArgument,
                    format!("unknown vector {which}"),
                ))
            }
        };
        write_i64s(values, buf, cap, len)
    })
}

/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_triangulation_to_json(
    t: *const PnTriangulation,
    out: *mut *mut c_char,
) -> PnStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triangulation"))?;
        write_string(out, json(&t.triangulation.to_file())?)
    })
}

fn method(m: i32) -> Result<SequenceMethod, Fail> {
    const METHODS: [(PnMethod, SequenceMethod); 5] = [
        (PnMethod::Recursive, SequenceMethod::Recursive),
        (PnMethod::SimplexSum, SequenceMethod::SimplexSum),
        (PnMethod::HDecomposition, SequenceMethod::HDecomposition),
        (PnMethod::KDecomposition, SequenceMethod::KDecomposition),
        (PnMethod::HReversed, SequenceMethod::HReversed),
    ];
    METHODS
        .iter()
        .find(|(c, _)| *c as i32 == m)
        .map(|&(_, s)| s)
        .ok_or_else(|| Fail(PnStatus::InvalidArgument, format!("unknown method {m}")))
}

/// Writes `P(0..=n_max)` (or `P(n)^#` when `interior`) into `buf`, computed
/// by the `PnMethod` value `m`.
/// Returns `PN_STATUS_OVERFLOW` if a value does not fit in 64 bits; use
/// [`pn_sequence_json`] for exact values.
///
/// # Safety
/// `t` must be a live handle, `buf` must hold `cap` values and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn pn_sequence(
    t: *const PnTriangulation,
    m: i32,
    interior: bool,
    n_max: usize,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> PnStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triangulation"))?;
        let r = sequences::sequence(&t.triangulation, &t.vectors, method(m)?, interior, n_max)?;
        let values = r
            .values
            .iter()
            .enumerate()
            .map(|(n, v)| {
                v.to_i64()
                    .ok_or_else(|| Fail(PnStatus::Overflow, format!("P({n}) exceeds 64 bits")))
            })
            .collect::<Result<Vec<i64>, Fail>>()?;
        write_i64s(&values, buf, cap, len)
    })
}

/// The sequence as JSON with arbitrary-precision values.
///
/// # Safety
/// `t` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pn_sequence_json(
    t: *const PnTriangulation,
    m: i32,
    interior: bool,
    n_max: usize,
    out: *mut *mut c_char,
) -> PnStatus {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triangulation"))?;
        let r = sequences::sequence(&t.triangulation, &t.vectors, method(m)?, interior, n_max)?;
        write_string(out, json(&r)?)
    })
}

/// Runs the full verification pipeline and returns its NDJSON report.
/// `*passed` is set to whether every claim held.
///
/// # Safety
/// `p` must be a live polytope handle; `out` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pn_pipeline_report(
    p: *const PnPolytope,
    seed: u64,
    n_max: usize,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> PnStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("polytope"))?;
        let passed = passed.as_mut().ok_or_else(|| null("passed"))?;
        let report = run_pipeline(
            &p.subject,
            PipelineOptions {
                seed,
                n_max,
                ..Default::default()
            },
        );
        *passed = report.passed();
        write_string(out, report.to_ndjson())
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn pn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
