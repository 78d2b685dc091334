//! C interface to the `entropic` library.
//!
//! Objects are opaque handles created by `*_new` or `*_parse` functions and
//! released by the matching `*_free`. Every fallible function returns an
//! [`EmStatus`]; on failure the message is available from
//! [`em_last_error_message`] on the same thread. Elements are 1-based, as in
//! the library. Strings returned by the library must be released with
//! [`em_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entropic::extension::{second_cohomology, AffineAction};
use entropic::graph::{tutte_value, SignedGraph};
use entropic::homology::{hat_homology, homology, Coefficients, NuSequence};
use entropic::intlin::HomologyResult;
use entropic::link::{bracket, LinkDiagram};
use entropic::magma::{affine_magma, MagmaFamily};
use entropic::tait::{cross_check, medial_link, PlaneGraph};
use entropic::{format, Error, EventualSequence, FiniteMagma};

/// Result of a call. `EM_STATUS_FALSE` is a successful "no" answer from a
/// predicate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmStatus {
    Ok = 0,
    False = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Internal = 4,
    NotEntropic = 5,
    SizeLimit = 6,
    BufferTooSmall = 7,
}

/// A finite magma, optionally carrying an eventually periodic sequence.
pub struct EmMagma {
    magma: FiniteMagma,
    sequence: Option<EventualSequence>,
}

/// An unoriented link diagram.
pub struct EmLink(LinkDiagram);

/// A signed graph with ordered edges.
pub struct EmGraph(SignedGraph);

/// A signed graph with a rotation system.
pub struct EmPlaneGraph(PlaneGraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(e: &Error) -> EmStatus {
    match e {
        Error::NotEntropic { .. } => EmStatus::NotEntropic,
        Error::SizeGuard(_) | Error::OrderBoundExceeded { .. } => EmStatus::SizeLimit,
        Error::Internal(_) | Error::DecompositionNotFound => EmStatus::Internal,
        _ => EmStatus::InvalidInput,
    }
}

struct Fail(EmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(EmStatus::NullPointer, format!("{what} is null"))
}

fn invalid(message: impl Into<String>) -> Fail {
    Fail(EmStatus::InvalidInput, message.into())
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<EmStatus, Fail>) -> EmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err(Fail(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            EmStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid("text is not valid UTF-8"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn to_usize(v: &[u32]) -> Vec<usize> {
    v.iter().map(|&x| x as usize).collect()
}

fn sequence(m: &EmMagma) -> Result<&EventualSequence, Fail> {
    m.sequence.as_ref().ok_or_else(|| invalid("the magma has no sequence; call em_magma_set_sequence"))
}

fn predicate(b: bool) -> EmStatus {
    if b {
        EmStatus::Ok
    } else {
        EmStatus::False
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn em_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_bytes();
        if !buf.is_null() && cap > 0 {
            let n = bytes.len().min(cap - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn em_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn out_string(out: *mut *mut c_char, s: String) -> Result<EmStatus, Fail> {
    let c = CString::new(s).map_err(|_| Fail(EmStatus::Internal, "string contains NUL".into()))?;
    unsafe { write(out, c.into_raw())? };
    Ok(EmStatus::Ok)
}

/// Builds a magma of the given order from a row-major table of
/// `order * order` entries in `1..=order`.
///
/// # Safety
/// `table` must point to `order * order` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_new(order: usize, table: *const u32, out: *mut *mut EmMagma) -> EmStatus {
    guard(|| {
        let len = order.checked_mul(order).ok_or_else(|| invalid("order too large"))?;
        let t = slice(table, len, "table")?;
        let magma = FiniteMagma::new(order, to_usize(t))?;
        write(out, boxed(EmMagma { magma, sequence: None }))?;
        Ok(EmStatus::Ok)
    })
}

/// Parses a magma file; a `seq` line, if present, becomes the sequence.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_parse(src: *const c_char, out: *mut *mut EmMagma) -> EmStatus {
    guard(|| {
        let f = format::parse_magma(text(src)?)?;
        write(out, boxed(EmMagma { magma: f.magma, sequence: f.sequence }))?;
        Ok(EmStatus::Ok)
    })
}

/// The affine magma `a*b = t a + s b + a0` on `Z_modulus`, with `k` stored as
/// element `k + 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_affine(modulus: usize, t: i64, s: i64, a0: i64, out: *mut *mut EmMagma) -> EmStatus {
    guard(|| {
        let magma = affine_magma(modulus, t, s, a0)?;
        write(out, boxed(EmMagma { magma, sequence: None }))?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn em_magma_free(m: *mut EmMagma) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_order(m: *const EmMagma, out: *mut usize) -> EmStatus {
    guard(|| {
        write(out, deref(m, "magma")?.magma.order())?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_op(m: *const EmMagma, a: u32, b: u32, out: *mut u32) -> EmStatus {
    guard(|| {
        let m = &deref(m, "magma")?.magma;
        m.check_element(a as usize)?;
        m.check_element(b as usize)?;
        write(out, m.op(a as usize, b as usize) as u32)?;
        Ok(EmStatus::Ok)
    })
}

/// Writes the magma (and its sequence) in the text file format.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_magma_to_string(m: *const EmMagma, out: *mut *mut c_char) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        out_string(out, format::write_magma(&m.magma, m.sequence.as_ref()))
    })
}

/// Sets the sequence `preperiod` followed by `period` repeated forever.
///
/// # Safety
/// `m` must be a valid handle; the arrays must hold the given lengths.
#[no_mangle]
pub unsafe extern "C" fn em_magma_set_sequence(
    m: *mut EmMagma,
    preperiod: *const u32,
    preperiod_len: usize,
    period: *const u32,
    period_len: usize,
) -> EmStatus {
    guard(|| {
        let m = m.as_mut().ok_or_else(|| null("magma"))?;
        let pre = to_usize(slice(preperiod, preperiod_len, "preperiod")?);
        let per = to_usize(slice(period, period_len, "period")?);
        let s = EventualSequence::new(pre, per)?;
        s.check_order(m.magma.order())?;
        m.sequence = Some(s);
        Ok(EmStatus::Ok)
    })
}

/// `EM_STATUS_OK` if the magma is entropic, `EM_STATUS_FALSE` otherwise.
///
/// # Safety
/// `m` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn em_magma_is_entropic(m: *const EmMagma) -> EmStatus {
    guard(|| Ok(predicate(deref(m, "magma")?.magma.is_entropic())))
}

/// Checks the bracket conditions against the magma's sequence.
///
/// # Safety
/// `m` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn em_magma_is_bracket(m: *const EmMagma) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        Ok(predicate(m.magma.is_bracket_magma(sequence(m)?)))
    })
}

/// Checks the 4-move condition against the magma's sequence.
///
/// # Safety
/// `m` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn em_magma_check_fourmove(m: *const EmMagma) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        Ok(predicate(m.magma.check_fourmove_condition(sequence(m)?)))
    })
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_link_parse(src: *const c_char, out: *mut *mut EmLink) -> EmStatus {
    guard(|| {
        write(out, boxed(EmLink(format::parse_link(text(src)?)?)))?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn em_link_free(d: *mut EmLink) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_link_crossing_count(d: *const EmLink, out: *mut usize) -> EmStatus {
    guard(|| {
        write(out, deref(d, "link")?.0.crossing_count())?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `d` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_link_to_string(d: *const EmLink, out: *mut *mut c_char) -> EmStatus {
    guard(|| out_string(out, deref(d, "link")?.0.to_string()))
}

/// Bracket value of the diagram in the magma, using the magma's sequence.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_bracket(m: *const EmMagma, d: *const EmLink, out: *mut u32) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        let d = deref(d, "link")?;
        write(out, bracket(&m.magma, sequence(m)?, &d.0)? as u32)?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_graph_parse(src: *const c_char, out: *mut *mut EmGraph) -> EmStatus {
    guard(|| {
        write(out, boxed(EmGraph(format::parse_graph(text(src)?)?)))?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn em_graph_free(g: *mut EmGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Graph value in the magma, using the magma's sequence and edge order.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_tutte_value(m: *const EmMagma, g: *const EmGraph, out: *mut u32) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        let g = deref(g, "graph")?;
        write(out, tutte_value(&m.magma, sequence(m)?, &g.0)? as u32)?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_plane_graph_parse(src: *const c_char, out: *mut *mut EmPlaneGraph) -> EmStatus {
    guard(|| {
        write(out, boxed(EmPlaneGraph(format::parse_plane_graph(text(src)?)?)))?;
        Ok(EmStatus::Ok)
    })
}

/// # Safety
/// `g` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn em_plane_graph_free(g: *mut EmPlaneGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The medial link diagram of a plane graph.
///
/// # Safety
/// `g` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_plane_graph_medial_link(g: *const EmPlaneGraph, out: *mut *mut EmLink) -> EmStatus {
    guard(|| {
        let d = medial_link(&deref(g, "plane graph")?.0)?;
        write(out, boxed(EmLink(d)))?;
        Ok(EmStatus::Ok)
    })
}

/// Compares the graph value with the bracket of the medial diagram.
/// Returns `EM_STATUS_FALSE` on disagreement; both values are written
/// whenever they were computed.
///
/// # Safety
/// Handles must be valid; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_cross_check(
    m: *const EmMagma,
    g: *const EmPlaneGraph,
    tutte_out: *mut u32,
    bracket_out: *mut u32,
) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        let c = cross_check(&m.magma, sequence(m)?, &deref(g, "plane graph")?.0)?;
        write(tutte_out, c.tutte as u32)?;
        write(bracket_out, c.bracket as u32)?;
        Ok(predicate(c.passed()))
    })
}

unsafe fn nus(n: usize, nu: *const i64, nu_len: usize, next: *const i64, next_len: usize) -> Result<NuSequence, Fail> {
    let mut s = NuSequence::new();
    if !nu.is_null() {
        s = s.with(n, slice(nu, nu_len, "nu")?.to_vec());
    }
    if !next.is_null() {
        s = s.with(n + 1, slice(next, next_len, "nu_next")?.to_vec());
    }
    Ok(s)
}

unsafe fn write_group(
    g: &HomologyResult,
    betti: *mut usize,
    torsion: *mut u64,
    cap: usize,
    len: *mut usize,
) -> Result<EmStatus, Fail> {
    write(betti, g.betti)?;
    write(len, g.torsion.len())?;
    if g.torsion.len() > cap {
        return Err(Fail(EmStatus::BufferTooSmall, format!("{} torsion factors, buffer holds {cap}", g.torsion.len())));
    }
    for (i, d) in g.torsion.iter().enumerate() {
        let v =
            u64::try_from(d).map_err(|_| Fail(EmStatus::Internal, format!("torsion factor {d} exceeds 64 bits")))?;
        if torsion.is_null() {
            return Err(null("torsion"));
        }
        torsion.add(i).write(v);
    }
    Ok(EmStatus::Ok)
}

/// `H_n` of the magma over the integers (`prime == 0`) or over `Z_prime`.
///
/// `nu` and `nu_next` choose the coefficient vectors at levels `n` and
/// `n + 1`; pass null for the default. The rank goes to `betti_out`, the
/// invariant factors to `torsion` (capacity `torsion_cap`) and their count to
/// `torsion_len`. If the buffer is too small the status is
/// `EM_STATUS_BUFFER_TOO_SMALL` and `torsion_len` holds the needed size.
///
/// # Safety
/// `m` must be a valid handle; arrays must hold the given lengths.
#[no_mangle]
pub unsafe extern "C" fn em_homology(
    m: *const EmMagma,
    n: usize,
    nu: *const i64,
    nu_len: usize,
    nu_next: *const i64,
    nu_next_len: usize,
    prime: u64,
    betti_out: *mut usize,
    torsion: *mut u64,
    torsion_cap: usize,
    torsion_len: *mut usize,
) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        let coeff = match prime {
            0 => Coefficients::Integers,
            p => format!("zp:{p}").parse()?,
        };
        let g = homology(&m.magma, n, &nus(n, nu, nu_len, nu_next, nu_next_len)?, coeff, false)?;
        write_group(&g, betti_out, torsion, torsion_cap, torsion_len)
    })
}

/// `Ĥ_n` of the family `(magma, left projection, right projection)` with
/// signs `+, -, -`; outputs as in [`em_homology`].
///
/// # Safety
/// `m` must be a valid handle; arrays must hold the given lengths.
#[no_mangle]
pub unsafe extern "C" fn em_hat_homology(
    m: *const EmMagma,
    n: usize,
    nu_next: *const i64,
    nu_next_len: usize,
    betti_out: *mut usize,
    torsion: *mut u64,
    torsion_cap: usize,
    torsion_len: *mut usize,
) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        let family = MagmaFamily::with_projections(m.magma.clone());
        let g = hat_homology(&family, n, &nus(n, ptr::null(), 0, nu_next, nu_next_len)?, false, false)?;
        write_group(&g, betti_out, torsion, torsion_cap, torsion_len)
    })
}

/// Second cohomology of the magma with coefficients in `Z_modulus` under the
/// action `a*b = t a + s b + a0`; outputs as in [`em_homology`].
///
/// # Safety
/// `m` must be a valid handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn em_second_cohomology(
    m: *const EmMagma,
    modulus: u64,
    t: i64,
    s: i64,
    a0: i64,
    betti_out: *mut usize,
    torsion: *mut u64,
    torsion_cap: usize,
    torsion_len: *mut usize,
) -> EmStatus {
    guard(|| {
        let m = deref(m, "magma")?;
        if modulus == 0 {
            return Err(invalid("modulus must be positive"));
        }
        let g = second_cohomology(&m.magma, &AffineAction::new(modulus, t, s, a0))?;
        write_group(&g, betti_out, torsion, torsion_cap, torsion_len)
    })
}
