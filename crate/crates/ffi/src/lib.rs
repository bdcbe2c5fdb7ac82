//! C ABI over the `livsic` library.
//!
//! Tensors and curves cross the boundary as opaque handles. Every entry
//! point returns a [`LivsicStatus`]; on failure the message is available
//! from [`livsic_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use livsic::curves::{self, NormalizeMode, RationalCurveParam};
use livsic::detrep::{self, Tolerances};
use livsic::exterior;
use livsic::hyperbolicity::{self, PlaneSpec};
use livsic::io::{self, CurveFile, GammaFile};
use livsic::linalg::{CVec, C64};
use livsic::{Error, GammaTensor};

/// Result codes. Values 1 to 17 mirror the library's error codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LivsicStatus {
    Ok = 0,
    InvalidArgument = 1,
    UnsupportedPoleOrder = 2,
    PoleOnDiagonal = 3,
    PoleAtDivisor = 4,
    NotInLD = 5,
    RamifiedFiber = 6,
    SingularBasePlane = 7,
    TransversalityFailure = 8,
    BasePoint = 9,
    DegenerateSpan = 10,
    NormalizationFailure = 11,
    SectionNotReal = 12,
    NotNormalized = 13,
    UnknownExample = 14,
    NotHermitian = 15,
    Inconsistency = 16,
    Calibration = 17,
    NullPointer = 100,
    InvalidUtf8 = 101,
    Panic = 102,
}

impl LivsicStatus {
    fn from_error(e: &Error) -> Self {
        use LivsicStatus::*;
        match e.code() {
            1 => InvalidArgument,
            2 => UnsupportedPoleOrder,
            3 => PoleOnDiagonal,
            4 => PoleAtDivisor,
            5 => NotInLD,
            6 => RamifiedFiber,
            7 => SingularBasePlane,
            8 => TransversalityFailure,
            9 => BasePoint,
            10 => DegenerateSpan,
            11 => NormalizationFailure,
            12 => SectionNotReal,
            13 => NotNormalized,
            14 => UnknownExample,
            15 => NotHermitian,
            16 => Inconsistency,
            _ => Calibration,
        }
    }
}

/// Opaque tensor in `Λ^{k+1}C^{d+1} ⊗ M_n(C)`.
pub struct LivsicGamma {
    inner: GammaTensor,
}

/// Opaque rational curve parametrization.
pub struct LivsicCurve {
    inner: RationalCurveParam,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(LivsicStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(LivsicStatus::from_error(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LivsicStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LivsicStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LivsicStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_last_error(format!("internal panic: {msg}"));
            LivsicStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(LivsicStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Reads `rows` row-major vectors of length `len`; `im` may be null.
unsafe fn read_vectors(re: *const f64, im: *const f64, rows: usize, len: usize) -> Result<Vec<CVec>, Failure> {
    if re.is_null() {
        return Err(null("real part"));
    }
    let re = std::slice::from_raw_parts(re, rows * len);
    let im = if im.is_null() { None } else { Some(std::slice::from_raw_parts(im, rows * len)) };
    Ok((0..rows)
        .map(|r| {
            CVec::from_iterator(len, (0..len).map(|j| C64::new(re[r * len + j], im.map_or(0.0, |im| im[r * len + j]))))
        })
        .collect())
}

fn into_string(text: String, out: &mut *mut c_char) -> Result<(), Failure> {
    *out = CString::new(text).map_err(|e| Failure(LivsicStatus::InvalidArgument, e.to_string()))?.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn livsic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from a `livsic_*_to_json` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn livsic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// One of the printed example tensors by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_builtin(name: *const c_char, out: *mut *mut LivsicGamma) -> LivsicStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inner = curves::builtin_example(read_str(name, "name")?)?;
        *out = Box::into_raw(Box::new(LivsicGamma { inner }));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated GammaFile document; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_from_json(json: *const c_char, out: *mut *mut LivsicGamma) -> LivsicStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let file: GammaFile = io::parse_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(LivsicGamma { inner: file.to_gamma()? }));
        Ok(())
    })
}

/// Serializes to a GammaFile document; free the result with [`livsic_string_free`].
///
/// # Safety
/// `gamma` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_to_json(gamma: *const LivsicGamma, out: *mut *mut c_char) -> LivsicStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let g = handle(gamma, "gamma")?;
        into_string(io::to_json(&GammaFile::from_gamma(&g.inner))?, out)
    })
}

/// # Safety
/// `gamma` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_free(gamma: *mut LivsicGamma) {
    if !gamma.is_null() {
        drop(Box::from_raw(gamma));
    }
}

/// # Safety
/// `gamma` must be a live handle; each output pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_dims(
    gamma: *const LivsicGamma,
    d: *mut usize,
    k: *mut usize,
    n: *mut usize,
) -> LivsicStatus {
    guard(|| {
        let g = &handle(gamma, "gamma")?.inner;
        *out_ptr(d, "d")? = g.d();
        *out_ptr(k, "k")? = g.k();
        *out_ptr(n, "n")? = g.n();
        Ok(())
    })
}

/// Kernel dimension of the stacked `γ ∧ μ`; `μ` has `d + 1` entries and
/// `mu_im` may be null for a real point.
///
/// # Safety
/// `mu_re` (and `mu_im` if non-null) must point to `d + 1` doubles.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_membership(
    gamma: *const LivsicGamma,
    mu_re: *const f64,
    mu_im: *const f64,
    kernel_dim: *mut usize,
) -> LivsicStatus {
    guard(|| {
        let g = &handle(gamma, "gamma")?.inner;
        let out = out_ptr(kernel_dim, "kernel_dim")?;
        let mu = read_vectors(mu_re, mu_im, 1, g.d() + 1)?.remove(0);
        *out = detrep::membership(g, &mu, &Tolerances::default())?.kernel_dim;
        Ok(())
    })
}

/// `γ(V)` for a basis of `d − k` row-major vectors of length `d + 1`.
/// Writes `n × n` row-major real and imaginary parts.
///
/// # Safety
/// Inputs must hold `(d − k)(d + 1)` doubles (`basis_im` may be null);
/// outputs must hold `n²` doubles each.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_contract(
    gamma: *const LivsicGamma,
    basis_re: *const f64,
    basis_im: *const f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LivsicStatus {
    guard(|| {
        let g = &handle(gamma, "gamma")?.inner;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output buffer"));
        }
        let basis = read_vectors(basis_re, basis_im, g.d() - g.k(), g.d() + 1)?;
        let m = exterior::contract_subspace(g, &basis)?;
        let n = g.n();
        let re = std::slice::from_raw_parts_mut(out_re, n * n);
        let im = std::slice::from_raw_parts_mut(out_im, n * n);
        for i in 0..n {
            for j in 0..n {
                re[i * n + j] = m[(i, j)].re;
                im[i * n + j] = m[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// # Safety
/// `gamma` must be a live handle; `degree` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_gamma_degree(
    gamma: *const LivsicGamma,
    trials: usize,
    seed: u64,
    degree: *mut usize,
) -> LivsicStatus {
    guard(|| {
        let g = &handle(gamma, "gamma")?.inner;
        let out = out_ptr(degree, "degree")?;
        *out = detrep::degree(g, trials, seed, &Tolerances::default())?.degree;
        Ok(())
    })
}

/// Built-in parametrizations: the three example curves, `pick` and `conic`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_curve_builtin(name: *const c_char, out: *mut *mut LivsicCurve) -> LivsicStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let inner = curves::builtin_curve(read_str(name, "name")?)?;
        *out = Box::into_raw(Box::new(LivsicCurve { inner }));
        Ok(())
    })
}

/// # Safety
/// `json` must be a NUL-terminated CurveFile document; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_curve_from_json(json: *const c_char, out: *mut *mut LivsicCurve) -> LivsicStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let file: CurveFile = io::parse_json(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(LivsicCurve { inner: file.to_curve()? }));
        Ok(())
    })
}

/// # Safety
/// `curve` must be null or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn livsic_curve_free(curve: *mut LivsicCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Bezoutian construction of a tensor whose degeneracy set is the curve,
/// in the curve's own coordinates.
///
/// # Safety
/// `curve` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_construct(curve: *const LivsicCurve, seed: u64, out: *mut *mut LivsicGamma) -> LivsicStatus {
    guard(|| {
        let c = &handle(curve, "curve")?.inner;
        let out = out_ptr(out, "out")?;
        let built = curves::construct_for_curve(c, seed, &NormalizeMode::Generic)?;
        *out = Box::into_raw(Box::new(LivsicGamma { inner: built.gamma }));
        Ok(())
    })
}

/// Witness test for the real plane spanned by `d − 1` row-major vectors of
/// length `d + 1`. Sets `witness` to 0 or 1 and `definite_sign` to −1, 0
/// (undetermined) or +1.
///
/// # Safety
/// `plane` must hold `(d − 1)(d + 1)` doubles; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn livsic_witness(
    curve: *const LivsicCurve,
    plane: *const f64,
    count: usize,
    seed: u64,
    tol: f64,
    witness: *mut i32,
    definite_sign: *mut i32,
) -> LivsicStatus {
    guard(|| {
        let c = &handle(curve, "curve")?.inner;
        let witness = out_ptr(witness, "witness")?;
        let sign = out_ptr(definite_sign, "definite_sign")?;
        if c.d() < 2 {
            return Err(Error::invalid("witness planes need d >= 2").into());
        }
        let basis = read_vectors(plane, ptr::null(), c.d() - 1, c.d() + 1)?;
        let report = hyperbolicity::witness_consistency(c, &PlaneSpec::new(basis)?, count, seed, tol)?;
        *witness = report.witness as i32;
        *sign = report.definite_sign.map_or(0, i32::from);
        Ok(())
    })
}
