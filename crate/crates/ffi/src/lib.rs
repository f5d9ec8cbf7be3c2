//! C ABI for the `nucc` subdivision library.
//!
//! Every function returns a [`NuccStatus`]; on failure a message is kept in
//! a thread-local slot readable through [`nucc_last_error_message`].
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use nucc::analysis::{franke_1d, order_table};
use nucc::masks::{exp_ratio, sinh_ratio};
use nucc::subdivision::{refine_curve, run};
use nucc::{
    Boundary, ControlPolygon, EpsilonSign, LevelSequence, NuccError, RatioKernelConfig, Scheme,
    SchemeConfig, Variant,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InsufficientSupport = 3,
    TrigonometricSingularity = 4,
    ParameterOutOfRange = 5,
    DegenerateSystem = 6,
    DomainTooSmall = 7,
    InvalidConfig = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuccSchemeKind {
    Chaikin = 0,
    ExpBSpline = 1,
    Nucc = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuccVariant {
    Auto = 0,
    Primary = 1,
    Alternative = 2,
}

/// Scheme configuration.
pub struct NuccConfig(SchemeConfig);

/// Refined scalar sequence.
pub struct NuccSequence(LevelSequence);

/// Refined curve, points stored as interleaved `x, y`.
pub struct NuccCurve {
    xy: Vec<f64>,
    closed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(NuccStatus, String);

impl From<NuccError> for Failure {
    fn from(e: NuccError) -> Self {
        let status = match e {
            NuccError::InsufficientSupport { .. } => NuccStatus::InsufficientSupport,
            NuccError::TrigonometricSingularity { .. } => NuccStatus::TrigonometricSingularity,
            NuccError::ParameterOutOfRange(_) => NuccStatus::ParameterOutOfRange,
            NuccError::DegenerateSystem { .. } => NuccStatus::DegenerateSystem,
            NuccError::DomainTooSmall(_) => NuccStatus::DomainTooSmall,
            NuccError::InvalidConfig(_) => NuccStatus::InvalidConfig,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NuccStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NuccStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NuccStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {msg}"));
            NuccStatus::Panic
        }
    }
}

unsafe fn config_mut<'a>(cfg: *mut NuccConfig) -> Result<&'a mut SchemeConfig, Failure> {
    cfg.as_mut().map(|c| &mut c.0).ok_or_else(|| null("config"))
}

unsafe fn config_ref<'a>(cfg: *const NuccConfig) -> Result<&'a SchemeConfig, Failure> {
    cfg.as_ref().map(|c| &c.0).ok_or_else(|| null("config"))
}

unsafe fn input<'a>(data: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(data, len))
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next `nucc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn nucc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nucc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a configuration with the library defaults.
///
/// `gamma` is only read for `NUCC_SCHEME_KIND_EXP_B_SPLINE`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_new(
    kind: NuccSchemeKind,
    gamma: f64,
    out: *mut *mut NuccConfig,
) -> NuccStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let scheme = match kind {
            NuccSchemeKind::Chaikin => Scheme::Chaikin,
            NuccSchemeKind::ExpBSpline => Scheme::ExpBSpline { gamma },
            NuccSchemeKind::Nucc => Scheme::Nucc,
        };
        let cfg = SchemeConfig::new(scheme);
        cfg.validate()?;
        *out = Box::into_raw(Box::new(NuccConfig(cfg)));
        Ok(())
    })
}

/// # Safety
/// `cfg` must be null or a handle from [`nucc_config_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_free(cfg: *mut NuccConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// `|ε|` at `k0 = 0`, rescaled by `2^{-2 k0}`; `positive_only` fixes its sign.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_set_epsilon(
    cfg: *mut NuccConfig,
    magnitude: f64,
    positive_only: bool,
) -> NuccStatus {
    guard(|| {
        let c = config_mut(cfg)?;
        let mut next = *c;
        next.eps.magnitude = magnitude;
        next.eps_scale = magnitude;
        next.eps.sign_mode = if positive_only {
            EpsilonSign::FixedPositive
        } else {
            EpsilonSign::MatchLocalValue
        };
        next.validate()?;
        *c = next;
        Ok(())
    })
}

/// Variant threshold at `k0 = 0`, rescaled by `2^{-2 k0}`.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_set_threshold(
    cfg: *mut NuccConfig,
    threshold: f64,
) -> NuccStatus {
    guard(|| {
        let c = config_mut(cfg)?;
        let mut next = *c;
        next.variant_threshold = threshold;
        next.threshold_scale = threshold;
        next.validate()?;
        *c = next;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_set_variant(
    cfg: *mut NuccConfig,
    variant: NuccVariant,
) -> NuccStatus {
    guard(|| {
        config_mut(cfg)?.variant = match variant {
            NuccVariant::Auto => Variant::Auto,
            NuccVariant::Primary => Variant::Primary,
            NuccVariant::Alternative => Variant::Alternative,
        };
        Ok(())
    })
}

/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_set_clamp(cfg: *mut NuccConfig, clamp: bool) -> NuccStatus {
    guard(|| {
        config_mut(cfg)?.clamp = clamp;
        Ok(())
    })
}

/// Fixes `λ` for every NUCC rule; NaN restores the data-adaptive choice.
///
/// # Safety
/// `cfg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_config_set_fixed_lambda(
    cfg: *mut NuccConfig,
    lambda: f64,
) -> NuccStatus {
    guard(|| {
        let c = config_mut(cfg)?;
        if lambda.is_infinite() {
            return Err(Failure(
                NuccStatus::InvalidArgument,
                "lambda must be finite".into(),
            ));
        }
        c.fixed_lambda = (!lambda.is_nan()).then_some(lambda);
        Ok(())
    })
}

/// Refines `len` level-0 values with spacing `2^{-k0}` by `levels` steps.
///
/// # Safety
/// `cfg` must be a live handle, `values` must point to `len` doubles and
/// `out` to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_refine(
    cfg: *const NuccConfig,
    values: *const f64,
    len: usize,
    k0: u32,
    levels: u32,
    periodic: bool,
    out: *mut *mut NuccSequence,
) -> NuccStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let data = input(values, len, "values")?.to_vec();
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let boundary = if periodic {
            Boundary::Periodic
        } else {
            Boundary::ReplicateEnd
        };
        let cfg = cfg.with_boundary(boundary).at_density(k0);
        let f0 = LevelSequence::new(data, 0, 0, k0, boundary)?;
        let state = run(f0, &cfg, levels)?;
        *out = Box::into_raw(Box::new(NuccSequence(state.f)));
        Ok(())
    })
}

/// # Safety
/// `seq` must be null or a handle from [`nucc_refine`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nucc_sequence_free(seq: *mut NuccSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Number of values; 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_sequence_len(seq: *const NuccSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// Borrowed pointer to the values, valid while the handle lives.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_sequence_values(seq: *const NuccSequence) -> *const f64 {
    seq.as_ref().map_or(ptr::null(), |s| s.0.values().as_ptr())
}

/// Index of the first value and level of the sequence.
///
/// # Safety
/// `seq` must be a live handle; `first_index` and `level` may be null.
#[no_mangle]
pub unsafe extern "C" fn nucc_sequence_info(
    seq: *const NuccSequence,
    first_index: *mut i64,
    level: *mut u32,
) -> NuccStatus {
    guard(|| {
        let s = &seq.as_ref().ok_or_else(|| null("sequence"))?.0;
        if let Some(p) = first_index.as_mut() {
            *p = s.first_index();
        }
        if let Some(p) = level.as_mut() {
            *p = s.level();
        }
        Ok(())
    })
}

/// Writes the grid abscissa of every value into `out[0..capacity]`.
///
/// # Safety
/// `seq` must be a live handle and `out` must point to `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn nucc_sequence_abscissae(
    seq: *const NuccSequence,
    out: *mut f64,
    capacity: usize,
) -> NuccStatus {
    guard(|| {
        let s = &seq.as_ref().ok_or_else(|| null("sequence"))?.0;
        if capacity < s.len() {
            return Err(Failure(
                NuccStatus::BufferTooSmall,
                format!("need {} doubles, got {capacity}", s.len()),
            ));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let dst = slice::from_raw_parts_mut(out, s.len());
        for (d, (_, t, _)) in dst.iter_mut().zip(s.iter_points()) {
            *d = t;
        }
        Ok(())
    })
}

/// Refines a polygon given as `n_points` interleaved `x, y` pairs.
///
/// # Safety
/// `cfg` must be a live handle, `xy` must point to `2 * n_points` doubles
/// and `out` to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_refine_curve(
    cfg: *const NuccConfig,
    xy: *const f64,
    n_points: usize,
    closed: bool,
    levels: u32,
    out: *mut *mut NuccCurve,
) -> NuccStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let flat = input(xy, 2 * n_points, "xy")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let points = flat.chunks_exact(2).map(|p| [p[0], p[1]]).collect();
        let poly = ControlPolygon::new(points, closed)?;
        let refined = refine_curve(&poly, cfg, levels)?;
        *out = Box::into_raw(Box::new(NuccCurve {
            xy: refined.points.iter().flatten().copied().collect(),
            closed: refined.closed,
        }));
        Ok(())
    })
}

/// # Safety
/// `curve` must be null or a handle from [`nucc_refine_curve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nucc_curve_free(curve: *mut NuccCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_curve_len(curve: *const NuccCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.xy.len() / 2)
}

/// Borrowed pointer to `2 * len` interleaved coordinates.
///
/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_curve_points(curve: *const NuccCurve) -> *const f64 {
    curve.as_ref().map_or(ptr::null(), |c| c.xy.as_ptr())
}

/// # Safety
/// `curve` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nucc_curve_is_closed(curve: *const NuccCurve) -> bool {
    curve.as_ref().is_some_and(|c| c.closed)
}

/// `sinh(c γ h) / sinh(γ h)` with `γ² = lambda`.
///
/// # Safety
/// `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn nucc_sinh_ratio(lambda: f64, h: f64, c: f64, out: *mut f64) -> NuccStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = sinh_ratio(lambda, h, c, &RatioKernelConfig::default())?;
        Ok(())
    })
}

/// `(e^{c γ h} - 1) / (e^{γ h} - 1)`.
///
/// # Safety
/// `out` must point to one writable double.
#[no_mangle]
pub unsafe extern "C" fn nucc_exp_ratio(gamma: f64, h: f64, c: f64, out: *mut f64) -> NuccStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = exp_ratio(gamma, h, c, &RatioKernelConfig::default())?;
        Ok(())
    })
}

/// The scaled one-dimensional Franke test function.
#[no_mangle]
pub extern "C" fn nucc_franke_1d(t: f64) -> f64 {
    franke_1d(t)
}

/// Order table on the Franke function for `k0` in `[k0_first, k0_last]`.
///
/// Row `i` goes to `max_errors[i]` and `est_orders[i]`; the first order is NaN.
///
/// # Safety
/// `cfg` must be a live handle; `max_errors` and `est_orders` must each point
/// to `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn nucc_order_table(
    cfg: *const NuccConfig,
    k0_first: u32,
    k0_last: u32,
    domain_lo: f64,
    domain_hi: f64,
    eval_level: u32,
    max_errors: *mut f64,
    est_orders: *mut f64,
    capacity: usize,
) -> NuccStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let rows_needed = k0_last.saturating_sub(k0_first) as usize + 1;
        if k0_last >= k0_first && capacity < rows_needed {
            return Err(Failure(
                NuccStatus::BufferTooSmall,
                format!("need {rows_needed} rows, got {capacity}"),
            ));
        }
        if max_errors.is_null() || est_orders.is_null() {
            return Err(null("output buffer"));
        }
        let rows = order_table(
            franke_1d,
            cfg,
            k0_first..=k0_last,
            (domain_lo, domain_hi),
            eval_level,
        )?;
        let errs = slice::from_raw_parts_mut(max_errors, rows.len());
        let ords = slice::from_raw_parts_mut(est_orders, rows.len());
        for (i, r) in rows.iter().enumerate() {
            errs[i] = r.max_error;
            ords[i] = r.est_order.unwrap_or(f64::NAN);
        }
        Ok(())
    })
}
