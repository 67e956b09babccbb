//! C ABI over `silence-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_build`
//! style functions and released with the matching `*_free`. Every fallible
//! call returns a [`SilenceStatus`]; on failure a description is available
//! from [`silence_last_error_message`] on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use silence_core as core;
use silence_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SilenceStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidData = 3,
    EmptyDistribution = 4,
    OutOfDomain = 5,
    InsufficientData = 6,
    DegenerateScale = 7,
    Io = 8,
    Panic = 9,
}

/// Multiset of low-variability period lengths.
pub struct SilenceIntervals(core::IntervalSet);

/// Cumulative length distribution `R(n)`.
pub struct SilenceDistribution(core::CumulativeDistribution);

/// Sampled `p(n)` curve.
pub struct SilenceCurve(core::SilenceCurve);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SilenceKnot {
    pub n: u64,
    pub count: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SilenceFit {
    pub alpha: f64,
    pub r0: f64,
    pub fit_min: u64,
    pub fit_max: u64,
    pub residual: f64,
    pub knots_used: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SilenceSample {
    pub n: u64,
    pub p: f64,
    pub pn: f64,
    pub survivors: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> SilenceStatus {
    match err {
        Error::Io { .. } => SilenceStatus::Io,
        Error::Csv(_) | Error::MissingColumn(_) | Error::InvalidRow { .. } => {
            SilenceStatus::InvalidData
        }
        Error::SeriesTooShort { .. }
        | Error::InsufficientData { .. }
        | Error::InsufficientKnots { .. }
        | Error::InsufficientSamples { .. }
        | Error::EmptyCutoff { .. } => SilenceStatus::InsufficientData,
        Error::InvalidParameter(_) => SilenceStatus::InvalidArgument,
        Error::DegenerateScale => SilenceStatus::DegenerateScale,
        Error::EmptyDistribution => SilenceStatus::EmptyDistribution,
        Error::OutOfDomain { .. } | Error::NonDecaying => SilenceStatus::OutOfDomain,
    }
}

/// Runs `f`, recording any error or panic for `silence_last_error_message`.
fn guard(f: impl FnOnce() -> Result<(), SilenceStatus>) -> SilenceStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SilenceStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            SilenceStatus::Panic
        }
    }
}

fn fail(err: Error) -> SilenceStatus {
    set_error(err.to_string());
    status_of(&err)
}

fn null(what: &str) -> SilenceStatus {
    set_error(format!("{what} is null"));
    SilenceStatus::NullPointer
}

unsafe fn slice<'a, T>(data: *const T, len: usize, what: &str) -> Result<&'a [T], SilenceStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn handle<'a, T>(h: *const T, what: &str) -> Result<&'a T, SilenceStatus> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), SilenceStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn store<T>(out: *mut T, value: T) -> Result<(), SilenceStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = value;
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn silence_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Name of the random generator used for surrogates. Static, never null.
#[no_mangle]
pub extern "C" fn silence_generator_name() -> *const c_char {
    static NAME: std::sync::OnceLock<CString> = std::sync::OnceLock::new();
    NAME.get_or_init(|| CString::new(core::surrogate::GENERATOR).unwrap())
        .as_ptr()
}

/// Copies `len` lengths (each at least 1) into a new interval set.
#[no_mangle]
pub unsafe extern "C" fn silence_intervals_from_lengths(
    lengths: *const u64,
    len: usize,
    out: *mut *mut SilenceIntervals,
) -> SilenceStatus {
    guard(|| {
        let lengths = slice(lengths, len, "lengths")?;
        let set = core::IntervalSet::from_lengths(lengths.to_vec()).map_err(fail)?;
        emit(out, SilenceIntervals(set))
    })
}

/// Low-variability periods of a log-price series for window `window` and
/// threshold `delta_sigma` (in units of the signal's standard deviation).
#[no_mangle]
pub unsafe extern "C" fn silence_intervals_from_log_prices(
    log_prices: *const f64,
    len: usize,
    window: usize,
    delta_sigma: f64,
    out: *mut *mut SilenceIntervals,
) -> SilenceStatus {
    guard(|| {
        let x = slice(log_prices, len, "log_prices")?;
        let signal = core::compute_variability(x, window).map_err(fail)?;
        let set = core::extract_intervals(&signal, delta_sigma).map_err(fail)?;
        emit(out, SilenceIntervals(set))
    })
}

/// `count` power-law lengths with exponent `alpha` from seed `seed`.
#[no_mangle]
pub unsafe extern "C" fn silence_intervals_generate(
    count: u64,
    alpha: f64,
    seed: u64,
    out: *mut *mut SilenceIntervals,
) -> SilenceStatus {
    guard(|| {
        let params = core::SurrogateParams::new(count, alpha, seed).map_err(fail)?;
        emit(
            out,
            SilenceIntervals(core::generate_power_law_intervals(&params)),
        )
    })
}

/// Number of intervals; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn silence_intervals_len(intervals: *const SilenceIntervals) -> usize {
    intervals.as_ref().map_or(0, |s| s.0.len())
}

/// Copies up to `capacity` lengths into `buffer` and stores the number copied
/// in `written`.
#[no_mangle]
pub unsafe extern "C" fn silence_intervals_copy(
    intervals: *const SilenceIntervals,
    buffer: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> SilenceStatus {
    guard(|| {
        let set = handle(intervals, "intervals")?;
        let n = set.0.len().min(capacity);
        if n > 0 {
            if buffer.is_null() {
                return Err(null("buffer"));
            }
            ptr::copy_nonoverlapping(set.0.lengths().as_ptr(), buffer, n);
        }
        store(written, n)
    })
}

#[no_mangle]
pub unsafe extern "C" fn silence_intervals_free(intervals: *mut SilenceIntervals) {
    if !intervals.is_null() {
        drop(Box::from_raw(intervals));
    }
}

/// Builds `R(n)`. Fails with `EMPTY_DISTRIBUTION` for an empty set.
#[no_mangle]
pub unsafe extern "C" fn silence_distribution_build(
    intervals: *const SilenceIntervals,
    out: *mut *mut SilenceDistribution,
) -> SilenceStatus {
    guard(|| {
        let set = handle(intervals, "intervals")?;
        let dist = core::build_cumulative(&set.0).map_err(fail)?;
        emit(out, SilenceDistribution(dist))
    })
}

/// `R(1)`; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn silence_distribution_total(dist: *const SilenceDistribution) -> u64 {
    dist.as_ref().map_or(0, |d| d.0.total())
}

/// Longest period `N`; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn silence_distribution_longest(dist: *const SilenceDistribution) -> u64 {
    dist.as_ref().map_or(0, |d| d.0.longest())
}

#[no_mangle]
pub unsafe extern "C" fn silence_distribution_knot_count(
    dist: *const SilenceDistribution,
) -> usize {
    dist.as_ref().map_or(0, |d| d.0.knots().len())
}

#[no_mangle]
pub unsafe extern "C" fn silence_distribution_knot(
    dist: *const SilenceDistribution,
    index: usize,
    out: *mut SilenceKnot,
) -> SilenceStatus {
    guard(|| {
        let d = handle(dist, "dist")?;
        let Some(k) = d.0.knots().get(index) else {
            set_error(format!("knot index {index} out of range"));
            return Err(SilenceStatus::OutOfDomain);
        };
        store(
            out,
            SilenceKnot {
                n: k.n,
                count: k.count,
            },
        )
    })
}

/// Smoothed `R~(n)` for real `n` in `[1, N]`.
#[no_mangle]
pub unsafe extern "C" fn silence_distribution_interpolate(
    dist: *const SilenceDistribution,
    n: f64,
    out: *mut f64,
) -> SilenceStatus {
    guard(|| {
        let d = handle(dist, "dist")?;
        let v = core::interpolate(&d.0, n).map_err(fail)?;
        store(out, v)
    })
}

/// Log-log least squares over the knots in `[n_min, n_max]`.
#[no_mangle]
pub unsafe extern "C" fn silence_distribution_fit_alpha(
    dist: *const SilenceDistribution,
    n_min: u64,
    n_max: u64,
    out: *mut SilenceFit,
) -> SilenceStatus {
    guard(|| {
        let d = handle(dist, "dist")?;
        let f = core::fit_alpha(&d.0, n_min, n_max).map_err(fail)?;
        store(
            out,
            SilenceFit {
                alpha: f.alpha,
                r0: f.r0,
                fit_min: f.fit_range.0,
                fit_max: f.fit_range.1,
                residual: f.residual,
                knots_used: f.knots_used,
            },
        )
    })
}

/// Silence-breaking probability `p(n)` for integer `n` in `[1, N]`.
#[no_mangle]
pub unsafe extern "C" fn silence_probability(
    dist: *const SilenceDistribution,
    n: u64,
    out: *mut f64,
) -> SilenceStatus {
    guard(|| {
        let d = handle(dist, "dist")?;
        let p = core::silence_probability(&d.0, n).map_err(fail)?;
        store(out, p)
    })
}

#[no_mangle]
pub unsafe extern "C" fn silence_distribution_free(dist: *mut SilenceDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}

/// `p(n)` up to `floor(cutoff_fraction * N)`.
#[no_mangle]
pub unsafe extern "C" fn silence_curve_build(
    dist: *const SilenceDistribution,
    cutoff_fraction: f64,
    out: *mut *mut SilenceCurve,
) -> SilenceStatus {
    guard(|| {
        let d = handle(dist, "dist")?;
        let curve = core::silence_curve(&d.0, cutoff_fraction).map_err(fail)?;
        emit(out, SilenceCurve(curve))
    })
}

#[no_mangle]
pub unsafe extern "C" fn silence_curve_len(curve: *const SilenceCurve) -> usize {
    curve.as_ref().map_or(0, |c| c.0.samples().len())
}

#[no_mangle]
pub unsafe extern "C" fn silence_curve_cutoff(curve: *const SilenceCurve) -> u64 {
    curve.as_ref().map_or(0, |c| c.0.cutoff())
}

#[no_mangle]
pub unsafe extern "C" fn silence_curve_sample(
    curve: *const SilenceCurve,
    index: usize,
    out: *mut SilenceSample,
) -> SilenceStatus {
    guard(|| {
        let c = handle(curve, "curve")?;
        let Some(s) = c.0.samples().get(index) else {
            set_error(format!("sample index {index} out of range"));
            return Err(SilenceStatus::OutOfDomain);
        };
        store(
            out,
            SilenceSample {
                n: s.n,
                p: s.p,
                pn: s.pn,
                survivors: s.survivors,
            },
        )
    })
}

/// Weighted plateau of `p(n) * n` over samples with `n >= lower`.
#[no_mangle]
pub unsafe extern "C" fn silence_curve_plateau(
    curve: *const SilenceCurve,
    lower: u64,
    out: *mut f64,
) -> SilenceStatus {
    guard(|| {
        let c = handle(curve, "curve")?;
        let v = core::plateau_estimate(&c.0, lower).map_err(fail)?;
        store(out, v)
    })
}

#[no_mangle]
pub unsafe extern "C" fn silence_curve_free(curve: *mut SilenceCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}
