//! C ABI over `ptengine`.
//!
//! Wells and cycle comparisons live behind opaque handles created by
//! `pt_*_new`-style calls and released by the matching `pt_*_free`. Every
//! call returns a [`PtStatus`]; on failure `pt_last_error_message` gives a
//! description that stays valid until the next failing call on the same
//! thread. No call unwinds into C.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ptengine::engine::{compare_jb, compare_otto, CycleComparison, Mode};
use ptengine::oracle::{solve_spectrum, OracleConfig};
use ptengine::report::format::{to_json, MAX_PRECISION, MIN_PRECISION};
use ptengine::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Infeasible = 3,
    NoConvergence = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

pub const PT_MODE_EXACT: i32 = 0;
pub const PT_MODE_PAPER: i32 = 1;

/// Opaque well handle.
pub struct PtWell {
    inner: ptengine::PtWell,
}

/// Opaque handle to a cycle computed in both modes.
pub struct PtCycle {
    inner: CycleComparison,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PtSpectrumParams {
    pub w: f64,
    pub d: f64,
    pub lambda: f64,
    pub mu: f64,
    pub dlambda_dl: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PtCycleSummary {
    pub efficiency: f64,
    pub net_work: f64,
    pub q_hot: f64,
    pub q_cold: f64,
    pub loop_integral: f64,
    pub corner_lengths: [f64; 4],
    pub corner_pressures: [f64; 4],
    /// Paper-mode efficiency minus exact-mode efficiency.
    pub efficiency_delta: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(PtStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidParameter { .. } | Error::TooManyLevels { .. } | Error::WrongStrokeKind { .. } => {
                PtStatus::InvalidParameter
            }
            Error::Bracket { .. } | Error::Infeasible(_) => PtStatus::Infeasible,
            Error::NoConvergence { .. } => PtStatus::NoConvergence,
            Error::Io(_) | Error::Json(_) => PtStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PtStatus::NullPointer, format!("{what} is null"))
}

fn guarded<F: FnOnce() -> Result<(), Failure>>(f: F) -> PtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PtStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn level(n: i32) -> Result<u32, Failure> {
    u32::try_from(n).map_err(|_| Failure(PtStatus::InvalidParameter, format!("level n = {n} is negative")))
}

/// Message for the last failing call on this thread; empty if none.
#[no_mangle]
pub extern "C" fn pt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn pt_well_new(mass: f64, hbar: f64, v0: f64, width: f64, out: *mut *mut PtWell) -> PtStatus {
    guarded(|| {
        let well = ptengine::PtWell::new(mass, hbar, v0, width)?;
        write(out, Box::into_raw(Box::new(PtWell { inner: well })), "out")
    })
}

/// # Safety
/// `well` must come from `pt_well_new` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn pt_well_free(well: *mut PtWell) {
    if !well.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(well))));
    }
}

/// # Safety
/// `well` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn pt_well_params(well: *const PtWell, out: *mut PtSpectrumParams) -> PtStatus {
    guarded(|| {
        let p = deref(well, "well")?.inner.params();
        let params = PtSpectrumParams {
            w: p.w,
            d: p.d,
            lambda: p.lambda,
            mu: p.mu,
            dlambda_dl: p.dlambda_dl,
        };
        write(out, params, "out")
    })
}

/// # Safety
/// `well` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn pt_energy_level(well: *const PtWell, n: i32, out: *mut f64) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        write(out, ptengine::energy_level(&w.inner, level(n)?), "out")
    })
}

/// `-dE_n/dL` with `lambda` following the width.
///
/// # Safety
/// `well` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn pt_pressure_exact(well: *const PtWell, n: i32, out: *mut f64) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        write(out, ptengine::pressure_exact(&w.inner, level(n)?), "out")
    })
}

/// The frozen-`lambda` pressure formula; `n >= 1`.
///
/// # Safety
/// `well` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn pt_pressure_paper(well: *const PtWell, n: i32, out: *mut f64) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        write(out, ptengine::pressure_paper(&w.inner, level(n)?)?, "out")
    })
}

/// Lowest `len` grid-oracle levels into `levels`, and their error
/// estimates into `errors` unless it is null. `grid_points == 0` picks the
/// default grid.
///
/// # Safety
/// `levels` (and `errors` when non-null) must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn pt_oracle_solve(
    well: *const PtWell,
    grid_points: usize,
    levels: *mut f64,
    errors: *mut f64,
    len: usize,
) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        if levels.is_null() {
            return Err(null("levels"));
        }
        if len == 0 {
            return Err(Failure(PtStatus::BufferTooSmall, "len must be at least 1".into()));
        }
        let mut cfg = OracleConfig::with_levels(len);
        if grid_points != 0 {
            cfg.grid_points = grid_points;
        }
        let s = solve_spectrum(&w.inner, &cfg)?;
        ptr::copy_nonoverlapping(s.levels.as_ptr(), levels, len);
        if !errors.is_null() {
            ptr::copy_nonoverlapping(s.est_error.as_ptr(), errors, len);
        }
        Ok(())
    })
}

unsafe fn cycle_out(c: ptengine::Result<CycleComparison>, out: *mut *mut PtCycle) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let inner = c?;
    write(out, Box::into_raw(Box::new(PtCycle { inner })), "out")
}

/// Joule-Brayton cycle from the well's width at pressure ratio `rp`.
///
/// # Safety
/// `well` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn pt_cycle_jb(well: *const PtWell, rp: f64, samples: usize, out: *mut *mut PtCycle) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        cycle_out(compare_jb(&w.inner, rp, samples), out)
    })
}

/// Otto cycle between the well's width and `l3`.
///
/// # Safety
/// `well` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn pt_cycle_otto(
    well: *const PtWell,
    l3: f64,
    samples: usize,
    out: *mut *mut PtCycle,
) -> PtStatus {
    guarded(|| {
        let w = deref(well, "well")?;
        cycle_out(compare_otto(&w.inner, l3, samples), out)
    })
}

/// Headline numbers for `mode` (`PT_MODE_EXACT` or `PT_MODE_PAPER`).
///
/// # Safety
/// `cycle` must be a live handle and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn pt_cycle_summary(cycle: *const PtCycle, mode: i32, out: *mut PtCycleSummary) -> PtStatus {
    guarded(|| {
        let c = &deref(cycle, "cycle")?.inner;
        let mode = match mode {
            PT_MODE_EXACT => Mode::Exact,
            PT_MODE_PAPER => Mode::Paper,
            other => return Err(Failure(PtStatus::InvalidParameter, format!("unknown mode {other}"))),
        };
        let r = c.report(mode);
        let summary = PtCycleSummary {
            efficiency: r.efficiency,
            net_work: r.net_work,
            q_hot: r.q_hot,
            q_cold: r.q_cold,
            loop_integral: r.loop_integral,
            corner_lengths: r.corner_lengths,
            corner_pressures: r.corner_pressures,
            efficiency_delta: c.discrepancy.delta,
        };
        write(out, summary, "out")
    })
}

/// Both modes and the discrepancy block as JSON, numbers rounded to
/// `precision` significant digits. Release with `pt_string_free`.
///
/// # Safety
/// `cycle` must be a live handle and `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn pt_cycle_to_json(cycle: *const PtCycle, precision: u32, out: *mut *mut c_char) -> PtStatus {
    guarded(|| {
        let c = &deref(cycle, "cycle")?.inner;
        let digits = precision as usize;
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&digits) {
            return Err(Failure(
                PtStatus::InvalidParameter,
                format!("precision {precision} outside [6, 17]"),
            ));
        }
        let bytes = to_json(c, digits)?;
        let s = CString::new(bytes).map_err(|e| Failure(PtStatus::Internal, e.to_string()))?;
        write(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from `pt_cycle_to_json` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn pt_string_free(s: *mut c_char) {
    if !s.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(CString::from_raw(s))));
    }
}

/// # Safety
/// `cycle` must come from `pt_cycle_jb`/`pt_cycle_otto` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn pt_cycle_free(cycle: *mut PtCycle) {
    if !cycle.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(cycle))));
    }
}
