//! C interface to `spinotto`.
//!
//! Configurations live behind opaque handles created by `*_new` and released
//! by `*_free`. Every fallible call returns a [`SpinottoStatus`]; on failure
//! [`spinotto_last_error`] describes the cause. Quantities that are undefined
//! (no efficiency when no work is produced, a non-thermal spin) are reported
//! as NaN, and infinite ones as `INFINITY`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spinotto::local::{local_from_endpoints, local_temperatures, ReducedEndpoints};
use spinotto::otto::cycle_from_endpoints;
use spinotto::{
    closed_form_ratio, diagonalize, run_generalized_cycle, CycleMode, EngineConfig, Error, GeneralizedConfig,
    LocalMode, PairOperators, SpinQuantumNumber,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinottoStatus {
    Ok = 0,
    InvalidArgument = 1,
    NotConverged = 2,
    NullPointer = 3,
    BufferTooSmall = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinottoCycleMode {
    Engine = 0,
    Refrigerator = 1,
    Heater = 2,
    Idle = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinottoLocalMode {
    Engine = 0,
    Refrigerator = 1,
    Idle = 2,
}

/// Global thermodynamics of one cycle. `eta` is NaN unless the cycle is an
/// engine; `eta_bound` is NaN when `4J >= B1`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpinottoCycle {
    pub w: f64,
    pub q1: f64,
    pub q2: f64,
    pub eta: f64,
    pub eta_bound: f64,
    pub eta_carnot: f64,
    pub eta_uncoupled: f64,
    pub mode: SpinottoCycleMode,
}

/// Per-spin heats and works; `ps` is the change of `<s_A.S_B>` between the
/// hot and cold thermal states.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpinottoLocal {
    pub q1a: f64,
    pub q2a: f64,
    pub q1b: f64,
    pub q2b: f64,
    pub wa: f64,
    pub wb: f64,
    pub ps: f64,
    pub mode_a: SpinottoLocalMode,
    pub mode_b: SpinottoLocalMode,
}

/// Effective spin temperatures at the hot and cold thermal points. A spin
/// whose populations are not Boltzmann-distributed has NaN temperature.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpinottoTemperatures {
    pub a_hot: f64,
    pub a_cold: f64,
    pub b_hot: f64,
    pub b_cold: f64,
    pub b_hot_thermal: bool,
    pub b_cold_thermal: bool,
    pub b_hot_spread: f64,
    pub b_cold_spread: f64,
}

/// Work split for a cycle that changes both field and coupling.
/// `closed_form_ratio` is NaN unless `B1 == B2`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpinottoCoop {
    pub w: f64,
    pub wa: f64,
    pub wb: f64,
    pub ps: f64,
    pub wa_mf: f64,
    pub wb_mf: f64,
    pub w_coop: f64,
    pub cov1: f64,
    pub cov2: f64,
    pub ratio: f64,
    pub closed_form_ratio: f64,
}

/// Opaque fixed-coupling engine.
pub struct SpinottoEngine {
    cfg: EngineConfig,
    ops: PairOperators,
}

/// Opaque engine whose coupling changes between the two isochores.
pub struct SpinottoGeneralized {
    cfg: GeneralizedConfig,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SpinottoStatus {
    match err {
        Error::NotConverged(_) => SpinottoStatus::NotConverged,
        _ => SpinottoStatus::InvalidArgument,
    }
}

fn guard<F: FnOnce() -> Result<(), (SpinottoStatus, String)>>(f: F) -> SpinottoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SpinottoStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            SpinottoStatus::Internal
        }
    }
}

fn lib<T>(r: spinotto::Result<T>) -> Result<T, (SpinottoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (SpinottoStatus, String) {
    (SpinottoStatus::NullPointer, format!("{what} is null"))
}

fn spin(twice_s: u32) -> Result<SpinQuantumNumber, (SpinottoStatus, String)> {
    lib(SpinQuantumNumber::from_twice(twice_s))
}

fn cycle_mode(m: CycleMode) -> SpinottoCycleMode {
    match m {
        CycleMode::Engine => SpinottoCycleMode::Engine,
        CycleMode::Refrigerator => SpinottoCycleMode::Refrigerator,
        CycleMode::Heater => SpinottoCycleMode::Heater,
        CycleMode::Idle => SpinottoCycleMode::Idle,
    }
}

fn local_mode(m: LocalMode) -> SpinottoLocalMode {
    match m {
        LocalMode::Engine => SpinottoLocalMode::Engine,
        LocalMode::Refrigerator => SpinottoLocalMode::Refrigerator,
        LocalMode::Idle => SpinottoLocalMode::Idle,
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn spinotto_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn spinotto_status_name(status: SpinottoStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SpinottoStatus::Ok => b"ok\0",
        SpinottoStatus::InvalidArgument => b"invalid argument\0",
        SpinottoStatus::NotConverged => b"diagonalization did not converge\0",
        SpinottoStatus::NullPointer => b"null pointer\0",
        SpinottoStatus::BufferTooSmall => b"buffer too small\0",
        SpinottoStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Creates an engine for spin `twice_s / 2`. Requires `J >= 0`,
/// `B1 > B2 > 0` and `T1 > T2 > 0`.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn spinotto_engine_new(
    twice_s: u32,
    j: f64,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    out: *mut *mut SpinottoEngine,
) -> SpinottoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = spin(twice_s)?;
        let cfg = lib(EngineConfig::new(s, j, b1, b2, t1, t2))?;
        let engine = Box::new(SpinottoEngine { cfg, ops: PairOperators::new(s) });
        *out = Box::into_raw(engine);
        Ok(())
    })
}

/// # Safety
/// `engine` must be null or a handle from [`spinotto_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spinotto_engine_free(engine: *mut SpinottoEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

unsafe fn engine_ref<'a>(engine: *const SpinottoEngine) -> Result<&'a SpinottoEngine, (SpinottoStatus, String)> {
    engine.as_ref().ok_or_else(|| null("engine"))
}

/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spinotto_engine_cycle(
    engine: *const SpinottoEngine,
    out: *mut SpinottoCycle,
) -> SpinottoStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = cycle_from_endpoints(&lib(e.cfg.endpoints(&e.ops))?);
        *out = SpinottoCycle {
            w: r.w,
            q1: r.q1,
            q2: r.q2,
            eta: r.eta.unwrap_or(f64::NAN),
            eta_bound: r.eta_bound.unwrap_or(f64::NAN),
            eta_carnot: r.eta_carnot,
            eta_uncoupled: r.eta_uncoupled,
            mode: cycle_mode(r.mode),
        };
        Ok(())
    })
}

/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spinotto_engine_local(
    engine: *const SpinottoEngine,
    out: *mut SpinottoLocal,
) -> SpinottoStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ends = lib(e.cfg.endpoints(&e.ops))?;
        let red = lib(ReducedEndpoints::new(&ends))?;
        let l = local_from_endpoints(&e.ops, &ends, &red);
        *out = SpinottoLocal {
            q1a: l.q1a,
            q2a: l.q2a,
            q1b: l.q1b,
            q2b: l.q2b,
            wa: l.wa,
            wb: l.wb,
            ps: l.ps,
            mode_a: local_mode(l.mode_a),
            mode_b: local_mode(l.mode_b),
        };
        Ok(())
    })
}

/// # Safety
/// `engine` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spinotto_engine_temperatures(
    engine: *const SpinottoEngine,
    out: *mut SpinottoTemperatures,
) -> SpinottoStatus {
    guard(|| {
        let e = engine_ref(engine)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ends = lib(e.cfg.endpoints(&e.ops))?;
        let red = lib(ReducedEndpoints::new(&ends))?;
        let t = lib(local_temperatures(&ends, &red))?;
        *out = SpinottoTemperatures {
            a_hot: t.a_hot.temperature.to_f64(),
            a_cold: t.a_cold.temperature.to_f64(),
            b_hot: t.b_hot.temperature.to_f64(),
            b_cold: t.b_cold.temperature.to_f64(),
            b_hot_thermal: t.b_hot.is_thermal,
            b_cold_thermal: t.b_cold.is_thermal,
            b_hot_spread: t.b_hot.spread,
            b_cold_spread: t.b_cold.spread,
        };
        Ok(())
    })
}

/// Creates an engine whose coupling is `J1` on the hot isochore and `J2`
/// on the cold one. Requires `J1, J2 >= 0`, `B1 >= B2 > 0`, `T1 > T2 > 0`.
///
/// # Safety
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn spinotto_generalized_new(
    twice_s: u32,
    j1: f64,
    j2: f64,
    b1: f64,
    b2: f64,
    t1: f64,
    t2: f64,
    out: *mut *mut SpinottoGeneralized,
) -> SpinottoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = lib(GeneralizedConfig::new(spin(twice_s)?, j1, j2, b1, b2, t1, t2))?;
        *out = Box::into_raw(Box::new(SpinottoGeneralized { cfg }));
        Ok(())
    })
}

/// # Safety
/// `handle` must be null or a handle from [`spinotto_generalized_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spinotto_generalized_free(handle: *mut SpinottoGeneralized) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spinotto_generalized_run(
    handle: *const SpinottoGeneralized,
    out: *mut SpinottoCoop,
) -> SpinottoStatus {
    guard(|| {
        let g = handle.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cr = lib(run_generalized_cycle(&g.cfg))?;
        let closed = if g.cfg.b1 == g.cfg.b2 { closed_form_ratio(&cr).to_f64() } else { f64::NAN };
        *out = SpinottoCoop {
            w: cr.w,
            wa: cr.wa_simple,
            wb: cr.wb_simple,
            ps: cr.ps,
            wa_mf: cr.wa_mf,
            wb_mf: cr.wb_mf,
            w_coop: cr.w_coop,
            cov1: cr.cov1,
            cov2: cr.cov2,
            ratio: cr.ratio.to_f64(),
            closed_form_ratio: closed,
        };
        Ok(())
    })
}

/// Writes the `2(2s+1)` ascending eigenvalues of the pair Hamiltonian into
/// `buf`. `*len` is always set to the required length; a short buffer gives
/// [`SpinottoStatus::BufferTooSmall`] and leaves `buf` untouched.
///
/// # Safety
/// `buf` must be valid for `cap` writes (or null when `cap == 0`), `len` writable.
#[no_mangle]
pub unsafe extern "C" fn spinotto_spectrum(
    twice_s: u32,
    j: f64,
    b: f64,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
) -> SpinottoStatus {
    guard(|| {
        if len.is_null() {
            return Err(null("len"));
        }
        let s = spin(twice_s)?;
        *len = s.pair_dim();
        if cap < s.pair_dim() {
            return Err((SpinottoStatus::BufferTooSmall, format!("need {} values, got {cap}", s.pair_dim())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let ops = PairOperators::new(s);
        let spec = lib(diagonalize(&lib(ops.hamiltonian(j, b))?))?;
        ptr::copy_nonoverlapping(spec.energies.as_ptr(), buf, spec.energies.len());
        Ok(())
    })
}
