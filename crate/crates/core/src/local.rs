//! Per-spin view of the cycle: local heats and works from reduced states
//! under the local Zeeman Hamiltonians `2B s_A^z` and `2B S_B^z`, the
//! interaction term that reconciles them with the global heats, and
//! effective spin temperatures from population ratios.

use crate::error::{Error, Result};
use crate::otto::{positive_work_boundaries, CycleEndpoints, EngineConfig, IDLE_TOLERANCE};
use crate::quantity::Quantity;
use crate::spin::{spin_operators, PairOperators, SpinQuantumNumber};
use crate::thermal::{partial_trace, ReducedState, Subsystem};

/// Relative spread of pairwise temperatures below which a state is thermal.
pub const THERMAL_SPREAD: f64 = 1e-9;
/// Populations below this make a pairwise temperature undefined.
pub const PROBABILITY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalMode {
    Engine,
    Refrigerator,
    Idle,
}

impl LocalMode {
    pub fn of_work(w: f64) -> Self {
        if w > IDLE_TOLERANCE {
            Self::Engine
        } else if w < -IDLE_TOLERANCE {
            Self::Refrigerator
        } else {
            Self::Idle
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Engine => "engine",
            Self::Refrigerator => "refrigerator",
            Self::Idle => "idle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalResult {
    pub q1a: f64,
    pub q2a: f64,
    pub q1b: f64,
    pub q2b: f64,
    pub wa: f64,
    pub wb: f64,
    /// `Tr[(ρ − ρ') s_A·S_B]`
    pub ps: f64,
    pub mode_a: LocalMode,
    pub mode_b: LocalMode,
}

/// Reduced states of both spins at both thermal endpoints.
#[derive(Debug, Clone)]
pub struct ReducedEndpoints {
    pub a_hot: ReducedState,
    pub a_cold: ReducedState,
    pub b_hot: ReducedState,
    pub b_cold: ReducedState,
}

impl ReducedEndpoints {
    pub fn new(ends: &CycleEndpoints) -> Result<Self> {
        let s = ends.s;
        Ok(Self {
            a_hot: partial_trace(&ends.hot.state.rho, s, Subsystem::A)?,
            a_cold: partial_trace(&ends.cold.state.rho, s, Subsystem::A)?,
            b_hot: partial_trace(&ends.hot.state.rho, s, Subsystem::B)?,
            b_cold: partial_trace(&ends.cold.state.rho, s, Subsystem::B)?,
        })
    }
}

fn local_sz_expectation(red: &ReducedState, s: SpinQuantumNumber) -> f64 {
    let spin = match red.subsystem {
        Subsystem::A => SpinQuantumNumber::HALF,
        Subsystem::B => s,
    };
    red.rho.as_dense().trace_product(spin_operators(spin).sz.as_dense())
}

/// Local heats with `H_i = 2B S_i^z` at the field of each isochore.
pub fn local_from_endpoints(ops: &PairOperators, ends: &CycleEndpoints, red: &ReducedEndpoints) -> LocalResult {
    let s = ends.s;
    let (b1, b2) = (ends.hot.point.b, ends.cold.point.b);
    let da = local_sz_expectation(&red.a_hot, s) - local_sz_expectation(&red.a_cold, s);
    let db = local_sz_expectation(&red.b_hot, s) - local_sz_expectation(&red.b_cold, s);
    let q1a = 2.0 * b1 * da;
    let q2a = -2.0 * b2 * da;
    let q1b = 2.0 * b1 * db;
    let q2b = -2.0 * b2 * db;
    let interaction = ops.interaction.as_dense();
    let ps = ends.hot.state.expectation(interaction) - ends.cold.state.expectation(interaction);
    let wa = q1a + q2a;
    let wb = q1b + q2b;
    LocalResult { q1a, q2a, q1b, q2b, wa, wb, ps, mode_a: LocalMode::of_work(wa), mode_b: LocalMode::of_work(wb) }
}

pub fn local_analysis(cfg: &EngineConfig) -> Result<LocalResult> {
    cfg.validate()?;
    let ops = PairOperators::new(cfg.s);
    let ends = cfg.endpoints(&ops)?;
    let red = ReducedEndpoints::new(&ends)?;
    Ok(local_from_endpoints(&ops, &ends, &red))
}

/// Intervals of `J` within `j_grid` where spin B does at least as much work
/// as spin A, with ends refined by bisection. The remaining parameters come
/// from `base`.
pub fn spin_b_dominance(base: &EngineConfig, j_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let ops = PairOperators::new(base.s);
    let excess = |j: f64| -> Result<f64> {
        let cfg = EngineConfig { j, ..*base };
        cfg.validate()?;
        let ends = cfg.endpoints(&ops)?;
        let red = ReducedEndpoints::new(&ends)?;
        let l = local_from_endpoints(&ops, &ends, &red);
        Ok(l.wa - l.wb)
    };
    let values = j_grid.iter().map(|&j| excess(j)).collect::<Result<Vec<_>>>()?;
    let crossings = positive_work_boundaries(j_grid, &values, excess)?;
    let (Some(&first), Some(&last)) = (j_grid.first(), j_grid.last()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    let mut start = (values[0] <= 0.0).then_some(first);
    for x in crossings {
        match start.take() {
            Some(a) => out.push((a, x)),
            None => start = Some(x),
        }
    }
    if let Some(a) = start {
        out.push((a, last));
    }
    Ok(out)
}

/// Efficiency of a locally working spin, or coefficient of performance of a
/// locally refrigerating one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalFigure {
    /// `w_i / q1_i`
    Efficiency(f64),
    /// `q2_i / |w_i|`
    Cop(f64),
    Undefined,
}

impl LocalFigure {
    pub fn efficiency(self) -> Option<f64> {
        match self {
            Self::Efficiency(v) => Some(v),
            _ => None,
        }
    }

    pub fn cop(self) -> Option<f64> {
        match self {
            Self::Cop(v) => Some(v),
            _ => None,
        }
    }
}

fn figure(mode: LocalMode, w: f64, q1: f64, q2: f64) -> LocalFigure {
    match mode {
        LocalMode::Engine => LocalFigure::Efficiency(w / q1),
        LocalMode::Refrigerator => LocalFigure::Cop(q2 / w.abs()),
        LocalMode::Idle => LocalFigure::Undefined,
    }
}

/// Local figures of merit for spins A and B. Because `q1_i = −(B1/B2) q2_i`
/// these are `1 − B2/B1` and `B2/(B1 − B2)` whatever the coupling.
pub fn local_efficiency(lr: &LocalResult, b1: f64, b2: f64) -> (LocalFigure, LocalFigure) {
    let a = figure(lr.mode_a, lr.wa, lr.q1a, lr.q2a);
    let b = figure(lr.mode_b, lr.wb, lr.q1b, lr.q2b);
    if b1 > b2 && b2 > 0.0 {
        for f in [a, b] {
            match f {
                LocalFigure::Efficiency(e) => debug_assert!((e - (1.0 - b2 / b1)).abs() < 1e-6),
                LocalFigure::Cop(c) => debug_assert!((c - b2 / (b1 - b2)).abs() < 1e-6 * c.max(1.0)),
                LocalFigure::Undefined => {}
            }
        }
    }
    (a, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureAssessment {
    pub subsystem: Subsystem,
    pub is_thermal: bool,
    /// The common temperature when thermal.
    pub temperature: Quantity,
    /// One value per adjacent magnetization pair `(m, m − 1)`, descending `m`.
    pub pairwise: Vec<Quantity>,
    pub spread: f64,
}

/// Effective temperature `T = (E_i − E_j)/(ln P_j − ln P_i)` for each
/// adjacent pair of local levels `E = 2Bm`.
pub fn effective_temperature(red: &ReducedState, b: f64) -> Result<TemperatureAssessment> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::InvalidConfig(format!("effective temperature needs a nonzero field, got B = {b}")));
    }
    let coherence = red.max_coherence();
    if coherence > 1e-12 {
        return Err(Error::NotDiagonal(coherence));
    }
    let pops = red.populations();
    let gap = 2.0 * b;
    let pairwise: Vec<Quantity> = pops
        .windows(2)
        .map(|w| {
            let (upper, lower) = (w[0], w[1]);
            if upper < PROBABILITY_FLOOR || lower < PROBABILITY_FLOOR {
                Quantity::Undefined
            } else if upper == lower {
                Quantity::Infinite
            } else {
                Quantity::Finite(gap / (lower.ln() - upper.ln()))
            }
        })
        .collect();

    let (is_thermal, temperature, spread) = assess(&pairwise);
    Ok(TemperatureAssessment { subsystem: red.subsystem, is_thermal, temperature, pairwise, spread })
}

fn assess(pairwise: &[Quantity]) -> (bool, Quantity, f64) {
    if pairwise.len() == 1 {
        return (true, pairwise[0], 0.0);
    }
    if pairwise.iter().all(|q| *q == Quantity::Infinite) {
        return (true, Quantity::Infinite, 0.0);
    }
    if pairwise.contains(&Quantity::Undefined) {
        return (false, Quantity::Undefined, f64::NAN);
    }
    let finite: Vec<f64> = pairwise.iter().filter_map(|q| q.finite()).collect();
    if finite.len() != pairwise.len() {
        return (false, Quantity::Undefined, f64::INFINITY);
    }
    let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
    if max.signum() != min.signum() {
        return (false, Quantity::Undefined, f64::INFINITY);
    }
    let smallest = finite.iter().fold(f64::INFINITY, |m, t| m.min(t.abs()));
    let spread = (max - min) / smallest;
    if spread <= THERMAL_SPREAD {
        let mean = finite.iter().sum::<f64>() / finite.len() as f64;
        (true, Quantity::Finite(mean), spread)
    } else {
        (false, Quantity::Undefined, spread)
    }
}

/// A spin temperature carried through an ideal adiabat scales with the field.
pub fn adiabatic_temperature_map(ta: f64, b_from: f64, b_to: f64) -> f64 {
    ta * (b_to / b_from)
}

/// Effective temperatures of both spins at the two thermal endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalTemperatures {
    pub a_hot: TemperatureAssessment,
    pub a_cold: TemperatureAssessment,
    pub b_hot: TemperatureAssessment,
    pub b_cold: TemperatureAssessment,
}

pub fn local_temperatures(ends: &CycleEndpoints, red: &ReducedEndpoints) -> Result<LocalTemperatures> {
    let (b1, b2) = (ends.hot.point.b, ends.cold.point.b);
    Ok(LocalTemperatures {
        a_hot: effective_temperature(&red.a_hot, b1)?,
        a_cold: effective_temperature(&red.a_cold, b2)?,
        b_hot: effective_temperature(&red.b_hot, b1)?,
        b_cold: effective_temperature(&red.b_cold, b2)?,
    })
}
