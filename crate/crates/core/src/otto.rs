//! The four-stroke quantum Otto cycle: two isochoric thermalizations joined
//! by two ideal quantum adiabats.
//!
//! Level pairing across an adiabat. Both Hamiltonians of a cycle are built
//! from `s_A·S_B` and `s_A^z + S_B^z`, which commute, so they share the
//! coupled `|j, m⟩` eigenbasis and an adiabat only moves energies. For
//! numerically obtained eigenvectors the pairing is carried by the overlap
//! weights `O_nm = |⟨ψ_n|ψ'_m⟩|²`, which form a permutation up to rotations
//! inside degenerate subspaces. Summing over `O_nm` never relies on sorted
//! order, so it stays correct at level crossings.

use crate::eigen::{diagonalize, Spectrum};
use crate::error::{Error, Result};
use crate::spin::{analytic_levels, PairHamiltonian, PairOperators, SpinQuantumNumber};
use crate::thermal::{boltzmann_probabilities, gibbs_state, ThermalState};

/// Works or heats with magnitude at or below this are classified idle.
pub const IDLE_TOLERANCE: f64 = 1e-13;
/// Bisection width for positive-work boundaries.
pub const PWC_RESOLUTION: f64 = 1e-6;

/// Parameters held fixed during one isochoric stroke.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrokePoint {
    pub j: f64,
    pub b: f64,
    pub t: f64,
}

/// Hamiltonian, spectrum and equilibrium state at the end of an isochore.
#[derive(Debug, Clone)]
pub struct Endpoint {
    pub point: StrokePoint,
    pub hamiltonian: PairHamiltonian,
    pub spectrum: Spectrum,
    pub state: ThermalState,
}

impl Endpoint {
    pub fn new(ops: &PairOperators, point: StrokePoint) -> Result<Self> {
        let hamiltonian = ops.hamiltonian(point.j, point.b)?;
        let spectrum = diagonalize(&hamiltonian)?;
        let state = gibbs_state(&spectrum, point.t)?;
        Ok(Self { point, hamiltonian, spectrum, state })
    }
}

/// The two thermal endpoints of a cycle: after stage 1 (hot) and stage 3 (cold).
#[derive(Debug, Clone)]
pub struct CycleEndpoints {
    pub s: SpinQuantumNumber,
    pub hot: Endpoint,
    pub cold: Endpoint,
}

impl CycleEndpoints {
    pub fn new(ops: &PairOperators, hot: StrokePoint, cold: StrokePoint) -> Result<Self> {
        Ok(Self { s: ops.s, hot: Endpoint::new(ops, hot)?, cold: Endpoint::new(ops, cold)? })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Heats {
    pub q1: f64,
    pub q2: f64,
    pub w: f64,
}

/// `Q1 = Σ E_n (P_n − P'_n)`, `Q2 = Σ E'_n (P'_n − P_n)`, `W = Q1 + Q2`, with
/// level `n` of the hot spectrum transported onto the cold one through the
/// overlap weights. Energies are measured from each spectrum's ground level,
/// which changes nothing since both distributions are normalized.
#[allow(clippy::needless_range_loop)]
pub fn exchanged_heats(hot: &Spectrum, hot_probs: &[f64], cold: &Spectrum, cold_probs: &[f64]) -> Heats {
    let d = hot.dim();
    assert_eq!(cold.dim(), d);
    let (c1, c2) = (hot.ground_energy(), cold.ground_energy());
    let mut q1 = 0.0;
    let mut q2 = 0.0;
    for n in 0..d {
        for m in 0..d {
            let overlap: f64 = (0..d).map(|i| hot.eigvecs[(i, n)] * cold.eigvecs[(i, m)]).sum();
            let weight = overlap * overlap;
            if weight == 0.0 {
                continue;
            }
            let dp = hot_probs[n] - cold_probs[m];
            q1 += weight * (hot.energies[n] - c1) * dp;
            q2 -= weight * (cold.energies[m] - c2) * dp;
        }
    }
    Heats { q1, q2, w: q1 + q2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleMode {
    Engine,
    Refrigerator,
    Heater,
    Idle,
}

impl CycleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Engine => "engine",
            Self::Refrigerator => "refrigerator",
            Self::Heater => "heater",
            Self::Idle => "idle",
        }
    }
}

pub fn classify(heats: Heats) -> CycleMode {
    let Heats { q1, q2, w } = heats;
    if w > IDLE_TOLERANCE && q1 > 0.0 && q2 < 0.0 {
        CycleMode::Engine
    } else if w < -IDLE_TOLERANCE && q2 > 0.0 && q1 < 0.0 {
        CycleMode::Refrigerator
    } else if w.abs() <= IDLE_TOLERANCE {
        CycleMode::Idle
    } else {
        CycleMode::Heater
    }
}

/// Fixed-coupling cycle driven by the field: `B1 > B2 > 0`, `T1 > T2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub s: SpinQuantumNumber,
    pub j: f64,
    pub b1: f64,
    pub b2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl EngineConfig {
    pub fn new(s: SpinQuantumNumber, j: f64, b1: f64, b2: f64, t1: f64, t2: f64) -> Result<Self> {
        let cfg = Self { s, j, b1, b2, t1, t2 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.j, self.b1, self.b2, self.t1, self.t2].iter().all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidConfig("parameters must be finite".into()));
        }
        if !(self.j >= 0.0) {
            return Err(Error::NegativeCoupling(self.j));
        }
        if !(self.b1 > self.b2 && self.b2 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "fields must satisfy B1 > B2 > 0 (B1 = {}, B2 = {})",
                self.b1, self.b2
            )));
        }
        if !(self.t1 > self.t2 && self.t2 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "temperatures must satisfy T1 > T2 > 0 (T1 = {}, T2 = {})",
                self.t1, self.t2
            )));
        }
        Ok(())
    }

    pub fn hot(&self) -> StrokePoint {
        StrokePoint { j: self.j, b: self.b1, t: self.t1 }
    }

    pub fn cold(&self) -> StrokePoint {
        StrokePoint { j: self.j, b: self.b2, t: self.t2 }
    }

    pub fn endpoints(&self, ops: &PairOperators) -> Result<CycleEndpoints> {
        debug_assert_eq!(ops.s, self.s);
        CycleEndpoints::new(ops, self.hot(), self.cold())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleResult {
    pub q1: f64,
    pub q2: f64,
    pub w: f64,
    /// `W / Q1`, only in engine mode.
    pub eta: Option<f64>,
    pub mode: CycleMode,
    /// Two-spin-1/2 bound; absent when `4J >= B1` or the coupling varies.
    pub eta_bound: Option<f64>,
    pub eta_carnot: f64,
    pub eta_uncoupled: f64,
}

fn assemble(heats: Heats, hot: StrokePoint, cold: StrokePoint) -> CycleResult {
    let mode = classify(heats);
    let eta = (mode == CycleMode::Engine).then(|| heats.w / heats.q1);
    let eta_bound = if hot.j == cold.j { efficiency_bound(hot.j, hot.b, cold.b).ok() } else { None };
    CycleResult {
        q1: heats.q1,
        q2: heats.q2,
        w: heats.w,
        eta,
        mode,
        eta_bound,
        eta_carnot: 1.0 - cold.t / hot.t,
        eta_uncoupled: 1.0 - cold.b / hot.b,
    }
}

/// Cycle quantities from already-evaluated endpoints. No ordering checks are
/// made on the parameters.
pub fn cycle_from_endpoints(ends: &CycleEndpoints) -> CycleResult {
    let heats = exchanged_heats(
        &ends.hot.spectrum,
        &ends.hot.state.probabilities,
        &ends.cold.spectrum,
        &ends.cold.state.probabilities,
    );
    assemble(heats, ends.hot.point, ends.cold.point)
}

pub fn run_cycle(cfg: &EngineConfig) -> Result<CycleResult> {
    cfg.validate()?;
    let ops = PairOperators::new(cfg.s);
    Ok(cycle_from_endpoints(&cfg.endpoints(&ops)?))
}

/// Same cycle evaluated from the closed-form `(sector, m)` levels, pairing
/// levels by label. Independent of the eigensolver.
pub fn run_cycle_analytic(s: SpinQuantumNumber, hot: StrokePoint, cold: StrokePoint) -> Result<CycleResult> {
    let e1: Vec<f64> = analytic_levels(s, hot.j, hot.b).iter().map(|l| l.energy).collect();
    let e2: Vec<f64> = analytic_levels(s, cold.j, cold.b).iter().map(|l| l.energy).collect();
    let (p1, _) = boltzmann_probabilities(&e1, hot.t)?;
    let (p2, _) = boltzmann_probabilities(&e2, cold.t)?;
    let c1 = e1.iter().copied().fold(f64::INFINITY, f64::min);
    let c2 = e2.iter().copied().fold(f64::INFINITY, f64::min);
    let mut q1 = 0.0;
    let mut q2 = 0.0;
    for n in 0..e1.len() {
        q1 += (e1[n] - c1) * (p1[n] - p2[n]);
        q2 += (e2[n] - c2) * (p2[n] - p1[n]);
    }
    Ok(assemble(Heats { q1, q2, w: q1 + q2 }, hot, cold))
}

/// `(1 − B2/B1) / (1 − 4J/B1)`, defined for `4J < B1`.
pub fn efficiency_bound(j: f64, b1: f64, b2: f64) -> Result<f64> {
    if !(4.0 * j < b1) {
        return Err(Error::BoundDomain { j, b1 });
    }
    Ok((1.0 - b2 / b1) / (1.0 - 4.0 * j / b1))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongCouplingLimits {
    pub eta_limit: f64,
    /// Limit of `W / w_A`.
    pub w_over_wa: f64,
    /// Limit of `W / w_B`.
    pub w_over_wb: f64,
}

/// `J → ∞`: only the `j = s − 1/2` multiplet stays populated, an equally
/// spaced ladder of `2s` levels (a single level when `s = 1/2`).
pub fn strong_coupling_limits(s: SpinQuantumNumber, b1: f64, b2: f64) -> StrongCouplingLimits {
    let two_s = f64::from(s.twice());
    let eta_limit = if s.twice() == 1 { 0.0 } else { 1.0 - b2 / b1 };
    StrongCouplingLimits { eta_limit, w_over_wa: -(two_s + 1.0), w_over_wb: (two_s + 1.0) / (two_s + 2.0) }
}

/// Locates every sign change of `W > 0` between adjacent grid points and
/// refines it by bisection to [`PWC_RESOLUTION`].
pub fn positive_work_boundaries<F>(grid: &[f64], works: &[f64], mut work_at: F) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert_eq!(grid.len(), works.len());
    let mut out = Vec::new();
    for i in 1..grid.len() {
        let left_positive = works[i - 1] > 0.0;
        if left_positive == (works[i] > 0.0) {
            continue;
        }
        let (mut lo, mut hi) = (grid[i - 1], grid[i]);
        while (hi - lo).abs() > PWC_RESOLUTION {
            let mid = 0.5 * (lo + hi);
            if (work_at(mid)? > 0.0) == left_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Positive-work boundaries in `J` for a field-driven cycle with the other
/// parameters taken from `base`.
pub fn critical_couplings(base: &EngineConfig, j_grid: &[f64]) -> Result<Vec<f64>> {
    let ops = PairOperators::new(base.s);
    let work = |j: f64| -> Result<f64> {
        let cfg = EngineConfig { j, ..*base };
        cfg.validate()?;
        Ok(cycle_from_endpoints(&cfg.endpoints(&ops)?).w)
    };
    let works = j_grid.iter().map(|&j| work(j)).collect::<Result<Vec<_>>>()?;
    positive_work_boundaries(j_grid, &works, work)
}
