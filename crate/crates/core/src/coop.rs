//! Cycles in which the exchange coupling changes along the adiabats as well
//! as the field. The local-Hamiltonian works then no longer add up to the
//! global work; the remainder is `8(J1 − J2)·Ps`.
//!
//! With mean-field local Hamiltonians
//! `H_A = 2B s_A^z + 4J s_A·⟨S_B⟩` and `H_B = 2B S_B^z + 4J ⟨s_A⟩·S_B`
//! every adiabat contributes its parameter change times the expectation in
//! the state frozen on that adiabat, which splits the global work into
//! `w_A + w_B + w_coop`, where
//! `w_coop = 8(J1 − J2)(cov_1 − cov_2)` and `cov = ⟨s_A·S_B⟩ − ⟨s_A⟩·⟨S_B⟩`.

use crate::error::{Error, Result};
use crate::local::{local_from_endpoints, ReducedEndpoints};
use crate::matrix::RealSymMatrix;
use crate::otto::{cycle_from_endpoints, CycleEndpoints, CycleResult, StrokePoint, IDLE_TOLERANCE};
use crate::quantity::Quantity;
use crate::spin::{PairOperators, SpinQuantumNumber};

/// Hot side `(J1, B1, T1)`, cold side `(J2, B2, T2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedConfig {
    pub s: SpinQuantumNumber,
    pub j1: f64,
    pub j2: f64,
    pub b1: f64,
    pub b2: f64,
    pub t1: f64,
    pub t2: f64,
}

impl GeneralizedConfig {
    pub fn new(s: SpinQuantumNumber, j1: f64, j2: f64, b1: f64, b2: f64, t1: f64, t2: f64) -> Result<Self> {
        let cfg = Self { s, j1, j2, b1, b2, t1, t2 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.j1, self.j2, self.b1, self.b2, self.t1, self.t2];
        if !all.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidConfig("parameters must be finite".into()));
        }
        for j in [self.j1, self.j2] {
            if j < 0.0 {
                return Err(Error::NegativeCoupling(j));
            }
        }
        if self.b1 < 0.0 || self.b2 < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "fields must be non-negative (B1 = {}, B2 = {})",
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
        StrokePoint { j: self.j1, b: self.b1, t: self.t1 }
    }

    pub fn cold(&self) -> StrokePoint {
        StrokePoint { j: self.j2, b: self.b2, t: self.t2 }
    }
}

/// Spin expectation values in one state.
///
/// Index 1 of `a` and `b` holds `Tr(ρ K)` with `K = (S^+ − S^-)/2`; since
/// `S^y = −iK` and ρ is real, `⟨S^y⟩ = −i·Tr(ρK)`, which must vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldSplit {
    pub a: [f64; 3],
    pub b: [f64; 3],
    /// `⟨s_A·S_B⟩`
    pub dot: f64,
    pub covariance: f64,
}

impl MeanFieldSplit {
    /// `⟨s_A⟩·⟨S_B⟩`, with `⟨s^y_A⟩⟨S^y_B⟩ = −Tr(ρK_A)Tr(ρK_B)`.
    pub fn product_of_means(&self) -> f64 {
        self.a[0] * self.b[0] - self.a[1] * self.b[1] + self.a[2] * self.b[2]
    }

    pub fn max_transverse(&self) -> f64 {
        [self.a[0], self.a[1], self.b[0], self.b[1]].iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

pub fn mean_field_split(rho: &RealSymMatrix, ops: &PairOperators) -> Result<MeanFieldSplit> {
    let d = ops.s.pair_dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho.dim() });
    }
    let r = rho.as_dense();
    let a = [r.trace_product(ops.a_x.as_dense()), r.trace_product(&ops.a_k), r.trace_product(ops.a_z.as_dense())];
    let b = [r.trace_product(ops.b_x.as_dense()), r.trace_product(&ops.b_k), r.trace_product(ops.b_z.as_dense())];
    let dot = r.trace_product(ops.interaction.as_dense());
    let mut split = MeanFieldSplit { a, b, dot, covariance: 0.0 };
    split.covariance = dot - split.product_of_means();
    Ok(split)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoopResult {
    pub cycle: CycleResult,
    pub w: f64,
    pub wa_simple: f64,
    pub wb_simple: f64,
    pub ps: f64,
    /// `W − w_A − w_B`
    pub residual: f64,
    pub wa_mf: f64,
    pub wb_mf: f64,
    pub w_coop: f64,
    pub cov1: f64,
    pub cov2: f64,
    pub hot_split: MeanFieldSplit,
    pub cold_split: MeanFieldSplit,
    pub dj: f64,
    pub ratio: Quantity,
}

pub fn coop_from_endpoints(ops: &PairOperators, ends: &CycleEndpoints, red: &ReducedEndpoints) -> Result<CoopResult> {
    let cycle = cycle_from_endpoints(ends);
    let local = local_from_endpoints(ops, ends, red);
    let hot_split = mean_field_split(&ends.hot.state.rho, ops)?;
    let cold_split = mean_field_split(&ends.cold.state.rho, ops)?;
    let dj = ends.hot.point.j - ends.cold.point.j;

    // Both spins receive the same half of the mean-field coupling work.
    let mean_field = 4.0 * dj * (hot_split.product_of_means() - cold_split.product_of_means());
    let wa_mf = local.wa + mean_field;
    let wb_mf = local.wb + mean_field;
    let w_coop = 8.0 * dj * (hot_split.covariance - cold_split.covariance) + 0.0;

    let mut out = CoopResult {
        cycle,
        w: cycle.w,
        wa_simple: local.wa,
        wb_simple: local.wb,
        ps: local.ps,
        residual: cycle.w - local.wa - local.wb,
        wa_mf,
        wb_mf,
        w_coop,
        cov1: hot_split.covariance,
        cov2: cold_split.covariance,
        hot_split,
        cold_split,
        dj,
        ratio: Quantity::Undefined,
    };
    out.ratio = cooperativity_ratio(&out);
    Ok(out)
}

pub fn run_generalized_cycle(cfg: &GeneralizedConfig) -> Result<CoopResult> {
    cfg.validate()?;
    let ops = PairOperators::new(cfg.s);
    let ends = CycleEndpoints::new(&ops, cfg.hot(), cfg.cold())?;
    let red = ReducedEndpoints::new(&ends)?;
    coop_from_endpoints(&ops, &ends, &red)
}

/// `W / (w_A + w_B)` with mean-field local works. A vanishing denominator
/// gives [`Quantity::Infinite`] when work is still produced, otherwise
/// [`Quantity::Undefined`].
pub fn cooperativity_ratio(cr: &CoopResult) -> Quantity {
    let local = cr.wa_mf + cr.wb_mf;
    if local == 0.0 {
        if cr.w.abs() > IDLE_TOLERANCE {
            Quantity::Infinite
        } else {
            Quantity::Undefined
        }
    } else {
        Quantity::Finite(cr.w / local)
    }
}

/// `1 + Δcov / Δ(⟨s_A⟩·⟨S_B⟩)`, which equals [`cooperativity_ratio`] for a
/// cycle that changes only the coupling.
pub fn closed_form_ratio(cr: &CoopResult) -> Quantity {
    let den = cr.hot_split.product_of_means() - cr.cold_split.product_of_means();
    if den == 0.0 {
        return Quantity::Undefined;
    }
    Quantity::Finite(1.0 + (cr.cov1 - cr.cov2) / den)
}
