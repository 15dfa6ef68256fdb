//! Gibbs states of a diagonalized Hamiltonian and their single-spin marginals.

use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, RealSymMatrix};
use crate::spin::SpinQuantumNumber;

#[derive(Debug, Clone, PartialEq)]
pub struct ThermalState {
    pub temperature: f64,
    /// Occupations aligned with the spectrum's ascending energies.
    pub probabilities: Vec<f64>,
    pub log_partition: f64,
    pub rho: RealSymMatrix,
}

/// Boltzmann weights relative to the ground energy so that nothing underflows
/// to an all-zero vector at small `T` or large couplings.
pub fn boltzmann_probabilities(energies: &[f64], temperature: f64) -> Result<(Vec<f64>, f64)> {
    if !(temperature > 0.0) {
        return Err(Error::NonPositiveTemperature(temperature));
    }
    let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let weights: Vec<f64> = energies.iter().map(|e| (-(e - e_min) / temperature).exp()).collect();
    let sum: f64 = weights.iter().sum();
    let probs = weights.iter().map(|w| w / sum).collect();
    Ok((probs, sum.ln() - e_min / temperature))
}

pub fn gibbs_state(spec: &Spectrum, temperature: f64) -> Result<ThermalState> {
    let (probabilities, log_partition) = boltzmann_probabilities(&spec.energies, temperature)?;
    let d = spec.dim();
    let mut rho = DenseMatrix::zeros(d, d);
    for (n, &p) in probabilities.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        for i in 0..d {
            let vi = spec.eigvecs[(i, n)] * p;
            if vi == 0.0 {
                continue;
            }
            for k in 0..d {
                rho[(i, k)] += vi * spec.eigvecs[(k, n)];
            }
        }
    }
    Ok(ThermalState { temperature, probabilities, log_partition, rho: RealSymMatrix::symmetrized(rho)? })
}

impl ThermalState {
    /// `Tr(ρ X)`
    pub fn expectation(&self, op: &DenseMatrix) -> f64 {
        self.rho.as_dense().trace_product(op)
    }

    pub fn purity(&self) -> f64 {
        self.rho.as_dense().trace_product(self.rho.as_dense())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// The spin-1/2.
    A,
    /// The spin-s.
    B,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedState {
    pub subsystem: Subsystem,
    pub rho: RealSymMatrix,
}

impl ReducedState {
    pub fn dim(&self) -> usize {
        self.rho.dim()
    }

    /// Diagonal populations, descending magnetization order.
    pub fn populations(&self) -> Vec<f64> {
        self.rho.diagonal()
    }

    /// Largest off-diagonal magnitude.
    pub fn max_coherence(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.rho.get(i, j).abs());
                }
            }
        }
        m
    }
}

/// `(ρ_A)_{ab} = Σ_k ρ_{(a,k),(b,k)}` and `(ρ_B)_{kl} = Σ_a ρ_{(a,k),(a,l)}`.
pub fn partial_trace(rho: &RealSymMatrix, s: SpinQuantumNumber, keep: Subsystem) -> Result<ReducedState> {
    let nb = s.multiplicity();
    let d = s.pair_dim();
    if rho.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rho.dim() });
    }
    let reduced = match keep {
        Subsystem::A => {
            let mut out = DenseMatrix::zeros(2, 2);
            for a in 0..2 {
                for b in 0..2 {
                    out[(a, b)] = (0..nb).map(|k| rho.get(a * nb + k, b * nb + k)).sum();
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = DenseMatrix::zeros(nb, nb);
            for k in 0..nb {
                for l in 0..nb {
                    out[(k, l)] = (0..2).map(|a| rho.get(a * nb + k, a * nb + l)).sum();
                }
            }
            out
        }
    };
    Ok(ReducedState { subsystem: keep, rho: RealSymMatrix::symmetrized(reduced)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::{diagonalize, jacobi_eigen};
    use crate::spin::{build_hamiltonian, spin_operators};

    fn spin(t: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(t).unwrap()
    }

    #[test]
    fn rejects_non_positive_temperature() {
        let spec = diagonalize(&build_hamiltonian(spin(1), 0.1, 4.0).unwrap()).unwrap();
        assert_eq!(gibbs_state(&spec, 0.0), Err(Error::NonPositiveTemperature(0.0)));
        assert!(gibbs_state(&spec, -1.0).is_err());
        assert!(gibbs_state(&spec, f64::NAN).is_err());
    }

    #[test]
    fn infinite_temperature_limit_is_uniform() {
        let spec = diagonalize(&build_hamiltonian(spin(4), 0.5, 2.0).unwrap()).unwrap();
        let st = gibbs_state(&spec, 1e12).unwrap();
        let d = spec.dim() as f64;
        for p in &st.probabilities {
            assert!((p - 1.0 / d).abs() < 1e-10);
        }
    }

    #[test]
    fn two_level_boltzmann() {
        let (b, t) = (1.3, 0.7);
        let (p, _) = boltzmann_probabilities(&[-b, b], t).unwrap();
        assert!((p[0] - 1.0 / (1.0 + (-2.0 * b / t).exp())).abs() < 1e-15);
    }

    #[test]
    fn log_partition_matches_direct_sum() {
        let e = [-1.0, 0.5, 2.0];
        let (_, ln_z) = boltzmann_probabilities(&e, 0.8).unwrap();
        let direct: f64 = e.iter().map(|x| (-x / 0.8).exp()).sum::<f64>().ln();
        assert!((ln_z - direct).abs() < 1e-14);
    }

    #[test]
    fn survives_extreme_gaps() {
        let (p, _) = boltzmann_probabilities(&[-1e4, 0.0, 1e4], 1e-3).unwrap();
        assert_eq!(p[0], 1.0);
        assert!(p.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        let ra = DenseMatrix::from_rows(&[&[0.7, 0.1], &[0.1, 0.3]]);
        let rb = DenseMatrix::from_rows(&[&[0.5, 0.05, 0.0], &[0.05, 0.3, 0.02], &[0.0, 0.02, 0.2]]);
        let rho = RealSymMatrix::new(ra.kron(&rb)).unwrap();
        let a = partial_trace(&rho, spin(2), Subsystem::A).unwrap();
        let b = partial_trace(&rho, spin(2), Subsystem::B).unwrap();
        assert!((a.rho.as_dense() - &ra).max_abs() < 1e-15);
        assert!((b.rho.as_dense() - &rb).max_abs() < 1e-15);
    }

    #[test]
    fn maximally_mixed_reduces_to_maximally_mixed() {
        let s = spin(5);
        let d = s.pair_dim();
        let rho = RealSymMatrix::new(DenseMatrix::identity(d).scale(1.0 / d as f64)).unwrap();
        let a = partial_trace(&rho, s, Subsystem::A).unwrap();
        let b = partial_trace(&rho, s, Subsystem::B).unwrap();
        assert!((a.rho.as_dense() - &DenseMatrix::identity(2).scale(0.5)).max_abs() < 1e-15);
        let nb = s.multiplicity();
        let expected = DenseMatrix::identity(nb).scale(1.0 / nb as f64);
        assert!((b.rho.as_dense() - &expected).max_abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = RealSymMatrix::new(DenseMatrix::identity(4)).unwrap();
        assert_eq!(partial_trace(&rho, spin(2), Subsystem::A), Err(Error::DimensionMismatch { expected: 6, found: 4 }));
    }

    #[test]
    fn uncoupled_marginal_is_single_spin_gibbs() {
        let (b, t) = (4.0, 1.0);
        for s in SpinQuantumNumber::studied() {
            let spec = diagonalize(&build_hamiltonian(s, 0.0, b).unwrap()).unwrap();
            let st = gibbs_state(&spec, t).unwrap();
            let ra = partial_trace(&st.rho, s, Subsystem::A).unwrap();
            let sz = spin_operators(spin(1)).sz;
            let single = jacobi_eigen(&sz.linear_combination(2.0 * b, &sz, 0.0)).unwrap();
            let single_state = gibbs_state(&single, t).unwrap();
            assert!((ra.rho.as_dense() - single_state.rho.as_dense()).max_abs() < 1e-12);
        }
    }
}
