//! Spin operators, the two-spin Heisenberg + Zeeman Hamiltonian and its
//! closed-form spectrum.
//!
//! Basis convention for the pair: spin A (the spin-1/2) is the slow index,
//! spin B the fast one, and each factor is ordered by descending
//! magnetization. Pair index `a * (2s + 1) + k` therefore means
//! `m_A = 1/2 - a`, `m_B = s - k`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, RealSymMatrix};

/// Half-integer spin magnitude, stored as `2s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinQuantumNumber(u32);

impl SpinQuantumNumber {
    pub const HALF: Self = Self(1);

    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice < 1 {
            return Err(Error::InvalidSpin(twice));
        }
        Ok(Self(twice))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Number of magnetization states, `2s + 1`.
    pub fn multiplicity(self) -> usize {
        self.0 as usize + 1
    }

    /// Dimension of the spin-1/2 ⊗ spin-s pair space.
    pub fn pair_dim(self) -> usize {
        2 * self.multiplicity()
    }

    /// The six spins studied for the engine: 1/2, 1, ..., 3.
    pub fn studied() -> [Self; 6] {
        [Self(1), Self(2), Self(3), Self(4), Self(5), Self(6)]
    }
}

impl fmt::Display for SpinQuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for SpinQuantumNumber {
    type Err = Error;

    /// Accepts `"3/2"`, `"1.5"` or `"2"`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::SpinParse(text.to_string());
        let twice = if let Some((num, den)) = text.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            match den.trim() {
                "1" => num.checked_mul(2).ok_or_else(bad)?,
                "2" => num,
                _ => return Err(bad()),
            }
        } else {
            let v: f64 = text.parse().map_err(|_| bad())?;
            let t = 2.0 * v;
            if !t.is_finite() || t.fract() != 0.0 || t < 0.0 || t > f64::from(u32::MAX) {
                return Err(bad());
            }
            t as u32
        };
        Self::from_twice(twice)
    }
}

/// `S^z`, `S^+` and `S^-` for one spin in the descending-`m` basis.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sz: RealSymMatrix,
    pub splus: DenseMatrix,
    pub sminus: DenseMatrix,
}

pub fn spin_operators(s: SpinQuantumNumber) -> SpinOperators {
    let n = s.multiplicity();
    let sv = s.value();
    let m_of = |k: usize| sv - k as f64;
    let diag: Vec<f64> = (0..n).map(m_of).collect();
    let mut splus = DenseMatrix::zeros(n, n);
    // S^+ |m> = sqrt(s(s+1) - m(m+1)) |m+1>, and |m+1> sits one row above |m>.
    for k in 1..n {
        let m = m_of(k);
        splus[(k - 1, k)] = (sv * (sv + 1.0) - m * (m + 1.0)).sqrt();
    }
    let sminus = splus.transpose();
    SpinOperators {
        sz: RealSymMatrix::new(DenseMatrix::from_diagonal(&diag)).expect("diagonal is symmetric"),
        splus,
        sminus,
    }
}

/// Operators on the pair space that the thermodynamic analyses need.
///
/// The y components are imaginary; for real matrices we keep
/// `K = (S^+ - S^-)/2`, so that `S^y = -i K`.
#[derive(Debug, Clone)]
pub struct PairOperators {
    pub s: SpinQuantumNumber,
    /// `s_A · S_B`
    pub interaction: RealSymMatrix,
    /// `s_A^z + S_B^z`
    pub zeeman: RealSymMatrix,
    pub a_z: RealSymMatrix,
    pub b_z: RealSymMatrix,
    pub a_x: RealSymMatrix,
    pub b_x: RealSymMatrix,
    pub a_k: DenseMatrix,
    pub b_k: DenseMatrix,
}

impl PairOperators {
    pub fn new(s: SpinQuantumNumber) -> Self {
        let a = spin_operators(SpinQuantumNumber::HALF);
        let b = spin_operators(s);
        let id_a = DenseMatrix::identity(2);
        let id_b = DenseMatrix::identity(s.multiplicity());

        let az = a.sz.as_dense().kron(&id_b);
        let bz = id_a.kron(b.sz.as_dense());
        let flip = &a.splus.kron(&b.sminus) + &a.sminus.kron(&b.splus);
        let interaction = &a.sz.as_dense().kron(b.sz.as_dense()) + &flip.scale(0.5);
        let zeeman = &az + &bz;

        let ax = (&a.splus + &a.sminus).scale(0.5).kron(&id_b);
        let bx = id_a.kron(&(&b.splus + &b.sminus).scale(0.5));
        let ak = (&a.splus - &a.sminus).scale(0.5).kron(&id_b);
        let bk = id_a.kron(&(&b.splus - &b.sminus).scale(0.5));

        let sym = |m: DenseMatrix| RealSymMatrix::new(m).expect("spin operator is symmetric");
        Self {
            s,
            interaction: sym(interaction),
            zeeman: sym(zeeman),
            a_z: sym(az),
            b_z: sym(bz),
            a_x: sym(ax),
            b_x: sym(bx),
            a_k: ak,
            b_k: bk,
        }
    }

    /// `8 J s_A·S_B + 2 B (s_A^z + S_B^z)`.
    pub fn hamiltonian(&self, j: f64, b: f64) -> Result<PairHamiltonian> {
        if !(j >= 0.0) {
            return Err(Error::NegativeCoupling(j));
        }
        if !b.is_finite() || !j.is_finite() {
            return Err(Error::InvalidConfig(format!("non-finite parameters J = {j}, B = {b}")));
        }
        let matrix = self.interaction.linear_combination(8.0 * j, &self.zeeman, 2.0 * b);
        Ok(PairHamiltonian {
            s: self.s,
            j,
            b,
            matrix,
            interaction: self.interaction.clone(),
            zeeman: self.zeeman.clone(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct PairHamiltonian {
    pub s: SpinQuantumNumber,
    pub j: f64,
    pub b: f64,
    pub matrix: RealSymMatrix,
    pub interaction: RealSymMatrix,
    pub zeeman: RealSymMatrix,
}

pub fn build_hamiltonian(s: SpinQuantumNumber, j: f64, b: f64) -> Result<PairHamiltonian> {
    PairOperators::new(s).hamiltonian(j, b)
}

/// Total-spin sector of a coupled level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// `j = s + 1/2`
    Upper,
    /// `j = s - 1/2`
    Lower,
}

/// One eigenstate of the pair Hamiltonian labelled by `(sector, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub sector: Sector,
    /// Twice the total magnetization.
    pub twice_m: i32,
    pub energy: f64,
}

/// All `2(2s+1)` levels in a fixed label order: upper sector first, then
/// lower, each by ascending `m`. The order is the same for every `(J, B)`,
/// so index `n` labels the same eigenstate across an adiabatic stroke.
pub fn analytic_levels(s: SpinQuantumNumber, j: f64, b: f64) -> Vec<Level> {
    let ts = s.twice() as i32;
    let mut out = Vec::with_capacity(s.pair_dim());
    // Upper sector: 4Js + 2Bm, 2m = -(2s+1) ..= 2s+1 in steps of 2.
    for twice_m in (-(ts + 1)..=(ts + 1)).step_by(2) {
        let energy = 2.0 * j * f64::from(ts) + b * f64::from(twice_m);
        out.push(Level { sector: Sector::Upper, twice_m, energy });
    }
    // Lower sector: -4J(s+1) + 2Bm, 2m = -(2s-1) ..= 2s-1.
    for twice_m in (-(ts - 1)..=(ts - 1)).step_by(2) {
        let energy = -2.0 * j * f64::from(ts + 2) + b * f64::from(twice_m);
        out.push(Level { sector: Sector::Lower, twice_m, energy });
    }
    out
}

/// Closed-form levels sorted by ascending energy.
pub fn analytic_spectrum(s: SpinQuantumNumber, j: f64, b: f64) -> Vec<Level> {
    let mut levels = analytic_levels(s, j, b);
    levels.sort_by(|x, y| x.energy.total_cmp(&y.energy));
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spin(t: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(t).unwrap()
    }

    fn energies(levels: &[Level]) -> Vec<f64> {
        levels.iter().map(|l| l.energy).collect()
    }

    #[test]
    fn parses_fraction_and_decimal() {
        assert_eq!("3/2".parse::<SpinQuantumNumber>().unwrap().twice(), 3);
        assert_eq!("1.5".parse::<SpinQuantumNumber>().unwrap().twice(), 3);
        assert_eq!("2".parse::<SpinQuantumNumber>().unwrap().twice(), 4);
        assert_eq!("2/1".parse::<SpinQuantumNumber>().unwrap().twice(), 4);
        assert!("0".parse::<SpinQuantumNumber>().is_err());
        assert!("0.75".parse::<SpinQuantumNumber>().is_err());
        assert!("3/4".parse::<SpinQuantumNumber>().is_err());
        assert!("-1/2".parse::<SpinQuantumNumber>().is_err());
        assert_eq!(SpinQuantumNumber::from_twice(0), Err(Error::InvalidSpin(0)));
        assert_eq!(spin(5).to_string(), "5/2");
        assert_eq!(spin(6).to_string(), "3");
    }

    #[test]
    fn spin_half_operators() {
        let ops = spin_operators(spin(1));
        assert_eq!(ops.sz.diagonal(), vec![0.5, -0.5]);
        assert_eq!(ops.splus.as_slice(), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(ops.sminus.as_slice(), &[0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn ladder_coefficients() {
        let one = spin_operators(spin(2));
        assert_eq!(one.sz.diagonal(), vec![1.0, 0.0, -1.0]);
        let r2 = 2f64.sqrt();
        assert!((one.splus[(0, 1)] - r2).abs() < 1e-15);
        assert!((one.splus[(1, 2)] - r2).abs() < 1e-15);

        let three_halves = spin_operators(spin(3));
        let r3 = 3f64.sqrt();
        let got = [three_halves.splus[(0, 1)], three_halves.splus[(1, 2)], three_halves.splus[(2, 3)]];
        for (g, e) in got.iter().zip([r3, 2.0, r3]) {
            assert!((g - e).abs() < 1e-15);
        }
        let nonzero = three_halves.splus.as_slice().iter().filter(|x| **x != 0.0).count();
        assert_eq!(nonzero, 3);
    }

    #[test]
    fn sz_splus_commutator() {
        for s in SpinQuantumNumber::studied() {
            let ops = spin_operators(s);
            let sz = ops.sz.as_dense();
            let comm = &(sz * &ops.splus) - &(&ops.splus * sz);
            let diff = &comm - &ops.splus;
            assert!(diff.max_abs() <= 1e-14, "s = {s}");
        }
    }

    #[test]
    fn spin_half_pair_matrix_elements() {
        let (j, b) = (0.7, 1.3);
        let h = build_hamiltonian(spin(1), j, b).unwrap();
        let m = h.matrix.as_dense();
        let diag = h.matrix.diagonal();
        let expected = [2.0 * j + 2.0 * b, -2.0 * j, -2.0 * j, 2.0 * j - 2.0 * b];
        for (d, e) in diag.iter().zip(expected) {
            assert!((d - e).abs() < 1e-15);
        }
        assert!((m[(1, 2)] - 4.0 * j).abs() < 1e-15);
        assert!((m[(2, 1)] - 4.0 * j).abs() < 1e-15);
        for i in 0..4 {
            for k in 0..4 {
                if i != k && !((i, k) == (1, 2) || (i, k) == (2, 1)) {
                    assert_eq!(m[(i, k)], 0.0);
                }
            }
        }
    }

    #[test]
    fn uncoupled_pair_is_diagonal_zeeman() {
        for s in SpinQuantumNumber::studied() {
            let h = build_hamiltonian(s, 0.0, 1.7).unwrap();
            let mult = s.multiplicity();
            for i in 0..s.pair_dim() {
                for k in 0..s.pair_dim() {
                    let v = h.matrix.get(i, k);
                    if i == k {
                        let ma = 0.5 - (i / mult) as f64;
                        let mb = s.value() - (i % mult) as f64;
                        assert!((v - 2.0 * 1.7 * (ma + mb)).abs() < 1e-14);
                    } else {
                        assert_eq!(v, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_negative_coupling() {
        assert!(matches!(build_hamiltonian(spin(2), -0.1, 1.0), Err(Error::NegativeCoupling(_))));
    }

    #[test]
    fn conserves_total_magnetization_and_is_traceless() {
        for s in SpinQuantumNumber::studied() {
            let h = build_hamiltonian(s, 1.3, -0.4).unwrap();
            let mag = h.zeeman.diagonal();
            for i in 0..s.pair_dim() {
                for k in 0..s.pair_dim() {
                    if mag[i] != mag[k] {
                        assert_eq!(h.matrix.get(i, k), 0.0);
                    }
                }
            }
            assert_eq!(h.interaction.trace(), 0.0);
            assert_eq!(h.zeeman.trace(), 0.0);
        }
    }

    #[test]
    fn closed_form_tables() {
        assert_eq!(energies(&analytic_spectrum(spin(1), 1.0, 2.0)), vec![-6.0, -2.0, 2.0, 6.0]);
        assert_eq!(energies(&analytic_spectrum(spin(2), 1.0, 1.0)), vec![-9.0, -7.0, 1.0, 3.0, 5.0, 7.0]);
        assert_eq!(energies(&analytic_spectrum(spin(2), 0.0, 1.0)), vec![-3.0, -1.0, -1.0, 1.0, 1.0, 3.0]);
    }

    /// Every tabulated (1/2, s) eigenvalue list, written as (coefficient of B, coefficient of J).
    #[test]
    fn matches_tabulated_eigenvalues() {
        let tables: [(u32, &[(f64, f64)]); 6] = [
            (1, &[(0.0, -6.0), (-2.0, 2.0), (0.0, 2.0), (2.0, 2.0)]),
            (2, &[(-1.0, -8.0), (1.0, -8.0), (-3.0, 4.0), (-1.0, 4.0), (1.0, 4.0), (3.0, 4.0)]),
            (
                3,
                &[
                    (-2.0, -10.0),
                    (0.0, -10.0),
                    (2.0, -10.0),
                    (-2.0, 6.0),
                    (-4.0, 6.0),
                    (0.0, 6.0),
                    (2.0, 6.0),
                    (4.0, 6.0),
                ],
            ),
            (
                4,
                &[
                    (-3.0, -12.0),
                    (-1.0, -12.0),
                    (1.0, -12.0),
                    (3.0, -12.0),
                    (-5.0, 8.0),
                    (-3.0, 8.0),
                    (-1.0, 8.0),
                    (1.0, 8.0),
                    (3.0, 8.0),
                    (5.0, 8.0),
                ],
            ),
            (
                5,
                &[
                    (-4.0, -14.0),
                    (-2.0, -14.0),
                    (0.0, -14.0),
                    (2.0, -14.0),
                    (4.0, -14.0),
                    (-2.0, 10.0),
                    (-4.0, 10.0),
                    (-6.0, 10.0),
                    (0.0, 10.0),
                    (2.0, 10.0),
                    (4.0, 10.0),
                    (6.0, 10.0),
                ],
            ),
            (
                6,
                &[
                    (-5.0, -16.0),
                    (-3.0, -16.0),
                    (-1.0, -16.0),
                    (1.0, -16.0),
                    (3.0, -16.0),
                    (5.0, -16.0),
                    (-3.0, 12.0),
                    (3.0, 12.0),
                    (-7.0, 12.0),
                    (-5.0, 12.0),
                    (-1.0, 12.0),
                    (1.0, 12.0),
                    (5.0, 12.0),
                    (7.0, 12.0),
                ],
            ),
        ];
        for (j, b) in [(0.3, 4.0), (1.7, -0.9), (2.0, 3.0)] {
            for (twice, table) in tables {
                let mut expected: Vec<f64> = table.iter().map(|(cb, cj)| cb * b + cj * j).collect();
                expected.sort_by(f64::total_cmp);
                let got = energies(&analytic_spectrum(spin(twice), j, b));
                assert_eq!(got.len(), expected.len());
                for (g, e) in got.iter().zip(&expected) {
                    assert!((g - e).abs() < 1e-12, "2s = {twice}: {got:?} vs {expected:?}");
                }
            }
        }
    }
}
