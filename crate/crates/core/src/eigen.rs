//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, RealSymMatrix};
use crate::spin::PairHamiltonian;

/// Off-diagonal Frobenius norm target, relative to `‖A‖_F`.
pub const JACOBI_TOLERANCE: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order; column `n` of `eigvecs` belongs to `energies[n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub energies: Vec<f64>,
    pub eigvecs: DenseMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn eigvec(&self, n: usize) -> Vec<f64> {
        self.eigvecs.column(n)
    }

    /// The same eigenbasis with every energy moved by `c`.
    pub fn shifted(&self, c: f64) -> Self {
        Self { energies: self.energies.iter().map(|e| e + c).collect(), eigvecs: self.eigvecs.clone() }
    }

    /// `V · diag(E) · Vᵀ`
    pub fn reconstruct(&self) -> DenseMatrix {
        let scaled = {
            let mut m = self.eigvecs.clone();
            for i in 0..m.rows() {
                for (n, e) in self.energies.iter().enumerate() {
                    m[(i, n)] *= e;
                }
            }
            m
        };
        &scaled * &self.eigvecs.transpose()
    }
}

pub fn diagonalize(h: &PairHamiltonian) -> Result<Spectrum> {
    jacobi_eigen(&h.matrix)
}

pub fn jacobi_eigen(matrix: &RealSymMatrix) -> Result<Spectrum> {
    let n = matrix.dim();
    let mut a = matrix.as_dense().clone();
    let mut v = DenseMatrix::identity(n);
    let threshold = JACOBI_TOLERANCE * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > threshold {
        return Err(Error::NotConverged(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let energies = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigvecs = DenseMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigvecs[(row, col)] = v[(row, src)];
        }
    }
    Ok(Spectrum { energies, eigvecs })
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc.sqrt()
}

/// One plane rotation `A ← Jᵀ A J`, `V ← V J` annihilating `A[p][q]`.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.is_infinite() { 0.5 / theta } else { theta.signum() / (theta.abs() + theta.hypot(1.0)) };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}
