//! Cyclic Jacobi eigensolver for dense real symmetric matrices.
//!
//! Used only as an independent numerical oracle; no exact decision is taken
//! from its output.

use super::{norm2, IntMatrix, LinalgError};

/// Residual target: every returned pair satisfies
/// `|A v - lambda v|_2 <= EIGEN_RESIDUAL_TOL * |A|_F` with `|v|_2 = 1`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues ascending, with unit eigenvectors in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Sorted eigenvalues of a symmetric integer matrix.
pub fn float_eigen(a: &IntMatrix) -> Result<Vec<f64>, LinalgError> {
    symmetric_eigen(a).map(|e| e.values)
}

/// Eigenvalues and eigenvectors of a symmetric integer matrix.
pub fn symmetric_eigen(a: &IntMatrix) -> Result<SymmetricEigen, LinalgError> {
    if !a.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    SymmetricEigen::of_dense(a.dim(), a.to_f64())
}

impl SymmetricEigen {
    /// Decomposes a dense row-major symmetric float matrix.
    pub fn of_dense(n: usize, matrix: Vec<f64>) -> Result<Self, LinalgError> {
        assert_eq!(matrix.len(), n * n, "matrix must be n x n");
        let original = matrix.clone();
        let mut a = matrix;
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();

        let mut sweeps = 0;
        while sweeps < MAX_SWEEPS {
            let off: f64 = (0..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| a[p * n + q] * a[p * n + q])
                .sum();
            if off.sqrt() <= f64::EPSILON * frob {
                break;
            }
            sweeps += 1;
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    rotate(&mut a, n, p, q, c, s);
                    for k in 0..n {
                        let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
        let values: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
        let vectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
            .collect();

        let target = EIGEN_RESIDUAL_TOL * frob;
        let worst = values
            .iter()
            .zip(&vectors)
            .map(|(&lambda, x)| residual(&original, n, lambda, x))
            .fold(0.0, f64::max);
        if worst > target {
            return Err(LinalgError::Convergence {
                residual: worst,
                target,
                sweeps,
            });
        }
        Ok(Self { values, vectors })
    }
}

/// Applies `A <- P^T A P` for the plane rotation in `(p, q)`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let (akp, akq) = (a[k * n + p], a[k * n + q]);
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[p * n + k], a[q * n + k]);
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
}

fn residual(a: &[f64], n: usize, lambda: f64, x: &[f64]) -> f64 {
    let r: Vec<f64> = (0..n)
        .map(|i| {
            let ax: f64 = (0..n).map(|j| a[i * n + j] * x[j]).sum();
            ax - lambda * x[i]
        })
        .collect();
    norm2(&r)
}
