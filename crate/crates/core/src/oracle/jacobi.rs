#![allow(clippy::needless_range_loop)]

use crate::error::OracleError;

pub const JACOBI_MAX_N: usize = 2000;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors, stored as
/// columns: `vectors[i][j]` is entry `i` of eigenvector `j`.
#[derive(Debug, Clone)]
pub struct JacobiEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

impl JacobiEigen {
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.vectors.iter().map(|row| row[j]).collect()
    }

    /// Eigenvectors of the `k` eigenvalues closest to `lambda`.
    pub fn eigenspace_near(&self, lambda: f64, k: usize) -> Vec<Vec<f64>> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| {
            (self.values[a] - lambda)
                .abs()
                .total_cmp(&(self.values[b] - lambda).abs())
        });
        idx.into_iter().take(k).map(|j| self.column(j)).collect()
    }

    /// `prod_i (x - lambda_i)`, the characteristic polynomial through the
    /// eigenvalues.
    pub fn char_poly(&self, x: f64) -> f64 {
        self.values.iter().map(|l| x - l).product()
    }
}

/// Cyclic Jacobi rotations on a dense symmetric matrix.
pub fn jacobi_eigen<R: AsRef<[f64]>>(matrix: &[R]) -> Result<JacobiEigen, OracleError> {
    let n = matrix.len();
    if n > JACOBI_MAX_N {
        return Err(OracleError::TooLarge { n, max: JACOBI_MAX_N });
    }
    let mut a: Vec<Vec<f64>> = matrix.iter().map(|r| r.as_ref().to_vec()).collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let target = 1e-14 * frob;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.is_infinite() {
                    0.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let (arp, arq) = (a[r][p], a[r][q]);
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for r in 0..n {
                    let (apr, aqr) = (a[p][r], a[q][r]);
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    if !converged {
        return Err(OracleError::NotConverged {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].total_cmp(&a[j][j]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = (0..n)
        .map(|r| order.iter().map(|&j| v[r][j]).collect())
        .collect();
    Ok(JacobiEigen { values, vectors })
}

/// Determinant by LU factorization with partial pivoting.
pub fn dense_determinant<R: AsRef<[f64]>>(matrix: &[R]) -> f64 {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.iter().map(|r| r.as_ref().to_vec()).collect();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("nonempty range");
        if a[pivot][k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        det *= a[k][k];
        for i in (k + 1)..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= factor * a[k][j];
            }
        }
    }
    det
}
