//! Cyclic Jacobi eigendecomposition for real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;

/// `A = U diag(λ) Uᵀ` with eigenvalues in descending order and the
/// eigenvectors as the columns of `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix<f64>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> Matrix<f64> {
        let n = self.eigenvalues.len();
        let u = &self.eigenvectors;
        Matrix::from_fn(n, n, |i, j| (0..n).map(|k| u[(i, k)] * self.eigenvalues[k] * u[(j, k)]).sum())
    }
}

fn off_norm(a: &Matrix<f64>) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Rotations sweep the upper triangle in row-major order. Iteration stops
/// once the off-diagonal Frobenius norm drops below
/// `OFF_DIAGONAL_TOLERANCE * max(1, ‖A‖_F)`. Each eigenvector is signed so
/// that its largest-magnitude component is positive.
pub fn eigendecompose(a: &Matrix<f64>) -> Result<SpectralDecomposition> {
    assert!(a.is_square(), "eigendecompose needs a square matrix");
    let n = a.rows();
    let mut frob = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (a[(i, j)], a[(j, i)]);
            let delta = (x - y).abs();
            if delta > 1e-12 * x.abs().max(y.abs()).max(1.0) || !x.is_finite() {
                return Err(Error::NotSymmetric { row: i, col: j, delta });
            }
            frob += x * x;
        }
    }
    let threshold = OFF_DIAGONAL_TOLERANCE * frob.sqrt().max(1.0);

    let mut d = a.clone();
    let mut v = Matrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 });
    let mut sweeps = 0;
    loop {
        let off = off_norm(&d);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = d[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (d[(q, q)] - d[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                d[(p, p)] -= t * apq;
                d[(q, q)] += t * apq;
                d[(p, q)] = 0.0;
                d[(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = d[(r, p)];
                        let arq = d[(r, q)];
                        let new_rp = c * arp - s * arq;
                        let new_rq = s * arp + c * arq;
                        d[(r, p)] = new_rp;
                        d[(p, r)] = new_rp;
                        d[(r, q)] = new_rq;
                        d[(q, r)] = new_rq;
                    }
                }
                for r in 0..n {
                    let vrp = v[(r, p)];
                    let vrq = v[(r, q)];
                    v[(r, p)] = c * vrp - s * vrq;
                    v[(r, q)] = s * vrp + c * vrq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps the rotation order for equal eigenvalues
    order.sort_by(|&x, &y| d[(y, y)].total_cmp(&d[(x, x)]));
    let eigenvalues = order.iter().map(|&k| d[(k, k)]).collect();
    let mut eigenvectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    for j in 0..n {
        let mut pivot = 0;
        for i in 1..n {
            if eigenvectors[(i, j)].abs() > eigenvectors[(pivot, j)].abs() {
                pivot = i;
            }
        }
        if eigenvectors[(pivot, j)] < 0.0 {
            for i in 0..n {
                eigenvectors[(i, j)] = -eigenvectors[(i, j)];
            }
        }
    }
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}
