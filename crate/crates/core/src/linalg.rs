//! Small dense linear algebra: real symmetric matrices and a cyclic Jacobi
//! eigensolver. The matrices here are at most 8x8 (16x16 for a whole
//! three-qubit register plus margin), so a simple dense solver is plenty.

use num_complex::Complex64;

use crate::error::EngineError;

pub type C64 = Complex64;

/// Dense real square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest |A Q - Q diag(lambda)| entry, used to check solver output.
    pub fn eigen_residual(&self, eigen: &Eigen) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut aq = 0.0;
                for k in 0..n {
                    aq += self[(i, k)] * eigen.vectors[(k, j)];
                }
                let r = (aq - eigen.vectors[(i, j)] * eigen.values[j]).abs();
                worst = worst.max(r);
            }
        }
        worst
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// Spectral decomposition A = Q diag(values) Q^T with orthonormal columns.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// Column j is the eigenvector for `values[j]`.
    pub vectors: Matrix,
}

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Sweeps over all off-diagonal entries, rotating each to zero, until the
/// off-diagonal mass is negligible relative to the matrix norm.
pub fn jacobi_eigen(a: &Matrix) -> Result<Eigen, EngineError> {
    if !a.is_symmetric() {
        return Err(EngineError::NotSymmetric);
    }
    let n = a.n;
    let mut m = a.clone();
    let mut q = Matrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);

    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m[(i, j)] * m[(i, j)];
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = m[(p, r)];
                if apr == 0.0 {
                    continue;
                }
                let app = m[(p, p)];
                let arr = m[(r, r)];
                let theta = (arr - app) / (2.0 * apr);
                // Smaller-angle root for stability.
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkr = m[(k, r)];
                    m[(k, p)] = c * mkp - s * mkr;
                    m[(k, r)] = s * mkp + c * mkr;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mrk = m[(r, k)];
                    m[(p, k)] = c * mpk - s * mrk;
                    m[(r, k)] = s * mpk + c * mrk;
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkr = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkr;
                    q[(k, r)] = s * qkp + c * qkr;
                }
            }
        }
    }

    let values = (0..n).map(|i| m[(i, i)]).collect();
    let eigen = Eigen { values, vectors: q };
    let residual = a.eigen_residual(&eigen);
    if residual > 1e-12 * scale {
        return Err(EngineError::EigenResidual { residual });
    }
    Ok(eigen)
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
