//! Partial-pivot LU factorisations, real and complex.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::RealMatrix;
use crate::{Error, Result};

pub(crate) struct RealLu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
}

impl RealLu {
    pub(crate) fn new(m: &RealMatrix) -> Self {
        let n = m.n();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].abs().total_cmp(&lu[b * n + k].abs()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        Self { n, lu, perm, sign }
    }

    pub(crate) fn det(&self) -> f64 {
        (0..self.n).fold(self.sign, |d, i| d * self.lu[i * self.n + i])
    }

    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[i * n + j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[i * n + j] * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

/// Complex LU; zero pivots are replaced by `tiny` when given, which is
/// what inverse iteration wants near an exact eigenvalue.
pub(crate) struct ComplexLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    pub(crate) min_pivot: f64,
}

impl ComplexLu {
    pub(crate) fn new(n: usize, a: &[Complex64], tiny: f64) -> Self {
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].norm().total_cmp(&lu[b * n + k].norm()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            if lu[k * n + k].norm() <= tiny {
                lu[k * n + k] = Complex64::new(tiny, 0.0);
            }
            let pivot = lu[k * n + k];
            min_pivot = f64::min(min_pivot, pivot.norm());
            if pivot.norm() == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Self { n, lu, perm, min_pivot }
    }

    pub(crate) fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc;
        }
        self.back_substitute(&mut x);
        x
    }

    /// Solves `U x = b` only (no row permutation or L).
    pub(crate) fn back_substitute(&self, x: &mut [Complex64]) {
        let n = self.n;
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= self.lu[i * n + j] * x[j];
            }
            x[i] = acc / self.lu[i * n + i];
        }
    }
}

fn check_square(n: usize, len: usize) -> Result<()> {
    if len == n * n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n * n, found: len })
    }
}

/// Solves the complex system `a · x = b` (`a` row-major n×n).
pub fn solve_complex(n: usize, a: &[Complex64], b: &[Complex64]) -> Result<Vec<Complex64>> {
    check_square(n, a.len())?;
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.len() });
    }
    let lu = ComplexLu::new(n, a, 0.0);
    if lu.min_pivot == 0.0 {
        return Err(Error::Singular { matrix: "complex system".into(), det: 0.0 });
    }
    Ok(lu.solve(b))
}

/// Inverse of a complex row-major n×n matrix.
pub fn invert_complex(n: usize, a: &[Complex64]) -> Result<Vec<Complex64>> {
    check_square(n, a.len())?;
    let lu = ComplexLu::new(n, a, 0.0);
    if lu.min_pivot == 0.0 {
        return Err(Error::Singular { matrix: "complex system".into(), det: 0.0 });
    }
    let mut inv = vec![Complex64::new(0.0, 0.0); n * n];
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        e[j] = Complex64::new(1.0, 0.0);
        for (i, v) in lu.solve(&e).into_iter().enumerate() {
            inv[i * n + j] = v;
        }
    }
    Ok(inv)
}
