//! Small dense real matrices (n ≤ 16) with complex eigenpairs,
//! characteristic polynomials and Frobenius-Perron data.

mod charpoly;
mod eigen;
mod lu;
mod perron;

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

pub use charpoly::{char_poly, char_poly_roots};
pub use eigen::{eig, eigenvalues, EigenPair, SEPARATION_TOL};
pub use lu::{invert_complex, solve_complex};
pub use perron::{perron, SpectralData, NEGATIVE_TOL};

/// `|det| < SINGULAR_TOL · (max |entry|)^n` marks a matrix as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Square real matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain { name: "matrix entry", value: *bad });
        }
        Ok(Self { n, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![1.0; n])
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.n, found })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.n)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        Ok((0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn mul_cvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(x.len())?;
        Ok((0..self.n).map(|i| self.row(i).iter().zip(x).map(|(a, b)| b * a).sum()).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.n)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.n)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| f64::max(m, x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|x| x * x).sum())
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> f64 {
        lu::RealLu::new(self).det()
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

/// True when `|det M|` falls below the scale-aware singularity threshold.
pub fn is_singular(m: &RealMatrix) -> bool {
    let det = m.det();
    let scale = libm::pow(m.max_abs(), m.n as f64);
    !(det.abs() >= SINGULAR_TOL * scale) || scale == 0.0
}

/// Inverse of `m`; fails with [`Error::Singular`] naming the matrix "matrix".
pub fn invert(m: &RealMatrix) -> Result<RealMatrix> {
    invert_named(m, "matrix")
}

/// [`invert`] with a caller-supplied name in the error.
pub fn invert_named(m: &RealMatrix, name: &str) -> Result<RealMatrix> {
    let lu = lu::RealLu::new(m);
    let det = lu.det();
    let scale = libm::pow(m.max_abs(), m.n as f64);
    if scale == 0.0 || !(det.abs() >= SINGULAR_TOL * scale) {
        return Err(Error::Singular { matrix: name.into(), det: det.abs() });
    }
    let n = m.n;
    let mut inv = RealMatrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|x| *x = 0.0);
        e[j] = 1.0;
        let col = lu.solve(&e);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    Ok(inv)
}

/// Solves `m · x = b`.
pub fn solve(m: &RealMatrix, b: &[f64]) -> Result<Vec<f64>> {
    m.check_dim(b.len())?;
    let lu = lu::RealLu::new(m);
    let det = lu.det();
    let scale = libm::pow(m.max_abs(), m.n as f64);
    if scale == 0.0 || !(det.abs() >= SINGULAR_TOL * scale) {
        return Err(Error::Singular { matrix: "matrix".into(), det: det.abs() });
    }
    Ok(lu.solve(b))
}
