//! Frobenius-Perron number and vector of a nonnegative matrix.

use alloc::vec::Vec;

use super::eigen::{eig, eigenvalues, inverse_iteration, EigenPair};
use super::RealMatrix;
use crate::{Error, Result};

/// Entries down to `-NEGATIVE_TOL` are accepted as zero.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// Eigenpairs of a nonnegative matrix together with its Perron data.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    pub pairs: Vec<EigenPair>,
    pub perron_value: f64,
    /// Nonnegative, unit sum.
    pub perron_vector: Vec<f64>,
}

impl SpectralData {
    pub fn of(m: &RealMatrix) -> Result<Self> {
        let (perron_value, perron_vector) = perron(m)?;
        Ok(Self { pairs: eig(m)?, perron_value, perron_vector })
    }
}

/// `(s_max, v)`: the real positive eigenvalue of maximal modulus and a
/// nonnegative eigenvector scaled to unit sum.
pub fn perron(m: &RealMatrix) -> Result<(f64, Vec<f64>)> {
    let min = m.min_entry();
    if min < -NEGATIVE_TOL {
        return Err(Error::NotNonnegative { min });
    }
    let values = eigenvalues(m)?;
    let radius = values.iter().fold(0.0, |r: f64, v| r.max(v.norm()));
    let tol = 1e-10 * radius.max(f64::MIN_POSITIVE);
    // a periodic matrix has several peripheral eigenvalues; the real
    // positive one is the Perron root
    let value = values
        .iter()
        .filter(|v| v.im.abs() <= tol && v.re > 0.0 && v.re >= radius - tol)
        .map(|v| v.re)
        .next()
        .ok_or(Error::NonDominant)?;
    let vector = inverse_iteration(m, num_complex::Complex64::new(value, 0.0))?;
    let total: f64 = vector.iter().map(|x| x.re).sum();
    if total == 0.0 {
        return Err(Error::NonDominant);
    }
    let vector = vector.iter().map(|x| x.re / total).collect();
    Ok((value, vector))
}
