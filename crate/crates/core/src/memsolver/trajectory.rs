//! Pointwise evaluation of modal solutions on a time grid.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{ModalSolution, Variable};
use crate::iomodel::{DerivedMatrices, IoModel};
use crate::matrixcore::RealMatrix;
use crate::specfun::ml_two;
use crate::{Error, Result};

/// Conjugate pairs must cancel to this fraction of the summed magnitudes.
const IMAGINARY_TOL: f64 = 1e-9;

/// Samples of one vector series; `values[i]` belongs to `times[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub variable: Variable,
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Series of sector `j`.
    pub fn sector(&self, j: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[j]).collect()
    }

    /// `M·V(t)` at every sample, relabelled.
    pub fn map_matrix(&self, m: &RealMatrix, variable: Variable) -> Result<Self> {
        let values = self.values.iter().map(|v| m.mul_vec(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self { variable, times: self.times.clone(), values })
    }

    /// `self − other` sample by sample.
    pub fn minus(&self, other: &Self, variable: Variable) -> Self {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Self { variable, times: self.times.clone(), values }
    }
}

fn ml(alpha: f64, beta: f64, lam: Complex64, t: f64) -> Result<Complex64> {
    ml_two(alpha, beta, lam * libm::pow(t, alpha))
}

/// The solution vector at time `t ≥ 0`.
pub fn evaluate_at(solution: &ModalSolution, t: f64) -> Result<Vec<f64>> {
    if !(t >= 0.0) {
        return Err(Error::NegativeTime { t });
    }
    let n = solution.n();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for (k, mode) in solution.modes.iter().enumerate() {
            let alpha = solution.order(k, j);
            let mut weight = mode.coeff1;
            if t > 0.0 {
                weight *= ml(alpha, 1.0, mode.eigenvalue, t)?;
                if alpha > 1.0 && mode.coeff2 != Complex64::new(0.0, 0.0) {
                    weight += mode.coeff2 * t * ml(alpha, 2.0, mode.eigenvalue, t)?;
                }
            }
            let term = weight * mode.eigenvector[j];
            acc += term;
            magnitude += term.norm();
        }
        if acc.im.abs() > IMAGINARY_TOL * magnitude {
            return Err(Error::ImaginaryResidue { ratio: acc.im.abs() / magnitude });
        }
        let mut value = acc.re;
        if let Some(f) = &solution.forced {
            for l in 0..n {
                let e = if t > 0.0 {
                    ml(f.orders[l], 1.0, Complex64::new(f.rates[l], 0.0), t)?.re
                } else {
                    1.0
                };
                value += f.gain[(j, l)] * f.c0[l] * e;
            }
        }
        if !value.is_finite() {
            return Err(Error::Overflow);
        }
        out.push(value);
    }
    Ok(out)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if let Some(&t) = grid.iter().find(|&&t| !(t >= 0.0)) {
        return Err(Error::NegativeTime { t });
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain { name: "grid (must increase strictly)", value: f64::NAN });
    }
    Ok(())
}

pub fn evaluate_trajectory(solution: &ModalSolution, grid: &[f64]) -> Result<Trajectory> {
    check_grid(grid)?;
    let values = grid.iter().map(|&t| evaluate_at(solution, t)).collect::<Result<Vec<_>>>()?;
    Ok(Trajectory { variable: solution.variable, times: grid.to_vec(), values })
}

/// `I(t) = B·Ω·X(t)` for a closed gross-product solution.
pub fn investment_trajectory(
    model: &IoModel,
    derived: &DerivedMatrices,
    x_solution: &ModalSolution,
    grid: &[f64],
) -> Result<Trajectory> {
    if x_solution.forced.is_some() || !model.is_closed() {
        return Err(Error::OpenModel);
    }
    if x_solution.variable != Variable::Gross {
        return Err(Error::InvalidModel("investment needs a gross-product solution".into()));
    }
    let b_omega = model.b.mul(&derived.omega)?;
    evaluate_trajectory(x_solution, grid)?.map_matrix(&b_omega, Variable::Investment)
}

/// `C_l(t) = C0_l·E_{α_l}(r_l t^{α_l})`.
pub fn consumption_trajectory(model: &IoModel, grid: &[f64]) -> Result<Trajectory> {
    check_grid(grid)?;
    let mut values = Vec::with_capacity(grid.len());
    for &t in grid {
        let mut row = Vec::with_capacity(model.n());
        for l in 0..model.n() {
            let e = if t > 0.0 {
                ml(model.alpha[l], 1.0, Complex64::new(model.consumption_rates[l], 0.0), t)?.re
            } else {
                1.0
            };
            row.push(model.c0[l] * e);
        }
        values.push(row);
    }
    Ok(Trajectory { variable: Variable::Consumption, times: grid.to_vec(), values })
}
