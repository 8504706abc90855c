//! Substitutes a modal solution into its governing equation.

use alloc::vec::Vec;

use super::abm::uniform_step;
use super::{caputo_derivative, SampledFunction, MIN_SAMPLES};
use crate::iomodel::{DerivedMatrices, IoModel};
use crate::memsolver::{consumption_trajectory, evaluate_trajectory, ModalSolution, Variable};
use crate::{Error, Result};

/// Relative residual `‖D^α Y − ΛY + ΛC‖ / ‖ΛY‖` per grid point with `t ≥ 4h`
/// (`Ω` in place of `Λ` and no consumption for gross-product solutions).
#[derive(Debug, Clone, PartialEq)]
pub struct Residuals {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl Residuals {
    /// Largest residual at times `≥ from`.
    pub fn max_from(&self, from: f64) -> f64 {
        self.times
            .iter()
            .zip(&self.values)
            .filter(|(t, _)| **t >= from)
            .fold(0.0, |m, (_, r)| f64::max(m, *r))
    }

    pub fn max(&self) -> f64 {
        self.max_from(0.0)
    }
}

fn norm(v: &[f64]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum())
}

/// `grid` must be uniform and start at zero; sector `j` is differentiated
/// with the model's order `α_j`.
pub fn residual_check(
    solution: &ModalSolution,
    model: &IoModel,
    derived: &DerivedMatrices,
    grid: &[f64],
) -> Result<Residuals> {
    let h = uniform_step(grid)?;
    if grid.len() < MIN_SAMPLES + 1 {
        return Err(Error::StepTooCoarse { samples: grid.len(), required: MIN_SAMPLES + 1 });
    }
    let n = solution.n();
    let y = evaluate_trajectory(solution, grid)?;
    let c = consumption_trajectory(model, grid)?;
    let mut derivative = Vec::with_capacity(n);
    for j in 0..n {
        let mut f = SampledFunction::new(h, y.sector(j))?;
        if let Some(rate) = &solution.initial_rate {
            f = f.with_initial_slope(rate[j]);
        }
        derivative.push(caputo_derivative(&f, model.alpha[j])?.values);
    }
    // gross product obeys D^α X = Ω X with no consumption term
    let (system, c) = match solution.variable {
        Variable::Gross => (&derived.omega, None),
        _ => (&derived.lambda, Some(c)),
    };
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, &t) in grid.iter().enumerate().skip(MIN_SAMPLES) {
        let ly = system.mul_vec(&y.values[i])?;
        let lc = match &c {
            Some(c) => system.mul_vec(&c.values[i])?,
            None => alloc::vec![0.0; n],
        };
        let r: Vec<f64> = (0..n).map(|j| derivative[j][i] - ly[j] + lc[j]).collect();
        times.push(t);
        values.push(norm(&r) / norm(&ly));
    }
    Ok(Residuals { times, values })
}
