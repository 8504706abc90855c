//! Fractional Adams-Moulton (product trapezoid) stepping with full
//! history. The right-hand side is linear, so the corrector is solved
//! exactly instead of iterated from an Adams-Bashforth predictor; that is
//! the converged predictor-corrector and stays stable for stiff sectors
//! with small orders.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrixcore::{invert_named, RealMatrix};
use crate::memsolver::{Trajectory, Variable};
use crate::specfun::gamma;
use crate::{Error, Result};

/// The stepper gives up once any component exceeds this magnitude.
pub const UNSTABLE_MAGNITUDE: f64 = 1e12;

/// Step of a grid that starts at zero and is uniform to within 1e-12.
pub(crate) fn uniform_step(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::StepTooCoarse { samples: grid.len(), required: 2 });
    }
    if grid[0] != 0.0 {
        return Err(Error::Domain { name: "grid start", value: grid[0] });
    }
    let h = grid[1];
    if !(h > 0.0) {
        return Err(Error::Domain { name: "h", value: h });
    }
    let scale = f64::max(1.0, grid[grid.len() - 1]);
    for (i, &t) in grid.iter().enumerate() {
        if (t - i as f64 * h).abs() > 1e-12 * scale {
            return Err(Error::Domain { name: "grid (must be uniform)", value: t });
        }
    }
    Ok(h)
}

struct Weights {
    corrector: Vec<f64>,
    pow1: Vec<f64>,
    pow_a: Vec<f64>,
    alpha: f64,
    c_scale: f64,
}

impl Weights {
    fn new(alpha: f64, h: f64, steps: usize) -> Result<Self> {
        let pow_a: Vec<f64> = (0..=steps + 1).map(|k| libm::pow(k as f64, alpha)).collect();
        let pow1: Vec<f64> = (0..=steps + 1).map(|k| libm::pow(k as f64, alpha + 1.0)).collect();
        let mut corrector = vec![0.0; steps + 1];
        for k in 1..=steps {
            corrector[k] = pow1[k + 1] - 2.0 * pow1[k] + pow1[k - 1];
        }
        Ok(Self {
            corrector,
            pow1,
            pow_a,
            alpha,
            c_scale: libm::pow(h, alpha) / gamma(alpha + 2.0)?,
        })
    }

    // weight of f_0 in the corrector for step n → n+1
    fn first(&self, n: usize) -> f64 {
        self.pow1[n] - (n as f64 - self.alpha) * self.pow_a[n + 1]
    }
}

/// Integrates `D^{α_j} y_j = (Λ y)_j + g_j(t)` on a uniform grid from zero.
/// A single order applies to every sector.
/// `forcing`, when given, holds `g` sampled at every grid point.
pub fn fde_integrate(
    lambda: &RealMatrix,
    alpha: &[f64],
    y0: &[f64],
    y0_rate: Option<&[f64]>,
    forcing: Option<&[Vec<f64>]>,
    grid: &[f64],
) -> Result<Trajectory> {
    let n = lambda.n();
    if y0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y0.len() });
    }
    let alpha: Vec<f64> = match alpha.len() {
        1 => vec![alpha[0]; n],
        len if len == n => alpha.to_vec(),
        len => return Err(Error::DimensionMismatch { expected: n, found: len }),
    };
    if let Some(&a) = alpha.iter().find(|&&a| !(a > 0.0 && a < 2.0)) {
        return Err(Error::Domain { name: "alpha", value: a });
    }
    let rate = match y0_rate {
        Some(r) if r.len() != n => return Err(Error::DimensionMismatch { expected: n, found: r.len() }),
        Some(r) => Some(r),
        None if alpha.iter().any(|&a| a > 1.0) => return Err(Error::MissingInitialSpeed),
        None => None,
    };
    let h = uniform_step(grid)?;
    let steps = grid.len() - 1;
    if let Some(g) = forcing {
        if g.len() != grid.len() {
            return Err(Error::DimensionMismatch { expected: grid.len(), found: g.len() });
        }
        if let Some(bad) = g.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
    }

    let mut weights: Vec<(f64, Weights)> = Vec::new();
    let mut which = Vec::with_capacity(n);
    for &a in &alpha {
        let idx = match weights.iter().position(|(b, _)| *b == a) {
            Some(i) => i,
            None => {
                weights.push((a, Weights::new(a, h, steps)?));
                weights.len() - 1
            }
        };
        which.push(idx);
    }

    let taylor = |j: usize, t: f64| -> f64 {
        let mut v = y0[j];
        if alpha[j] > 1.0 {
            v += t * rate.map_or(0.0, |r| r[j]);
        }
        v
    };
    let rhs = |i: usize, y: &[f64]| -> Result<Vec<f64>> {
        let mut f = lambda.mul_vec(y)?;
        if let Some(g) = forcing {
            for (fj, gj) in f.iter_mut().zip(&g[i]) {
                *fj += gj;
            }
        }
        Ok(f)
    };

    // (E − W Λ) y_{n+1} = T(t_{n+1}) + W (history + g_{n+1}), W = diag(c_scale_j)
    let mut system = RealMatrix::identity(n);
    for i in 0..n {
        let w = weights[which[i]].1.c_scale;
        for j in 0..n {
            system[(i, j)] -= w * lambda[(i, j)];
        }
    }
    let solver = invert_named(&system, "E - W Lambda")?;

    let mut ys: Vec<Vec<f64>> = Vec::with_capacity(grid.len());
    let mut fs: Vec<Vec<f64>> = Vec::with_capacity(grid.len());
    ys.push(y0.to_vec());
    fs.push(rhs(0, y0)?);
    for step in 0..steps {
        let t = grid[step + 1];
        let mut known = vec![0.0; n];
        for j in 0..n {
            let w = &weights[which[j]].1;
            let mut s = w.first(step) * fs[0][j];
            for i in 1..=step {
                s += w.corrector[step + 1 - i] * fs[i][j];
            }
            if let Some(g) = forcing {
                s += g[step + 1][j];
            }
            known[j] = taylor(j, t) + w.c_scale * s;
        }
        let y = solver.mul_vec(&known)?;
        let magnitude = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if !(magnitude <= UNSTABLE_MAGNITUDE) {
            return Err(Error::Unstable { t, magnitude });
        }
        fs.push(rhs(step + 1, &y)?);
        ys.push(y);
    }
    Ok(Trajectory { variable: Variable::Final, times: grid.to_vec(), values: ys })
}
