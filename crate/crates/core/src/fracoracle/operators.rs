use alloc::vec;
use alloc::vec::Vec;

use super::{SampledFunction, MIN_SAMPLES};
use crate::specfun::gamma;
use crate::{Error, Result};

fn check(f: &SampledFunction) -> Result<()> {
    if f.len() < MIN_SAMPLES {
        Err(Error::StepTooCoarse { samples: f.len(), required: MIN_SAMPLES })
    } else {
        Ok(())
    }
}

/// L1 scheme of order `beta ∈ (0, 1)` applied to samples `g`.
fn l1(g: &[f64], h: f64, beta: f64) -> Result<Vec<f64>> {
    let n = g.len();
    let b: Vec<f64> = (0..n)
        .map(|j| libm::pow(j as f64 + 1.0, 1.0 - beta) - libm::pow(j as f64, 1.0 - beta))
        .collect();
    let diff: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
    let scale = libm::pow(h, -beta) / gamma(2.0 - beta)?;
    let mut out = vec![0.0; n];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        // Σ_j b_j (g_{i-j} - g_{i-j-1})
        let s: f64 = (0..i).map(|j| b[j] * diff[i - j - 1]).sum();
        *slot = scale * s;
    }
    Ok(out)
}

/// First derivative: fourth-order central differences inside, one-sided
/// second order next to the ends.
fn derivative(f: &SampledFunction) -> Vec<f64> {
    let v = &f.values;
    let h = f.h;
    let n = v.len();
    let mut d = vec![0.0; n];
    for i in 0..n {
        d[i] = if i >= 2 && i + 2 < n {
            (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h)
        } else if i == 0 {
            (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        } else if i + 1 == n {
            (3.0 * v[i] - 4.0 * v[i - 1] + v[i - 2]) / (2.0 * h)
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        };
    }
    if let Some(s) = f.initial_slope {
        d[0] = s;
    }
    d
}

/// Caputo derivative of order `alpha ∈ (0, 2)` at every sample; the value
/// at `t = 0` is that of the scheme's empty history (0 below order one).
pub fn caputo_derivative(f: &SampledFunction, alpha: f64) -> Result<SampledFunction> {
    check(f)?;
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::Domain { name: "alpha", value: alpha });
    }
    let values = if alpha == 1.0 {
        derivative(f)
    } else if alpha < 1.0 {
        l1(&f.values, f.h, alpha)?
    } else {
        let d = derivative(f);
        l1(&d, f.h, alpha - 1.0)?
    };
    Ok(SampledFunction { h: f.h, values, initial_slope: None })
}

/// Riemann-Liouville integral of order `gamma ∈ (0, 1]` by product
/// trapezoid on the piecewise-linear interpolant.
pub fn rl_integral(f: &SampledFunction, order: f64) -> Result<SampledFunction> {
    check(f)?;
    if !(order > 0.0 && order <= 1.0) {
        return Err(Error::Domain { name: "gamma", value: order });
    }
    let n = f.len();
    let p = |k: usize| libm::pow(k as f64, order + 1.0);
    let pw: Vec<f64> = (0..=n).map(p).collect();
    let scale = libm::pow(f.h, order) / gamma(order + 2.0)?;
    let mut out = vec![0.0; n];
    for i in 1..n {
        let ii = i as f64;
        let mut s = (pw[i - 1] - (ii - order - 1.0) * libm::pow(ii, order)) * f.values[0];
        for j in 1..i {
            let k = i - j;
            s += (pw[k + 1] - 2.0 * pw[k] + pw[k - 1]) * f.values[j];
        }
        s += f.values[i];
        out[i] = scale * s;
    }
    Ok(SampledFunction { h: f.h, values: out, initial_slope: None })
}
