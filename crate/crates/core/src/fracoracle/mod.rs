//! Independent numerical fractional calculus on uniform grids: Caputo
//! derivatives (L1 below order one, L1 on the first derivative above),
//! Riemann-Liouville integrals by product trapezoid, a fractional
//! Adams-Bashforth-Moulton integrator and residuals of analytic
//! solutions. History sums run over the full past (O(N²)).

mod abm;
mod operators;
mod residual;

use alloc::vec::Vec;

use crate::specfun::gamma;
use crate::{Error, Result};

pub use abm::{fde_integrate, UNSTABLE_MAGNITUDE};
pub use operators::{caputo_derivative, rl_integral};
pub use residual::{residual_check, Residuals};

/// Fewest samples any scheme accepts.
pub const MIN_SAMPLES: usize = 4;

/// Samples `values[i] = f(i·h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    pub h: f64,
    pub values: Vec<f64>,
    /// `f'(0)`, used above order one; estimated from the samples if absent.
    pub initial_slope: Option<f64>,
}

impl SampledFunction {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain { name: "h", value: h });
        }
        if values.len() < 2 {
            return Err(Error::StepTooCoarse { samples: values.len(), required: 2 });
        }
        Ok(Self { h, values, initial_slope: None })
    }

    pub fn from_fn(h: f64, samples: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(h, (0..samples).map(|i| f(i as f64 * h)).collect())
    }

    pub fn with_initial_slope(mut self, slope: f64) -> Self {
        self.initial_slope = Some(slope);
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        i as f64 * self.h
    }

    /// Index of the sample nearest to `t`.
    pub fn index_of(&self, t: f64) -> usize {
        libm::round(t / self.h) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// Memory in the gross-product accelerator.
    GrossProduct,
    /// Memory on the investment side.
    Investment,
}

/// Power-law memory `m/Γ(e)·(t − τ)^{e−1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryKernel {
    pub exponent: f64,
    pub scale: f64,
    pub kind: KernelKind,
}

impl MemoryKernel {
    pub fn new(exponent: f64, kind: KernelKind) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 1.0) {
            return Err(Error::Domain { name: "kernel exponent", value: exponent });
        }
        Ok(Self { exponent, scale: 1.0, kind })
    }
}

pub fn kernel_eval(k: &MemoryKernel, t: f64, tau: f64) -> Result<f64> {
    if !(t > tau) {
        return Err(Error::Domain { name: "t - tau", value: t - tau });
    }
    Ok(k.scale / gamma(k.exponent)? * libm::pow(t - tau, k.exponent - 1.0))
}
