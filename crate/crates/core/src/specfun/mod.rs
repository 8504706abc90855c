//! Gamma and Mittag-Leffler functions over complex arguments.
//!
//! `E_{α,β}(z)` is evaluated by one of three routes, chosen on
//! `ρ = |z|^{1/α}` (the modulus of the exponent in the leading
//! asymptotic term):
//!
//! 1. the power series with compensated summation, accepted only when it
//!    converges within [`MAX_TERMS`] terms and the cancellation ratio
//!    `Σ|term| / |sum|` stays below [`MAX_CANCELLATION`];
//! 2. the asymptotic expansion, for `ρ ≥` [`ASYMPTOTIC_RHO`], or for any
//!    `|z| ≥ 1` when `α` and `β` are integers and the expansion terminates;
//! 3. Laplace-transform inversion on a parabolic contour for everything
//!    in between (mostly negative or oscillatory arguments where the
//!    series cancels).

mod asymptotic;
mod gamma;
mod inversion;
mod series;

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

pub use gamma::gamma;
pub(crate) use gamma::rgamma;
pub use series::{MAX_CANCELLATION, MAX_TERMS};

/// Above this value of `|z|^{1/α}` the asymptotic expansion is used directly.
pub const ASYMPTOTIC_RHO: f64 = 30.0;

/// Smallest `|λ t^α|^{1/α}` accepted by [`ml_asymptotic`].
pub const ASYMPTOTIC_MIN_RHO: f64 = 5.0;

/// Default number of algebraic terms in [`ml_asymptotic`].
pub const DEFAULT_DEPTH: usize = 5;

/// Order parameters of `E_{α,β}` plus the asymptotic truncation depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlParams {
    pub alpha: f64,
    pub beta: f64,
    pub depth: usize,
}

impl MlParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain { name: "beta", value: beta });
        }
        Ok(Self { alpha, beta, depth: DEFAULT_DEPTH })
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    /// `E_{α,β}(λ t^α)` by the truncated expansion at the stored depth.
    pub fn asymptotic(&self, lam: Complex64, t: f64) -> Result<Complex64> {
        ml_asymptotic(self, lam, t, self.depth)
    }
}

/// Which asymptotic form governs `E_α(λ t^α)` as `t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `|arg λ| ≤ θ`: an exponential term `exp(λ^{1/α} t)` is present.
    Exponential,
    /// `θ < |arg λ| ≤ π`: only the algebraic `t^{-α}` tail remains.
    Algebraic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgSector {
    pub theta: f64,
    pub regime: Regime,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::Domain { name: "alpha", value: alpha })
    }
}

/// Sector threshold θ, the midpoint of `(πα/2, min(π, πα))`.
pub fn sector_threshold(alpha: f64) -> f64 {
    (PI * alpha / 2.0 + f64::min(PI, PI * alpha)) / 2.0
}

pub fn classify_arg_sector(alpha: f64, lam: Complex64) -> ArgSector {
    let theta = sector_threshold(alpha);
    let regime = if lam.arg().abs() <= theta { Regime::Exponential } else { Regime::Algebraic };
    ArgSector { theta, regime }
}

/// One-parameter Mittag-Leffler function `E_α(z)`.
pub fn ml_one(alpha: f64, z: Complex64) -> Result<Complex64> {
    ml_two(alpha, 1.0, z)
}

/// Two-parameter Mittag-Leffler function `E_{α,β}(z)`.
pub fn ml_two(alpha: f64, beta: f64, z: Complex64) -> Result<Complex64> {
    check_alpha(alpha)?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain { name: "beta", value: beta });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { name: "z", value: z.norm() });
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Ok(Complex64::new(rgamma(beta), 0.0));
    }
    let modulus = z.norm();
    if modulus >= 1.0 && asymptotic::is_integer(alpha) && asymptotic::is_integer(beta) {
        return finite(real_if_real(z, asymptotic::evaluate(alpha, beta, z)));
    }
    let rho = libm::pow(modulus, 1.0 / alpha);
    if rho >= ASYMPTOTIC_RHO {
        return finite(real_if_real(z, asymptotic::evaluate(alpha, beta, z)));
    }
    if let Some(s) = series::sum(alpha, beta, z) {
        if s.cancellation <= MAX_CANCELLATION {
            return Ok(real_if_real(z, s.value));
        }
    }
    let value = inversion::evaluate(alpha, beta, z);
    if value.re.is_nan() || value.im.is_nan() {
        return Err(Error::NonConvergence { alpha, beta, re: z.re, im: z.im });
    }
    Ok(real_if_real(z, value))
}

fn finite(value: Complex64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow)
    }
}

// E_{α,β} is real on the real axis.
fn real_if_real(z: Complex64, mut value: Complex64) -> Complex64 {
    if z.im == 0.0 {
        value.im = 0.0;
    }
    value
}

/// Real-argument convenience wrapper around [`ml_two`].
pub fn ml_real(alpha: f64, beta: f64, x: f64) -> Result<f64> {
    ml_two(alpha, beta, Complex64::new(x, 0.0)).map(|v| v.re)
}

/// Truncated asymptotic expansion of `E_{α,β}(λ t^α)` with `m` algebraic
/// terms: the single exponential term `(1/α) λ^{(1-β)/α} t^{1-β}
/// exp(λ^{1/α} t)` is kept when `λ` is in the exponential sector, dropped
/// otherwise.
pub fn ml_asymptotic(params: &MlParams, lam: Complex64, t: f64, m: usize) -> Result<Complex64> {
    let MlParams { alpha, beta, .. } = *params;
    check_alpha(alpha)?;
    if m == 0 {
        return Err(Error::Domain { name: "m", value: 0.0 });
    }
    if !(t > 0.0) {
        return Err(Error::Domain { name: "t", value: t });
    }
    let z = lam * libm::pow(t, alpha);
    let rho = libm::pow(z.norm(), 1.0 / alpha);
    if !(rho >= ASYMPTOTIC_MIN_RHO) {
        return Err(Error::AsymptoticRegime { rho, threshold: ASYMPTOTIC_MIN_RHO });
    }
    let tail = asymptotic::algebraic_part(alpha, beta, z, m);
    match classify_arg_sector(alpha, lam).regime {
        Regime::Exponential => {
            let zeta = lam.powf(1.0 / alpha) * t;
            let pre = if beta == 1.0 {
                Complex64::new(1.0, 0.0)
            } else {
                zeta.powf(1.0 - beta)
            };
            finite(pre * zeta.exp() / alpha + tail)
        }
        Regime::Algebraic => Ok(tail),
    }
}
