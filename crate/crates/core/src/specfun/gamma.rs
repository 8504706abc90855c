use core::f64::consts::PI;

use crate::{Error, Result};

/// Largest argument for which Γ is finite in binary64.
pub(crate) const GAMMA_MAX_ARG: f64 = 171.62;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && libm::floor(x) == x
}

/// sin(πx) with the argument reduced first, so it stays accurate near
/// large integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let n = libm::round(x);
    let r = x - n;
    let s = libm::sin(PI * r);
    if libm::fmod(n, 2.0) == 0.0 {
        s
    } else {
        -s
    }
}

/// Γ(x) for real `x`.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain { name: "x", value: x });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    libm::tgamma(x)
}

/// 1/Γ(x), zero at the poles and for arguments where Γ overflows.
pub(crate) fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x > GAMMA_MAX_ARG {
        return 0.0;
    }
    if x < 0.5 {
        // 1/Γ(x) = sin(πx) Γ(1-x) / π
        let g = gamma_unchecked(1.0 - x);
        return sin_pi(x) * g / PI;
    }
    1.0 / gamma_unchecked(x)
}

/// ln Γ(x) for x > 0.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}
