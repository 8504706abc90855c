//! Large-argument expansions of E_{α,β}.
//!
//! For 0 < α < 2 and |z| → ∞
//!
//! ```text
//! E_{α,β}(z) = (1/α) Σ_m ζ_m^{1-β} exp(ζ_m) - Σ_{k≥1} z^{-k} / Γ(β - αk)
//! ```
//!
//! where ζ_m = |z|^{1/α} exp(i (arg z + 2πm) / α) runs over the branches
//! with |arg z + 2πm| ≤ απ. The algebraic tail is divergent and is cut at
//! its smallest term.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::rgamma;

const MAX_ALGEBRAIC_TERMS: usize = 400;

/// Branches closer than this (in radians) to |arg z + 2πm| = απ count
/// with weight one half.
const STOKES_TOL: f64 = 1e-13;

/// Sum of the exponential contributions over every admissible branch.
pub(crate) fn exponential_part(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let theta = z.arg();
    let rho = libm::pow(z.norm(), 1.0 / alpha);
    let limit = alpha * PI;
    let lo = libm::ceil((-limit - theta) / (2.0 * PI) - 1e-12) as i64;
    let hi = libm::floor((limit - theta) / (2.0 * PI) + 1e-12) as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in lo..=hi {
        let phase = theta + 2.0 * PI * m as f64;
        let weight = if (phase.abs() - limit).abs() <= STOKES_TOL {
            0.5
        } else if phase.abs() > limit {
            continue;
        } else {
            1.0
        };
        let zeta = Complex64::from_polar(rho, phase / alpha);
        let prefactor = if beta == 1.0 {
            Complex64::new(1.0, 0.0)
        } else {
            zeta.powf(1.0 - beta)
        };
        acc += prefactor * zeta.exp() * (weight / alpha);
    }
    acc
}

/// -Σ_{k=1}^{m} z^{-k} / Γ(β - αk), exactly `m` terms.
pub(crate) fn algebraic_part(alpha: f64, beta: f64, z: Complex64, m: usize) -> Complex64 {
    let inv = z.inv();
    let mut pow = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=m {
        acc -= pow * rgamma(beta - alpha * k as f64);
        pow *= inv;
    }
    acc
}

/// Algebraic tail truncated just before its smallest nonzero term, or
/// where it terminates when α and β are integers.
fn algebraic_optimal(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let inv = z.inv();
    let mut pow = inv;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut previous = f64::INFINITY;
    let terminating = is_integer(alpha) && is_integer(beta);
    for k in 1..=MAX_ALGEBRAIC_TERMS {
        let arg = beta - alpha * k as f64;
        if terminating && arg <= 0.0 {
            break;
        }
        let c = rgamma(arg);
        if c != 0.0 {
            let term = pow * c;
            let mag = term.norm();
            if mag > previous || !mag.is_finite() {
                break;
            }
            acc -= term;
            if mag <= 1e-17 * acc.norm() {
                break;
            }
            previous = mag;
        }
        pow *= inv;
    }
    acc
}

pub(crate) fn is_integer(x: f64) -> bool {
    libm::floor(x) == x
}

/// Full asymptotic evaluation used by the dispatcher for large |z|^{1/α},
/// and at any |z| ≥ 1 when the expansion terminates (α, β integers).
pub(crate) fn evaluate(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    exponential_part(alpha, beta, z) + algebraic_optimal(alpha, beta, z)
}
