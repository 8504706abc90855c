//! Power series E_{α,β}(z) = Σ z^k / Γ(αk + β).

use num_complex::Complex64;

use super::gamma::{ln_gamma, rgamma, GAMMA_MAX_ARG};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 500;

/// Largest cancellation ratio Σ|term| / |sum| accepted from the series.
pub const MAX_CANCELLATION: f64 = 1e4;

/// Relative size of the first neglected term.
const TERM_TOL: f64 = 1e-16;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesValue {
    pub value: Complex64,
    /// Σ|term_k| / |Σ term_k|; 1 when no cancellation occurred.
    pub cancellation: f64,
}

/// Neumaier-compensated accumulator for one real component.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Sums the series until the next term drops below `1e-16 · |sum|` once
/// the terms have started to decrease. Returns `None` after
/// [`MAX_TERMS`] terms.
pub(crate) fn sum(alpha: f64, beta: f64, z: Complex64) -> Option<SeriesValue> {
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let mut abs_sum = 0.0;
    let mut zpow = Complex64::new(1.0, 0.0);
    let ln_z = z.ln();
    let mut previous = f64::INFINITY;
    let mut use_logs = false;

    for k in 0..MAX_TERMS {
        let arg = alpha * k as f64 + beta;
        if arg > GAMMA_MAX_ARG - 1.0 || zpow.norm() > 1e250 {
            use_logs = true;
        }
        let term = if use_logs {
            (ln_z * k as f64 - ln_gamma(arg)).exp()
        } else {
            zpow * rgamma(arg)
        };
        let mag = term.norm();
        if !mag.is_finite() {
            return None;
        }
        re.add(term.re);
        im.add(term.im);
        abs_sum += mag;

        let running = Complex64::new(re.value(), im.value()).norm();
        if k > 0 && mag <= previous && mag <= TERM_TOL * running {
            let value = Complex64::new(re.value(), im.value());
            let norm = value.norm();
            let cancellation = if norm > 0.0 { abs_sum / norm } else { f64::INFINITY };
            return Some(SeriesValue { value, cancellation });
        }
        if k > 0 && z.norm() == 0.0 {
            break;
        }
        previous = mag;
        if !use_logs {
            zpow *= z;
        }
    }
    None
}
