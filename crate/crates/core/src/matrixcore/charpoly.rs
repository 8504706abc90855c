//! Characteristic polynomial by Faddeev-LeVerrier and its roots, computed
//! without the QR eigensolver so the two can cross-check each other.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::lu::invert_complex;
use super::RealMatrix;
use crate::{Error, Result};

const ABERTH_ITERATIONS: usize = 500;
const NEWTON_POLISH: usize = 3;

/// Coefficients `c_0..=c_n` of `det(λE − M) = Σ c_k λ^k` (`c_n = 1`).
pub fn char_poly(m: &RealMatrix) -> Vec<f64> {
    let n = m.n();
    let mut c = vec![0.0; n + 1];
    c[n] = 1.0;
    let mut mk = RealMatrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&mk).expect("same dimension");
        c[n - k] = -am.trace() / k as f64;
        mk = am;
        for i in 0..n {
            mk[(i, i)] += c[n - k];
        }
    }
    c
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ck in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ck;
    }
    (p, dp)
}

fn quadratic(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let q = -0.5 * (b + if b >= 0.0 { 1.0 } else { -1.0 } * libm::sqrt(disc));
        let other = if q != 0.0 { c / q } else { 0.0 };
        [Complex64::new(q, 0.0), Complex64::new(other, 0.0)]
    } else {
        let im = 0.5 * libm::sqrt(-disc);
        [Complex64::new(-0.5 * b, im), Complex64::new(-0.5 * b, -im)]
    }
}

// Simultaneous Aberth-Ehrlich iteration on a monic polynomial.
fn aberth(c: &[f64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    let radius = (0..n)
        .map(|k| libm::pow(c[k].abs(), 1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..ABERTH_ITERATIONS {
        let mut converged = true;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            if step.norm() > 1e-14 * z[i].norm().max(1e-300) {
                converged = false;
            }
        }
        if converged {
            return Ok(z);
        }
    }
    Err(Error::EigenNonConvergence)
}

// Newton on ln det(λE − M): λ ← λ − 1 / tr((λE − M)^{-1}).
fn polish(m: &RealMatrix, mut lam: Complex64) -> Complex64 {
    let n = m.n();
    for _ in 0..NEWTON_POLISH {
        let mut a: Vec<Complex64> = m.as_slice().iter().map(|&x| Complex64::new(-x, 0.0)).collect();
        for i in 0..n {
            a[i * n + i] += lam;
        }
        let Ok(inv) = invert_complex(n, &a) else {
            break;
        };
        let tr: Complex64 = (0..n).map(|i| inv[i * n + i]).sum();
        let step = tr.inv();
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        lam -= step;
        if step.norm() <= 1e-15 * lam.norm() {
            break;
        }
    }
    lam
}

/// Roots of the characteristic polynomial, ordered like
/// [`eigenvalues`](super::eigenvalues). Closed form for n ≤ 2;
/// Aberth iteration polished by Newton steps on `det(λE − M)` above.
pub fn char_poly_roots(m: &RealMatrix) -> Result<Vec<Complex64>> {
    let c = char_poly(m);
    let mut roots = match m.n() {
        1 => vec![Complex64::new(-c[0], 0.0)],
        2 => quadratic(c[1], c[0]).to_vec(),
        _ => aberth(&c)?.into_iter().map(|z| polish(m, z)).collect(),
    };
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for r in &mut roots {
        if r.im.abs() <= 1e-13 * scale {
            r.im = 0.0;
        }
    }
    roots.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    Ok(roots)
}
