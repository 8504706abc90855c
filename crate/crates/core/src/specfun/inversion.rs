//! E_{α,β}(z) by numerical inversion of its Laplace transform
//!
//! ```text
//! L[t^{β-1} E_{α,β}(z t^α)](s) = s^{α-β} / (s^α - z)
//! ```
//!
//! at t = 1, with the trapezoidal rule on a parabolic contour
//! s(u) = μ (iu + 1)². Contour parameters are chosen per region between
//! consecutive singularities so the quadrature and round-off errors both
//! stay under the target; poles right of the contour enter as residues.
//! This is the Garrappa (2015) scheme for the two-parameter function.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// ln of the binary64 unit round-off (2^-52).
const LOG_EPS: f64 = -36.043_653_389_117_15;
/// ln(1e-15)
const LOG_TARGET: f64 = -34.538_776_394_910_684;

const MAX_NODES: f64 = 200.0;

#[derive(Debug, Clone, Copy)]
struct Contour {
    mu: f64,
    h: f64,
    nodes: f64,
}

const REJECTED: Contour = Contour { mu: 0.0, h: 0.0, nodes: f64::INFINITY };

pub(crate) fn evaluate(alpha: f64, beta: f64, z: Complex64) -> Complex64 {
    let t = 1.0;
    let theta = z.arg();
    let kmin = libm::ceil(-alpha / 2.0 - theta / (2.0 * PI)) as i64;
    let kmax = libm::floor(alpha / 2.0 - theta / (2.0 * PI)) as i64;
    let modulus = libm::pow(z.norm(), 1.0 / alpha);

    // Singularities s* with s*^α = z on the principal sheet, sorted by the
    // parabola parameter φ(s) = (Re s + |s|) / 2.
    let mut poles: Vec<(f64, Complex64)> = (kmin..=kmax)
        .map(|k| {
            let s = Complex64::from_polar(modulus, (theta + 2.0 * PI * k as f64) / alpha);
            ((s.re + s.norm()) / 2.0, s)
        })
        .filter(|(phi, _)| *phi > 1e-15)
        .collect();
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));
    let m = poles.len();

    // Region j lies between phi[j] and phi[j + 1]; p and q are the
    // strengths of the singularities bounding it.
    let mut phi = Vec::with_capacity(m + 2);
    phi.push(0.0);
    phi.extend(poles.iter().map(|p| p.0));
    phi.push(f64::INFINITY);
    let mut p = Vec::with_capacity(m + 1);
    p.push(f64::max(0.0, -2.0 * (alpha - beta + 1.0)));
    p.extend(core::iter::repeat_n(1.0, m));
    let mut q: Vec<f64> = core::iter::repeat_n(1.0, m).collect();
    q.push(f64::INFINITY);

    let mut log_target = LOG_TARGET;
    let admissible: Vec<usize> = (0..=m)
        .filter(|&j| phi[j] < (log_target - LOG_EPS) / t && phi[j] < phi[j + 1])
        .collect();

    let mut contours: Vec<Contour>;
    let chosen = loop {
        contours = (0..=m).map(|_| REJECTED).collect();
        for &j in &admissible {
            contours[j] = if j < m {
                bounded_region(t, phi[j], phi[j + 1], p[j], q[j], log_target)
            } else {
                unbounded_region(t, phi[j], p[j], log_target)
            };
        }
        let best = contours
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.nodes.total_cmp(&b.1.nodes))
            .map(|(j, c)| (j, *c))
            .unwrap_or((m, REJECTED));
        if best.1.nodes > MAX_NODES {
            log_target += core::f64::consts::LN_10;
            if log_target > -2.0 {
                break best;
            }
        } else {
            break best;
        }
    };
    let (region, contour) = chosen;
    if !contour.nodes.is_finite() {
        return Complex64::new(f64::NAN, f64::NAN);
    }

    let n = contour.nodes as i64;
    let mut integral = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    for k in -n..=n {
        let u = contour.h * k as f64;
        let s = (i * u + 1.0).powi(2) * contour.mu;
        let ds = Complex64::new(-2.0 * contour.mu * u, 2.0 * contour.mu);
        let f = s.powf(alpha - beta) / (s.powf(alpha) - z);
        integral += (s * t).exp() * f * ds;
    }
    integral = integral * contour.h / (2.0 * PI * i);

    let residues: Complex64 = poles[region..]
        .iter()
        .map(|(_, s)| {
            let pre = if beta == 1.0 { Complex64::new(1.0, 0.0) } else { s.powf(1.0 - beta) };
            pre * (s * t).exp() / alpha
        })
        .sum();

    let mut value = integral + residues;
    if z.im == 0.0 {
        value.im = 0.0;
    }
    value
}

fn bounded_region(
    t: f64,
    phi_j: f64,
    phi_j1: f64,
    pj: f64,
    qj: f64,
    mut log_target: f64,
) -> Contour {
    let fac = 1.01;
    let f_max = libm::exp(log_target - LOG_EPS);
    let sq_phi_j = libm::sqrt(phi_j);
    let threshold = 2.0 * libm::sqrt((log_target - LOG_EPS) / t);
    let sq_phi_j1 = f64::min(libm::sqrt(phi_j1), threshold - sq_phi_j);

    let small_p = pj < 1e-14;
    let small_q = qj < 1e-14;
    let (bar_j, bar_j1, f_bar) = if small_p && small_q {
        (sq_phi_j, sq_phi_j1, 1.0)
    } else if small_p {
        let f_min = if sq_phi_j > 0.0 {
            fac * libm::pow(sq_phi_j / (sq_phi_j1 - sq_phi_j), qj)
        } else {
            fac
        };
        if f_min >= f_max {
            return REJECTED;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fq = libm::pow(f_bar, -1.0 / qj);
        (sq_phi_j, (2.0 * sq_phi_j1 - fq * sq_phi_j) / (2.0 + fq), f_bar)
    } else if small_q {
        let f_min = fac * libm::pow(sq_phi_j1 / (sq_phi_j1 - sq_phi_j), pj);
        if f_min >= f_max {
            return REJECTED;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = libm::pow(f_bar, -1.0 / pj);
        ((2.0 * sq_phi_j + fp * sq_phi_j1) / (2.0 - fp), sq_phi_j1, f_bar)
    } else {
        let f_min =
            fac * (sq_phi_j + sq_phi_j1) / libm::pow(sq_phi_j1 - sq_phi_j, f64::max(pj, qj));
        if f_min >= f_max {
            return REJECTED;
        }
        let f_min = f64::max(f_min, 1.5);
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = libm::pow(f_bar, -1.0 / pj);
        let fq = libm::pow(f_bar, -1.0 / qj);
        let w = -phi_j1 * t / log_target;
        let den = 2.0 + w - (1.0 + w) * fp + fq;
        (
            ((2.0 + w + fq) * sq_phi_j + fp * sq_phi_j1) / den,
            (-(1.0 + w) * fq * sq_phi_j + (2.0 + w - (1.0 + w) * fp) * sq_phi_j1) / den,
            f_bar,
        )
    };

    log_target -= libm::log(f_bar);
    let w = -bar_j1 * bar_j1 * t / log_target;
    let mu = libm::pow(((1.0 + w) * bar_j + bar_j1) / (2.0 + w), 2.0);
    let h = -2.0 * PI / log_target * (bar_j1 - bar_j) / ((1.0 + w) * bar_j + bar_j1);
    let nodes = libm::ceil(libm::sqrt(1.0 - log_target / t / mu) / h);
    if !(mu > 0.0 && h > 0.0 && nodes.is_finite()) {
        return REJECTED;
    }
    Contour { mu, h, nodes }
}

fn unbounded_region(t: f64, phi_j: f64, pj: f64, log_target: f64) -> Contour {
    let sq_phi_j = libm::sqrt(phi_j);
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_phibar = libm::sqrt(phibar);
    let (f_min, f_max, f_tar) = (1.0, 10.0, 5.0);

    let mut nodes;
    let mut a;
    let mut sq_mu;
    let mut iterations = 0;
    loop {
        let phi_t = phibar * t;
        let log_eps_phi_t = log_target / phi_t;
        nodes = libm::ceil(
            phi_t / PI * (1.0 - 3.0 * log_eps_phi_t / 2.0 + libm::sqrt(1.0 - 2.0 * log_eps_phi_t)),
        );
        a = PI * nodes / phi_t;
        sq_mu = sq_phibar * (4.0 - a).abs() / (7.0 - libm::sqrt(1.0 + 12.0 * a)).abs();
        let f_bar = libm::pow((sq_phibar - sq_phi_j) / sq_mu, -pj);
        iterations += 1;
        if pj < 1e-14 || (f_min < f_bar && f_bar < f_max) || iterations > 100 {
            break;
        }
        sq_phibar = libm::pow(f_tar, -1.0 / pj) * sq_mu + sq_phi_j;
        phibar = sq_phibar * sq_phibar;
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * libm::sqrt(1.0 + 12.0 * a)) / (4.0 - a) / nodes;

    let threshold = (log_target - LOG_EPS) / t;
    if mu > threshold {
        let q = if pj.abs() < 1e-14 { 0.0 } else { libm::pow(f_tar, -1.0 / pj) * libm::sqrt(mu) };
        let phibar = libm::pow(q + sq_phi_j, 2.0);
        if phibar < threshold {
            let w = libm::sqrt(LOG_EPS / (LOG_EPS - log_target));
            let u = libm::sqrt(-phibar * t / LOG_EPS);
            mu = threshold;
            nodes = libm::ceil(w * log_target / 2.0 / PI / (u * w - 1.0));
            h = libm::sqrt(LOG_EPS / (LOG_EPS - log_target)) / nodes;
        } else {
            return REJECTED;
        }
    }
    if !(mu > 0.0 && h > 0.0 && nodes.is_finite()) {
        return REJECTED;
    }
    Contour { mu, h, nodes }
}
