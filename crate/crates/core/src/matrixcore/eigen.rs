//! Eigenvalues by balancing, Hessenberg reduction and the Francis
//! double-shift QR iteration; eigenvectors by inverse iteration on the
//! original matrix.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::lu::ComplexLu;
use super::RealMatrix;
use crate::{Error, Result};

/// Relative eigenvalue gap below which the spectrum counts as degenerate.
pub const SEPARATION_TOL: f64 = 1e-8;

const MAX_QR_ITERATIONS: usize = 60;

/// Accepted eigen-residual `‖Mv − λv‖ / ‖M‖`.
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: Complex64,
    /// Unit 2-norm; the first entry of largest modulus is real and positive.
    pub vector: Vec<Complex64>,
}

struct Square {
    n: usize,
    a: Vec<f64>,
}

impl Square {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }
}

// Parlett-Reinsch balancing by powers of two.
fn balance(h: &mut Square) {
    const RADIX: f64 = 2.0;
    let n = h.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += h.at(j, i).abs();
                    r += h.at(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / RADIX;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    *h.at_mut(i, j) *= g;
                }
                for j in 0..n {
                    *h.at_mut(j, i) *= f;
                }
            }
        }
    }
}

// Reduction to upper Hessenberg form by stabilised elimination.
fn hessenberg(h: &mut Square) {
    let n = h.n;
    for m in 1..n.saturating_sub(1) {
        let mut x: f64 = 0.0;
        let mut i = m;
        for j in m..n {
            if h.at(j, m - 1).abs() > x.abs() {
                x = h.at(j, m - 1);
                i = j;
            }
        }
        if i != m {
            for j in m - 1..n {
                h.a.swap(i * n + j, m * n + j);
            }
            for j in 0..n {
                h.a.swap(j * n + i, j * n + m);
            }
        }
        if x != 0.0 {
            for i in m + 1..n {
                let mut y = h.at(i, m - 1);
                if y != 0.0 {
                    y /= x;
                    *h.at_mut(i, m - 1) = y;
                    for j in m..n {
                        let v = h.at(m, j);
                        *h.at_mut(i, j) -= y * v;
                    }
                    for j in 0..n {
                        let v = h.at(j, i);
                        *h.at_mut(j, m) += y * v;
                    }
                }
            }
        }
    }
    for i in 2..n {
        for j in 0..i - 1 {
            *h.at_mut(i, j) = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

// Francis double-shift QR on an upper Hessenberg matrix.
fn hqr(h: &mut Square) -> Result<Vec<Complex64>> {
    let n = h.n as isize;
    let mut w = vec![Complex64::new(0.0, 0.0); h.n];
    let at = |h: &Square, i: isize, j: isize| h.a[(i * n + j) as usize];
    fn set(h: &mut Square, i: isize, j: isize, v: f64) {
        let n = h.n as isize;
        h.a[(i * n + j) as usize] = v;
    }

    let mut anorm = 0.0;
    for i in 0..n {
        for j in (i - 1).max(0)..n {
            anorm += at(h, i, j).abs();
        }
    }
    let mut nn = n - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    while nn >= 0 {
        let mut its = 0;
        loop {
            let mut l = nn;
            while l >= 1 {
                let mut s = at(h, l - 1, l - 1).abs() + at(h, l, l).abs();
                if s == 0.0 {
                    s = anorm;
                }
                if at(h, l, l - 1).abs() <= f64::EPSILON * s {
                    set(h, l, l - 1, 0.0);
                    break;
                }
                l -= 1;
            }
            let mut x = at(h, nn, nn);
            if l == nn {
                w[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = at(h, nn - 1, nn - 1);
            let mut ww = at(h, nn, nn - 1) * at(h, nn - 1, nn);
            if l == nn - 1 {
                p = 0.5 * (y - x);
                q = p * p + ww;
                let mut z = libm::sqrt(q.abs());
                x += t;
                if q >= 0.0 {
                    z = p + sign(z, p);
                    w[nn as usize - 1] = Complex64::new(x + z, 0.0);
                    w[nn as usize] = Complex64::new(if z != 0.0 { x - ww / z } else { x + z }, 0.0);
                } else {
                    w[nn as usize - 1] = Complex64::new(x + p, z);
                    w[nn as usize] = Complex64::new(x + p, -z);
                }
                nn -= 2;
                break;
            }
            if its == MAX_QR_ITERATIONS {
                return Err(Error::EigenNonConvergence);
            }
            if its > 0 && its % 10 == 0 {
                t += x;
                for i in 0..=nn {
                    let v = at(h, i, i) - x;
                    set(h, i, i, v);
                }
                let s = at(h, nn, nn - 1).abs() + at(h, nn - 1, nn - 2).abs();
                x = 0.75 * s;
                y = x;
                ww = -0.4375 * s * s;
            }
            its += 1;
            let mut m = nn - 2;
            let mut z;
            loop {
                z = at(h, m, m);
                r = x - z;
                let s = y - z;
                p = (r * s - ww) / at(h, m + 1, m) + at(h, m, m + 1);
                q = at(h, m + 1, m + 1) - z - r - s;
                r = at(h, m + 2, m + 1);
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = at(h, m, m - 1).abs() * (q.abs() + r.abs());
                let v = p.abs() * (at(h, m - 1, m - 1).abs() + z.abs() + at(h, m + 1, m + 1).abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                set(h, i, i - 2, 0.0);
                if i != m + 2 {
                    set(h, i, i - 3, 0.0);
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = at(h, k, k - 1);
                    q = at(h, k + 1, k - 1);
                    r = if k + 1 != nn { at(h, k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign(libm::sqrt(p * p + q * q + r * r), p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            let v = -at(h, k, k - 1);
                            set(h, k, k - 1, v);
                        }
                    } else {
                        set(h, k, k - 1, -s * x);
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        let mut pp = at(h, k, j) + q * at(h, k + 1, j);
                        if k + 1 != nn {
                            pp += r * at(h, k + 2, j);
                            let v = at(h, k + 2, j) - pp * z;
                            set(h, k + 2, j, v);
                        }
                        let v = at(h, k + 1, j) - pp * y;
                        set(h, k + 1, j, v);
                        let v = at(h, k, j) - pp * x;
                        set(h, k, j, v);
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        let mut pp = x * at(h, i, k) + y * at(h, i, k + 1);
                        if k + 1 != nn {
                            pp += z * at(h, i, k + 2);
                            let v = at(h, i, k + 2) - pp * r;
                            set(h, i, k + 2, v);
                        }
                        let v = at(h, i, k + 1) - pp * q;
                        set(h, i, k + 1, v);
                        let v = at(h, i, k) - pp;
                        set(h, i, k, v);
                    }
                }
                k += 1;
            }
        }
    }
    Ok(w)
}

fn order(values: &mut [Complex64]) {
    values.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
}

/// All eigenvalues of `m`, sorted by descending real part then descending
/// imaginary part (conjugate pairs adjacent, positive imaginary first).
/// No separation check.
pub fn eigenvalues(m: &RealMatrix) -> Result<Vec<Complex64>> {
    let mut h = Square { n: m.n(), a: m.as_slice().to_vec() };
    balance(&mut h);
    hessenberg(&mut h);
    let mut values = hqr(&mut h)?;
    order(&mut values);
    Ok(values)
}

fn normalise(v: &mut [Complex64]) {
    let norm = libm::sqrt(v.iter().map(|x| x.norm_sqr()).sum());
    let big = v.iter().fold(0.0, |m: f64, x| m.max(x.norm()));
    let Some(lead) = v.iter().position(|x| x.norm() >= big * (1.0 - 1e-12)) else {
        return;
    };
    let phase = v[lead].conj() / (v[lead].norm() * norm);
    for x in v.iter_mut() {
        *x *= phase;
    }
    v[lead].im = 0.0;
}

fn residual(m: &RealMatrix, lam: Complex64, v: &[Complex64]) -> f64 {
    let mv = m.mul_cvec(v).unwrap_or_default();
    libm::sqrt(mv.iter().zip(v).map(|(a, b)| (a - lam * b).norm_sqr()).sum())
}

/// Eigenvector for a (numerically exact) eigenvalue by inverse iteration,
/// started from `U x = 1` as in EISPACK's `invit`.
pub(crate) fn inverse_iteration(m: &RealMatrix, lam: Complex64) -> Result<Vec<Complex64>> {
    let n = m.n();
    let norm = m.frobenius().max(lam.norm());
    let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let mut shifted: Vec<Complex64> = m.as_slice().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for i in 0..n {
        shifted[i * n + i] -= lam;
    }
    let lu = ComplexLu::new(n, &shifted, tiny);
    let mut v = vec![Complex64::new(1.0, 0.0); n];
    lu.back_substitute(&mut v);
    normalise(&mut v);
    let scale = m.frobenius().max(f64::MIN_POSITIVE);
    for _ in 0..3 {
        if residual(m, lam, &v) <= RESIDUAL_TOL * scale * 1e-3 {
            break;
        }
        v = lu.solve(&v);
        normalise(&mut v);
    }
    if !(residual(m, lam, &v) <= RESIDUAL_TOL * scale) {
        return Err(Error::EigenNonConvergence);
    }
    Ok(v)
}

/// Smallest relative gap `|λ_i − λ_j| / max(|λ_i|, |λ_j|)` over all pairs.
pub(crate) fn min_relative_gap(values: &[Complex64], scale: f64) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let den = a.norm().max(b.norm()).max(scale * f64::EPSILON);
            gap = gap.min((a - b).norm() / den);
        }
    }
    gap
}

/// Full eigendecomposition. Conjugate eigenvalues get conjugate vectors.
pub fn eig(m: &RealMatrix) -> Result<Vec<EigenPair>> {
    let values = eigenvalues(m)?;
    let gap = min_relative_gap(&values, m.max_abs());
    if gap < SEPARATION_TOL {
        return Err(Error::DegenerateSpectrum { gap });
    }
    let mut pairs: Vec<EigenPair> = Vec::with_capacity(values.len());
    for &value in &values {
        if value.im < 0.0 {
            if let Some(partner) = pairs.iter().find(|p| p.value == value.conj()) {
                let vector = partner.vector.iter().map(|x| x.conj()).collect();
                pairs.push(EigenPair { value, vector });
                continue;
            }
        }
        let vector = inverse_iteration(m, value)?;
        pairs.push(EigenPair { value, vector });
    }
    Ok(pairs)
}
