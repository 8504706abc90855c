#![allow(dead_code)]

use fracio_core::{IoModel, RealMatrix};

pub const A: [[f64; 2]; 2] = [[0.1, 0.2], [0.2, 0.3]];
pub const B1: [[f64; 2]; 2] = [[0.4, 0.4], [1.0, 0.5]];
pub const B2: [[f64; 2]; 2] = [[0.4, 0.2], [1.0, 0.9]];
pub const B3: [[f64; 2]; 2] = [[0.3, 0.1], [0.2, 0.3]];

pub fn m2(rows: [[f64; 2]; 2]) -> RealMatrix {
    RealMatrix::from_rows(&rows).unwrap()
}

pub fn example1(alpha: &[f64]) -> IoModel {
    IoModel::new(m2(A), m2(B1), alpha, vec![40.0, 40.0])
}

pub fn example2(alpha: &[f64]) -> IoModel {
    IoModel::new(m2(A), m2(B2), alpha, vec![40.0, 40.0])
}

pub fn example3(alpha: &[f64]) -> IoModel {
    IoModel::new(m2(A), m2(B3), alpha, vec![40.0, 40.0])
}

/// `[t_0, …, t_max]` with `steps` intervals.
pub fn grid(t_max: f64, steps: usize) -> Vec<f64> {
    (0..=steps).map(|i| t_max * i as f64 / steps as f64).collect()
}

/// `exp(M t)·v` by scaled Taylor series and repeated squaring.
pub fn expm_apply(m: &RealMatrix, t: f64, v: &[f64]) -> Vec<f64> {
    let n = m.n();
    let norm = m.max_abs() * t * n as f64;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let a = m.scale(t / 2f64.powi(squarings as i32));
    let mut e = RealMatrix::identity(n);
    let mut term = RealMatrix::identity(n);
    for k in 1..30 {
        term = term.mul(&a).unwrap().scale(1.0 / k as f64);
        e = e.add(&term).unwrap();
    }
    for _ in 0..squarings {
        e = e.mul(&e).unwrap();
    }
    e.mul_vec(v).unwrap()
}
