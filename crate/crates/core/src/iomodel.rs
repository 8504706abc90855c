//! The intersectoral economy: input data, derived system matrices and
//! the static balance relations `X = A·X + Y`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::matrixcore::{self, invert_named, is_singular, RealMatrix};
use crate::{Error, Result};

/// A closed or open Leontief model with power-law memory.
#[derive(Debug, Clone, PartialEq)]
pub struct IoModel {
    /// Direct material cost coefficients.
    pub a: RealMatrix,
    /// Incremental capital intensity.
    pub b: RealMatrix,
    /// Memory orders per sector; all equal for uniform memory.
    pub alpha: Vec<f64>,
    pub y0: Vec<f64>,
    /// Initial speed `Y'(0)`, needed when some order exceeds one.
    pub y0_rate: Option<Vec<f64>>,
    pub x0: Option<Vec<f64>>,
    /// Initial non-productive consumption; zero for a closed model.
    pub c0: Vec<f64>,
    /// Consumption growth rates, the diagonal of `R`.
    pub consumption_rates: Vec<f64>,
}

impl IoModel {
    /// Closed model. `alpha` holds either one order or one per sector.
    pub fn new(a: RealMatrix, b: RealMatrix, alpha: &[f64], y0: Vec<f64>) -> Self {
        let n = a.n();
        let alpha = if alpha.len() == 1 { vec![alpha[0]; n] } else { alpha.to_vec() };
        Self {
            a,
            b,
            alpha,
            y0,
            y0_rate: None,
            x0: None,
            c0: vec![0.0; n],
            consumption_rates: vec![0.0; n],
        }
    }

    pub fn with_rate(mut self, y0_rate: Vec<f64>) -> Self {
        self.y0_rate = Some(y0_rate);
        self
    }

    pub fn with_x0(mut self, x0: Vec<f64>) -> Self {
        self.x0 = Some(x0);
        self
    }

    /// Open model with `C(t) = E_α(R t^α)·C(0)`. A single rate is
    /// broadcast to every sector.
    pub fn with_consumption(mut self, c0: Vec<f64>, rates: &[f64]) -> Self {
        let n = self.n();
        self.consumption_rates = if rates.len() == 1 { vec![rates[0]; n] } else { rates.to_vec() };
        self.c0 = c0;
        self
    }

    pub fn with_alpha(mut self, alpha: &[f64]) -> Self {
        let n = self.n();
        self.alpha = if alpha.len() == 1 { vec![alpha[0]; n] } else { alpha.to_vec() };
        self
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// The common order when memory is uniform.
    pub fn uniform_alpha(&self) -> Option<f64> {
        let first = *self.alpha.first()?;
        self.alpha.iter().all(|&a| a == first).then_some(first)
    }

    pub fn is_closed(&self) -> bool {
        self.c0.iter().all(|&c| c == 0.0)
    }

    pub fn needs_rate(&self) -> bool {
        self.alpha.iter().any(|&a| a > 1.0)
    }

    /// `Err(InvalidModel)` listing every error-level finding.
    pub fn check(&self) -> Result<()> {
        let errors: Vec<String> = validate(self)
            .into_iter()
            .filter(|f| f.severity == Severity::Error)
            .map(|f| f.message)
            .collect();
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel(errors.join("; ")))
        }
    }
}

/// System matrices of a model.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedMatrices {
    /// `(E − A)·B⁻¹`
    pub lambda: RealMatrix,
    /// `B⁻¹·(E − A)`
    pub omega: RealMatrix,
    /// `B·(E − A)⁻¹`, the full incremental capital intensity.
    pub s: RealMatrix,
    pub e_minus_a_inv: RealMatrix,
}

pub fn derive(model: &IoModel) -> Result<DerivedMatrices> {
    let n = model.n();
    if model.b.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: model.b.n() });
    }
    let e_minus_a = RealMatrix::identity(n).sub(&model.a)?;
    let b_inv = invert_named(&model.b, "B")?;
    let e_minus_a_inv = invert_named(&e_minus_a, "E - A")?;
    Ok(DerivedMatrices {
        lambda: e_minus_a.mul(&b_inv)?,
        omega: b_inv.mul(&e_minus_a)?,
        s: model.b.mul(&e_minus_a_inv)?,
        e_minus_a_inv,
    })
}

/// `Z = A·X`
pub fn intermediate_product(a: &RealMatrix, x: &[f64]) -> Result<Vec<f64>> {
    a.mul_vec(x)
}

/// `Y = (E − A)·X`
pub fn final_from_gross(a: &RealMatrix, x: &[f64]) -> Result<Vec<f64>> {
    let z = a.mul_vec(x)?;
    Ok(x.iter().zip(z).map(|(x, z)| x - z).collect())
}

/// `X = (E − A)⁻¹·Y`
pub fn gross_from_final(a: &RealMatrix, y: &[f64]) -> Result<Vec<f64>> {
    let e_minus_a = RealMatrix::identity(a.n()).sub(a)?;
    if y.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), found: y.len() });
    }
    if is_singular(&e_minus_a) {
        return Err(Error::Singular { matrix: "E - A".into(), det: e_minus_a.det().abs() });
    }
    matrixcore::solve(&e_minus_a, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    pub severity: Severity,
    pub message: String,
}

impl Finding {
    fn new(severity: Severity, message: impl Into<String>) -> Self {
        Self { severity, message: message.into() }
    }
}

/// Every violated assumption, most severe first. An empty list means
/// the model is fully usable.
pub fn validate(model: &IoModel) -> Vec<Finding> {
    use Severity::*;
    let n = model.n();
    let mut out = Vec::new();
    let mut dims_ok = true;
    let mut dim = |name: &str, len: usize, out: &mut Vec<Finding>| {
        if len != n {
            dims_ok = false;
            out.push(Finding::new(Error, format!("{name} has length {len}, expected {n}")));
        }
    };
    dim("B", model.b.n(), &mut out);
    dim("alpha", model.alpha.len(), &mut out);
    dim("Y0", model.y0.len(), &mut out);
    dim("C0", model.c0.len(), &mut out);
    dim("consumption_rates", model.consumption_rates.len(), &mut out);
    if let Some(r) = &model.y0_rate {
        dim("Y0_rate", r.len(), &mut out);
    }
    if let Some(x) = &model.x0 {
        dim("X0", x.len(), &mut out);
    }
    let vectors = [Some(&model.y0), model.y0_rate.as_ref(), model.x0.as_ref(), Some(&model.c0)];
    if vectors.iter().flatten().flat_map(|v| v.iter()).any(|x| !x.is_finite())
        || model.consumption_rates.iter().any(|x| !x.is_finite())
    {
        out.push(Finding::new(Error, "non-finite value in initial data"));
    }

    if model.a.min_entry() < 0.0 {
        out.push(Finding::new(Error, "A has negative entries"));
    }
    if model.alpha.iter().any(|&a| !(a > 0.0 && a < 2.0)) {
        out.push(Finding::new(Error, "alpha out of (0,2)"));
    }
    if model.needs_rate() && model.y0_rate.is_none() {
        out.push(Finding::new(Error, "initial speed required for alpha > 1"));
    }
    if model.c0.iter().any(|&c| c < 0.0) {
        out.push(Finding::new(Error, "C0 has negative entries"));
    }
    if model.b.n() == n && is_singular(&model.b) {
        out.push(Finding::new(Error, "B not invertible"));
    }
    let e_minus_a = RealMatrix::identity(n).sub(&model.a).ok();
    if e_minus_a.as_ref().is_some_and(is_singular) {
        out.push(Finding::new(Error, "E - A not invertible"));
    }
    if !dims_ok {
        out.sort_by_key(|f| core::cmp::Reverse(f.severity));
        return out;
    }

    if let Ok(values) = matrixcore::eigenvalues(&model.a) {
        let radius = values.iter().fold(0.0f64, |r, v| r.max(v.norm()));
        if radius >= 1.0 {
            out.push(Finding::new(
                Warning,
                format!("A is not productive (spectral radius {radius:.6})"),
            ));
        }
    }
    if let Ok(d) = derive(model) {
        match matrixcore::perron(&d.s) {
            Ok((smax, _)) => {
                let lambda_s = 1.0 / smax;
                for (k, &r) in model.consumption_rates.iter().enumerate() {
                    if model.c0[k] != 0.0 && r >= lambda_s {
                        out.push(Finding::new(
                            Warning,
                            format!("consumption rate r_{} = {r} is not below lambda_s = {lambda_s:.10}", k + 1),
                        ));
                    }
                }
            }
            Err(e) => out.push(Finding::new(Warning, format!("no Perron analysis for S: {e}"))),
        }
        if !model.is_closed() {
            for (k, &r) in model.consumption_rates.iter().enumerate() {
                let m = RealMatrix::identity(n).sub(&d.s.scale(r)).unwrap_or(RealMatrix::zeros(n));
                if is_singular(&m) {
                    out.push(Finding::new(
                        Error,
                        format!("E - r_{} S not invertible (rate hits an eigenvalue of Lambda)", k + 1),
                    ));
                }
            }
        }
    }
    if let Some(x0) = &model.x0 {
        if let Ok(y) = final_from_gross(&model.a, x0) {
            let gap = y.iter().zip(&model.y0).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            let scale = model.y0.iter().chain(x0).fold(1.0f64, |m, v| m.max(v.abs()));
            if gap > 1e-9 * scale {
                out.push(Finding::new(
                    Info,
                    "X0 and Y0 do not satisfy Y0 = (E - A) X0; the two are solved independently",
                ));
            }
        }
    }
    if !model.needs_rate() && model.y0_rate.is_some() {
        out.push(Finding::new(Info, "Y0_rate ignored: no order exceeds one"));
    }
    out.sort_by_key(|f| core::cmp::Reverse(f.severity));
    out
}
