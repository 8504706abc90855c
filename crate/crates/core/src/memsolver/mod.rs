//! Mittag-Leffler modal solutions of
//!
//! ```text
//! D^α Y = Λ·(Y − C),   C(t) = E_α(R t^α)·C(0)
//! ```
//!
//! for uniform or per-sector orders in (0, 2), plus growth-rate and
//! dominance analysis. Orders above one add `t·E_{α,2}` terms fixed by
//! the initial speed.

mod analysis;
mod trajectory;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::iomodel::{DerivedMatrices, IoModel};
use crate::matrixcore::{eig, invert_complex, invert_named, perron, solve_complex, RealMatrix};
use crate::{Error, Result};

pub use analysis::{analyze, AnalysisReport, Dominance, PerronInfo};
pub use trajectory::{
    consumption_trajectory, evaluate_at, evaluate_trajectory, investment_trajectory, Trajectory,
};

/// Largest accepted 1-norm condition number of the eigenvector basis.
pub const MAX_CONDITION: f64 = 1e12;

/// Which series a solution describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// Final product `Y`.
    Final,
    /// Gross product `X`.
    Gross,
    /// Intermediate product `Z = A·X`.
    Intermediate,
    /// Investment `I`.
    Investment,
    /// Non-productive consumption `C`.
    Consumption,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Final => "Y",
            Self::Gross => "X",
            Self::Intermediate => "Z",
            Self::Investment => "I",
            Self::Consumption => "C",
        }
    }
}

/// How per-sector orders enter a modal solution.
///
/// `PerMode` pairs mode `k` with order `α_k`:
/// `Y(t) = Σ_k c_k E_{α_k}(λ_k t^{α_k}) Y_k`.
/// `PerComponent` applies sector `j`'s order to every mode in row `j`:
/// `Y_j(t) = Σ_k c_k E_{α_j}(λ_k t^{α_j}) Y_kj`.
/// Both coincide for uniform memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SectoralForm {
    #[default]
    PerMode,
    PerComponent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mode {
    pub eigenvalue: Complex64,
    pub eigenvector: Vec<Complex64>,
    /// Coefficient of `E_α(λ t^α)`.
    pub coeff1: Complex64,
    /// Coefficient of `t·E_{α,2}(λ t^α)`; zero unless the order exceeds one.
    pub coeff2: Complex64,
    pub ml_beta2: bool,
    /// Order attached to this mode in the per-mode form.
    pub order: f64,
}

/// Particular solution driven by consumption: column `l` of `gain` is
/// `(E − r_l S)⁻¹ e_l`, so `Y_C(t) = Σ_l gain[:, l] C0_l E_{α_l}(r_l t^{α_l})`.
/// With a single rate `r` this is `(E − rS)⁻¹ E_α(r t^α) C(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcedTerm {
    pub gain: RealMatrix,
    pub c0: Vec<f64>,
    pub rates: Vec<f64>,
    pub orders: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModalSolution {
    /// Perron mode first (when it exists), then by descending real part.
    pub modes: Vec<Mode>,
    pub alpha: Vec<f64>,
    pub form: SectoralForm,
    pub forced: Option<ForcedTerm>,
    pub variable: Variable,
    pub initial: Vec<f64>,
    pub initial_rate: Option<Vec<f64>>,
}

impl ModalSolution {
    pub fn n(&self) -> usize {
        self.initial.len()
    }

    /// `c_k·Y_kj`, the amplitude of mode `k` in sector `j` (first family).
    pub fn amplitude(&self, k: usize, j: usize) -> Complex64 {
        self.modes[k].coeff1 * self.modes[k].eigenvector[j]
    }

    pub fn is_uniform(&self) -> bool {
        self.alpha.iter().all(|&a| a == self.alpha[0])
    }

    /// Order used for mode `k` in sector `j`.
    pub fn order(&self, k: usize, j: usize) -> f64 {
        match self.form {
            SectoralForm::PerMode => self.modes[k].order,
            SectoralForm::PerComponent => self.alpha[j],
        }
    }
}

/// `λ^{1/α}` on the principal branch.
pub fn effective_growth_rate(lam: Complex64, alpha: f64) -> Complex64 {
    if lam.im == 0.0 && lam.re > 0.0 {
        Complex64::new(libm::pow(lam.re, 1.0 / alpha), 0.0)
    } else {
        lam.powf(1.0 / alpha)
    }
}

/// Orders `α_k = α_1 ln λ_k / ln λ_1` that give every mode the same
/// effective rate as the first.
pub fn equal_effective_rate_orders(lams: &[f64], alpha1: f64) -> Result<Vec<f64>> {
    let first = *lams.first().ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
    if let Some(&bad) = lams.iter().find(|&&l| !(l > 0.0)) {
        return Err(Error::Domain { name: "lambda", value: bad });
    }
    if first == 1.0 {
        return Err(Error::UnitEigenvalue);
    }
    let ln1 = libm::log(first);
    Ok(lams.iter().map(|&l| alpha1 * libm::log(l) / ln1).collect())
}

// 1-norm of a complex row-major matrix.
fn norm1(n: usize, m: &[Complex64]) -> f64 {
    (0..n).map(|j| (0..n).map(|i| m[i * n + j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Coefficients `c` with `Σ_k c_k v_k = target`. Conjugate vectors get
/// exactly conjugate coefficients.
pub fn solve_coefficients(vectors: &[Vec<Complex64>], target: &[f64]) -> Result<Vec<Complex64>> {
    let n = target.len();
    if vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: vectors.len() });
    }
    let mut basis = vec![Complex64::new(0.0, 0.0); n * n];
    for (k, v) in vectors.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            basis[i * n + k] = *x;
        }
    }
    let inv = invert_complex(n, &basis).map_err(|_| Error::IllConditioned { cond: f64::INFINITY })?;
    let cond = norm1(n, &basis) * norm1(n, &inv);
    if !(cond <= MAX_CONDITION) {
        return Err(Error::IllConditioned { cond });
    }
    let rhs: Vec<Complex64> = target.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut c = solve_complex(n, &basis, &rhs)?;
    for k in 0..n {
        let partner = (0..n).find(|&j| {
            j > k && vectors[j].iter().zip(&vectors[k]).all(|(a, b)| *a == b.conj())
        });
        if let Some(j) = partner {
            let avg = (c[k] + c[j].conj()) * 0.5;
            c[k] = avg;
            c[j] = avg.conj();
        }
    }
    Ok(c)
}

/// Eigenpairs of `m` with the Perron mode (eigenvalue `1/s_max` of `S`)
/// first and the rest by descending real, then imaginary, part.
// A diagonal matrix keeps the unit basis even when its diagonal repeats.
fn diagonal_pairs(m: &RealMatrix) -> Option<Vec<(Complex64, Vec<Complex64>)>> {
    let n = m.n();
    let off_diagonal = (0..n).any(|i| (0..n).any(|j| i != j && m[(i, j)] != 0.0));
    if off_diagonal {
        return None;
    }
    let mut pairs: Vec<_> = (0..n)
        .map(|i| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[i] = Complex64::new(1.0, 0.0);
            (Complex64::new(m[(i, i)], 0.0), v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.re.total_cmp(&a.0.re));
    Some(pairs)
}

fn ordered_modes(m: &RealMatrix, s: &RealMatrix) -> Result<Vec<(Complex64, Vec<Complex64>)>> {
    let mut pairs: Vec<_> = match diagonal_pairs(m) {
        Some(p) => p,
        None => eig(m)?.into_iter().map(|p| (p.value, p.vector)).collect(),
    };
    if let Ok((smax, _)) = perron(s) {
        let lambda_s = 1.0 / smax;
        let hit = pairs
            .iter()
            .position(|(v, _)| (v - lambda_s).norm() <= 1e-8 * lambda_s.abs().max(1.0));
        if let Some(k) = hit {
            let p = pairs.remove(k);
            pairs.insert(0, p);
        }
    }
    Ok(pairs)
}

fn require_closed(model: &IoModel) -> Result<()> {
    if model.is_closed() {
        Ok(())
    } else {
        Err(Error::OpenModel)
    }
}

fn check_len(v: &[f64], n: usize) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n, found: v.len() })
    }
}

/// Homogeneous modal solution of `D^α V = M·V` with `V(0) = v0` and, for
/// orders above one, `V'(0) = rate` on those indices.
fn homogeneous(
    m: &RealMatrix,
    s: &RealMatrix,
    alpha: &[f64],
    form: SectoralForm,
    v0: &[f64],
    rate: Option<&[f64]>,
    variable: Variable,
) -> Result<ModalSolution> {
    let n = m.n();
    check_len(alpha, n)?;
    check_len(v0, n)?;
    if let Some(&bad) = alpha.iter().find(|&&a| !(a > 0.0 && a < 2.0)) {
        return Err(Error::Domain { name: "alpha", value: bad });
    }
    let pairs = ordered_modes(m, s)?;
    let vectors: Vec<Vec<Complex64>> = pairs.iter().map(|p| p.1.clone()).collect();
    let c1 = solve_coefficients(&vectors, v0)?;

    // orders above one: square system over the indices K = {k : α_k > 1}
    let fast: Vec<usize> = (0..n).filter(|&k| alpha[k] > 1.0).collect();
    let mut c2 = vec![Complex64::new(0.0, 0.0); n];
    if !fast.is_empty() {
        let rate = rate.ok_or(Error::MissingInitialSpeed)?;
        check_len(rate, n)?;
        let sub: Vec<Vec<Complex64>> =
            fast.iter().map(|&k| fast.iter().map(|&j| vectors[k][j]).collect()).collect();
        let target: Vec<f64> = fast.iter().map(|&j| rate[j]).collect();
        let sol = solve_coefficients(&sub, &target)?;
        for (i, &k) in fast.iter().enumerate() {
            c2[k] = sol[i];
        }
    }
    let modes = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (eigenvalue, eigenvector))| Mode {
            eigenvalue,
            eigenvector,
            coeff1: c1[k],
            coeff2: c2[k],
            ml_beta2: alpha[k] > 1.0,
            order: alpha[k],
        })
        .collect();
    Ok(ModalSolution {
        modes,
        alpha: alpha.to_vec(),
        form,
        forced: None,
        variable,
        initial: v0.to_vec(),
        initial_rate: rate.filter(|_| !fast.is_empty()).map(|r| r.to_vec()),
    })
}

/// Closed model with one memory order.
pub fn solve_closed_uniform(model: &IoModel, derived: &DerivedMatrices) -> Result<ModalSolution> {
    require_closed(model)?;
    if model.uniform_alpha().is_none() {
        return Err(Error::InvalidModel("memory orders differ between sectors".into()));
    }
    homogeneous(
        &derived.lambda,
        &derived.s,
        &model.alpha,
        SectoralForm::PerMode,
        &model.y0,
        model.y0_rate.as_deref(),
        Variable::Final,
    )
}

/// Closed model with per-sector orders in the default per-mode form.
pub fn solve_closed_sectoral(model: &IoModel, derived: &DerivedMatrices) -> Result<ModalSolution> {
    solve_closed_sectoral_with(model, derived, SectoralForm::default())
}

pub fn solve_closed_sectoral_with(
    model: &IoModel,
    derived: &DerivedMatrices,
    form: SectoralForm,
) -> Result<ModalSolution> {
    require_closed(model)?;
    homogeneous(
        &derived.lambda,
        &derived.s,
        &model.alpha,
        form,
        &model.y0,
        model.y0_rate.as_deref(),
        Variable::Final,
    )
}

/// Gross product of a closed model, `D^α X = Ω·X`. Uses `X0` when given,
/// otherwise `(E − A)⁻¹·Y0`.
pub fn solve_closed_gross(
    model: &IoModel,
    derived: &DerivedMatrices,
    form: SectoralForm,
) -> Result<ModalSolution> {
    require_closed(model)?;
    let x0 = match &model.x0 {
        Some(x) => x.clone(),
        None => derived.e_minus_a_inv.mul_vec(&model.y0)?,
    };
    let rate = match &model.y0_rate {
        Some(r) => Some(derived.e_minus_a_inv.mul_vec(r)?),
        None => None,
    };
    homogeneous(&derived.omega, &derived.s, &model.alpha, form, &x0, rate.as_deref(), Variable::Gross)
}

/// Open model. The homogeneous part matches `Y0 − G·C0`; with `C0 = 0`
/// the closed solution is returned unchanged.
pub fn solve_open(
    model: &IoModel,
    derived: &DerivedMatrices,
    form: SectoralForm,
) -> Result<ModalSolution> {
    let n = model.n();
    if model.is_closed() {
        return homogeneous(
            &derived.lambda,
            &derived.s,
            &model.alpha,
            form,
            &model.y0,
            model.y0_rate.as_deref(),
            Variable::Final,
        );
    }
    check_len(&model.c0, n)?;
    check_len(&model.consumption_rates, n)?;
    let mut gain = RealMatrix::zeros(n);
    for (l, &r) in model.consumption_rates.iter().enumerate() {
        let m = RealMatrix::identity(n).sub(&derived.s.scale(r))?;
        let inv = invert_named(&m, "E - R S")?;
        for i in 0..n {
            gain[(i, l)] = inv[(i, l)];
        }
    }
    let particular = gain.mul_vec(&model.c0)?;
    let shifted: Vec<f64> = model.y0.iter().zip(&particular).map(|(y, p)| y - p).collect();
    // E_α(r t^α) has zero slope at 0 for α > 1, so Y'(0) is all homogeneous
    let mut sol = homogeneous(
        &derived.lambda,
        &derived.s,
        &model.alpha,
        form,
        &shifted,
        model.y0_rate.as_deref(),
        Variable::Final,
    )?;
    sol.initial = model.y0.clone();
    sol.forced = Some(ForcedTerm {
        gain,
        c0: model.c0.clone(),
        rates: model.consumption_rates.clone(),
        orders: model.alpha.clone(),
    });
    Ok(sol)
}

/// Final-product solution for any valid model: open or closed, uniform
/// or sectoral.
pub fn solve(model: &IoModel, derived: &DerivedMatrices, form: SectoralForm) -> Result<ModalSolution> {
    if model.needs_rate() && model.y0_rate.is_none() {
        return Err(Error::MissingInitialSpeed);
    }
    model.check()?;
    solve_open(model, derived, form)
}
