//! Effective growth rates, dominance and admissibility.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{effective_growth_rate, ModalSolution, SectoralForm};
use crate::iomodel::{DerivedMatrices, IoModel};
use crate::matrixcore::perron;
use crate::specfun::{classify_arg_sector, Regime};

/// How the dominant term behaves as `t → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// Some active mode grows or decays like `exp(λ^{1/α} t)`.
    Exponential,
    /// Only `t^{-α}` tails remain; the slowest is reported.
    AlgebraicDecay,
    /// Every coefficient vanishes.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerronInfo {
    pub s_max: f64,
    /// `1/s_max`, the technological growth rate.
    pub lambda_s: f64,
    /// Index of the mode carrying `λ_s`.
    pub mode: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub eigenvalues: Vec<Complex64>,
    /// Order attached to each mode.
    pub orders: Vec<f64>,
    /// `λ_k^{1/α_k}` per mode.
    pub effective_rates: Vec<Complex64>,
    /// `λ_k^{1/α_j}`, indexed `[sector j][mode k]`.
    pub sector_rates: Vec<Vec<Complex64>>,
    /// Asymptotic regime of each mode under its own order.
    pub regimes: Vec<Regime>,
    /// Modes with a nonzero coefficient.
    pub active: Vec<bool>,
    pub dominance: Dominance,
    pub dominant_mode: Option<usize>,
    /// Argmax of `Re λ_k` over active modes (no memory).
    pub memoryless_dominant: Option<usize>,
    pub domination_changed: bool,
    pub perron: Option<PerronInfo>,
    /// `λ_s^{1/α}` with the Perron mode's order.
    pub effective_technological_rate: Option<f64>,
    pub admissible: bool,
    pub reason: String,
    /// `max r_k < λ_s` over consuming sectors; true for closed models.
    pub consumption_feasible: bool,
}

fn argmax(scores: impl Iterator<Item = (usize, f64)>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, s) in scores {
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((k, s));
        }
    }
    best.map(|b| b.0)
}

pub fn analyze(model: &IoModel, derived: &DerivedMatrices, solution: &ModalSolution) -> AnalysisReport {
    let n = solution.n();
    let modes = &solution.modes;
    let eigenvalues: Vec<Complex64> = modes.iter().map(|m| m.eigenvalue).collect();
    let orders: Vec<f64> = modes.iter().map(|m| m.order).collect();
    let effective_rates: Vec<Complex64> =
        modes.iter().map(|m| effective_growth_rate(m.eigenvalue, m.order)).collect();
    let sector_rates: Vec<Vec<Complex64>> = (0..n)
        .map(|j| modes.iter().map(|m| effective_growth_rate(m.eigenvalue, solution.alpha[j])).collect())
        .collect();
    let regimes: Vec<Regime> =
        modes.iter().map(|m| classify_arg_sector(m.order, m.eigenvalue).regime).collect();

    let scale = modes.iter().fold(0.0f64, |s, m| s.max(m.coeff1.norm()).max(m.coeff2.norm()));
    let active: Vec<bool> = modes
        .iter()
        .map(|m| scale > 0.0 && m.coeff1.norm().max(m.coeff2.norm()) > 1e-12 * scale)
        .collect();

    // best exponential-regime rate of each active mode
    let score = |k: usize| -> Option<f64> {
        let m = &modes[k];
        match solution.form {
            SectoralForm::PerMode => {
                (regimes[k] == Regime::Exponential).then(|| effective_rates[k].re)
            }
            SectoralForm::PerComponent => (0..n)
                .filter(|&j| m.eigenvector[j].norm() > 0.0)
                .filter(|&j| classify_arg_sector(solution.alpha[j], m.eigenvalue).regime == Regime::Exponential)
                .map(|j| sector_rates[j][k].re)
                .reduce(f64::max),
        }
    };
    let candidates: Vec<usize> = (0..modes.len()).filter(|&k| active[k]).collect();
    let exponential = argmax(candidates.iter().filter_map(|&k| score(k).map(|s| (k, s))));
    let (dominance, dominant_mode) = match exponential {
        Some(k) => (Dominance::Exponential, Some(k)),
        None if candidates.is_empty() => (Dominance::Trivial, None),
        None => {
            // slowest algebraic tail t^{-α}: smallest order
            let k = argmax(candidates.iter().map(|&k| (k, -orders[k])));
            (Dominance::AlgebraicDecay, k)
        }
    };
    let memoryless_dominant = argmax(candidates.iter().map(|&k| (k, eigenvalues[k].re)));
    let domination_changed = dominance == Dominance::Exponential
        && memoryless_dominant.is_some()
        && memoryless_dominant != dominant_mode;

    let perron_info = perron(&derived.s).ok().map(|(s_max, _)| {
        let lambda_s = 1.0 / s_max;
        let mode = eigenvalues
            .iter()
            .position(|v| (v - lambda_s).norm() <= 1e-8 * lambda_s.abs().max(1.0));
        PerronInfo { s_max, lambda_s, mode }
    });
    let effective_technological_rate =
        perron_info.and_then(|p| p.mode.map(|k| libm::pow(p.lambda_s, 1.0 / orders[k])));

    let (admissible, reason) = match (&perron_info, dominance, dominant_mode) {
        (None, ..) => (false, String::from("S has no Frobenius-Perron root; admissibility undetermined")),
        (_, Dominance::Trivial, _) => (false, String::from("all modal coefficients vanish")),
        (_, Dominance::AlgebraicDecay, _) => {
            (false, String::from("no exponential-regime mode; solution decays algebraically"))
        }
        (Some(p), Dominance::Exponential, Some(k)) if p.mode == Some(k) => (
            true,
            format!("dominant mode {k} carries the technological rate lambda_s = {:.10}", p.lambda_s),
        ),
        (Some(p), _, Some(k)) => (
            false,
            format!(
                "dominant mode {k} has lambda = {:.10} != lambda_s = {:.10}, not the Perron mode",
                eigenvalues[k].re,
                p.lambda_s
            ),
        ),
        (Some(_), _, None) => (false, String::from("no dominant mode")),
    };

    let consumption_feasible = match &perron_info {
        _ if model.is_closed() => true,
        Some(p) => model
            .consumption_rates
            .iter()
            .zip(&model.c0)
            .filter(|(_, &c)| c != 0.0)
            .all(|(&r, _)| r < p.lambda_s),
        None => false,
    };

    AnalysisReport {
        eigenvalues,
        orders,
        effective_rates,
        sector_rates,
        regimes,
        active,
        dominance,
        dominant_mode,
        memoryless_dominant,
        domination_changed,
        perron: perron_info,
        effective_technological_rate,
        admissible,
        reason,
        consumption_feasible,
    }
}
