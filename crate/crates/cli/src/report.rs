//! `report.json`: sorted keys, numbers rounded to ten significant digits.

use fracio_core::iomodel::Finding;
use fracio_core::memsolver::{AnalysisReport, Dominance};
use fracio_core::specfun::Regime;
use fracio_core::{Complex64, IoModel, ModalSolution, RealMatrix, SectoralForm, Severity};
use serde_json::{json, Map, Value};

use crate::numfmt::{num, nums};

fn complex(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

fn rows(m: &RealMatrix) -> Value {
    Value::Array(m.rows().iter().map(|r| nums(r)).collect())
}

fn index(k: Option<usize>) -> Value {
    k.map_or(Value::Null, |k| json!(k))
}

pub fn form_name(form: SectoralForm) -> &'static str {
    match form {
        SectoralForm::PerMode => "per-mode",
        SectoralForm::PerComponent => "per-component",
    }
}

pub fn model_echo(model: &IoModel) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(model.n()));
    m.insert("A".into(), rows(&model.a));
    m.insert("B".into(), rows(&model.b));
    m.insert("alpha".into(), nums(&model.alpha));
    m.insert("Y0".into(), nums(&model.y0));
    if let Some(r) = &model.y0_rate {
        m.insert("Y0_rate".into(), nums(r));
    }
    if let Some(x) = &model.x0 {
        m.insert("X0".into(), nums(x));
    }
    if !model.is_closed() {
        m.insert("C0".into(), nums(&model.c0));
        m.insert("consumption_rates".into(), nums(&model.consumption_rates));
    }
    Value::Object(m)
}

pub fn findings(list: &[Finding]) -> Value {
    Value::Array(
        list.iter()
            .map(|f| {
                let severity = match f.severity {
                    Severity::Error => "error",
                    Severity::Warning => "warning",
                    Severity::Info => "info",
                };
                json!({ "severity": severity, "message": f.message })
            })
            .collect(),
    )
}

/// Everything `analyze` knows about a solved model.
pub fn analysis(
    model: &IoModel,
    found: &[Finding],
    solution: &ModalSolution,
    report: &AnalysisReport,
) -> Map<String, Value> {
    let perron_mode = report.perron.and_then(|p| p.mode);
    let modes: Vec<Value> = solution
        .modes
        .iter()
        .enumerate()
        .map(|(k, mode)| {
            json!({
                "index": k,
                "eigenvalue": complex(mode.eigenvalue),
                "order": num(report.orders[k]),
                "effective_rate": complex(report.effective_rates[k]),
                "regime": match report.regimes[k] {
                    Regime::Exponential => "exponential",
                    Regime::Algebraic => "algebraic",
                },
                "active": report.active[k],
                "coefficient": complex(mode.coeff1),
                "perron": perron_mode == Some(k),
            })
        })
        .collect();
    let sector_rates: Vec<Value> =
        report.sector_rates.iter().map(|row| Value::Array(row.iter().map(|z| complex(*z)).collect())).collect();
    let dominance = match report.dominance {
        Dominance::Exponential => "exponential",
        Dominance::AlgebraicDecay => "algebraic decay",
        Dominance::Trivial => "trivial",
    };

    let mut out = Map::new();
    out.insert("model".into(), model_echo(model));
    out.insert("findings".into(), findings(found));
    out.insert("sectoral_form".into(), json!(form_name(solution.form)));
    out.insert(
        "spectrum".into(),
        json!({
            "eigenvalues": report.eigenvalues.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
            "perron": report.perron.map_or(Value::Null, |p| num(p.s_max)),
            "lambda_s": report.perron.map_or(Value::Null, |p| num(p.lambda_s)),
        }),
    );
    out.insert("modes".into(), Value::Array(modes));
    out.insert("sector_rates".into(), Value::Array(sector_rates));
    out.insert(
        "dominance".into(),
        json!({
            "kind": dominance,
            "dominant_mode": index(report.dominant_mode),
            "memoryless_dominant_mode": index(report.memoryless_dominant),
            "domination_changed": report.domination_changed,
        }),
    );
    out.insert(
        "effective_technological_rate".into(),
        report.effective_technological_rate.map_or(Value::Null, num),
    );
    out.insert("admissible".into(), json!(report.admissible));
    out.insert("reason".into(), json!(report.reason));
    out.insert("consumption_feasible".into(), json!(report.consumption_feasible));
    out
}

/// Pretty JSON with a trailing newline.
pub fn render(map: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serialisable");
    s.push('\n');
    s
}
