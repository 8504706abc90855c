//! `fracio`: validate, analyze, simulate, verify and sweep input-output
//! models with memory.

mod model;
mod numfmt;
mod output;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fracio_core::fracoracle::{fde_integrate, residual_check};
use fracio_core::iomodel::{derive, Finding, Severity};
use fracio_core::memsolver::{
    analyze, consumption_trajectory, evaluate_trajectory, investment_trajectory, solve, solve_closed_gross,
};
use fracio_core::{Complex64, DerivedMatrices, IoModel, ModalSolution, SectoralForm, Trajectory, Variable};
use serde_json::{json, Map, Value};

use crate::model::{load_model, parse_orders, LoadError};
use crate::numfmt::{num, sig};

/// Residuals above this fail `verify`.
const VERIFY_THRESHOLD: f64 = 1e-2;

#[derive(Parser)]
#[command(name = "fracio", version, about = "Input-output models with power-law memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model file and list every finding.
    Validate(Common),
    /// Spectrum, effective rates, dominance and admissibility.
    Analyze(Common),
    /// Write trajectories (CSV), a plot (SVG) and report.json.
    Simulate(Common),
    /// Check the analytic solution against the numerical oracle.
    Verify(Common),
    /// One sweep.csv row per memory order given with --alpha.
    Sweep(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    PerMode,
    PerComponent,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, default_value_t = 2.0)]
    t_max: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    /// `0.5` or `0.1,0.9`; repeat for sweeps.
    #[arg(long)]
    alpha: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Any of csv, json, svg.
    #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
    format: Vec<String>,
    #[arg(long, value_enum, default_value = "per-mode")]
    sectoral_form: FormArg,
    /// Refuse models with consumption.
    #[arg(long)]
    closed: bool,
    /// Residuals are reported from this time on (never before 4h).
    #[arg(long, default_value_t = 0.1)]
    residual_from: f64,
    #[arg(long, hide = true)]
    debug_perturb: Option<f64>,
}

enum Failure {
    Usage(String),
    Input(String),
    Run(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Run(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Run(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn run_err(e: fracio_core::Error) -> Failure {
    Failure::Run(e.to_string())
}

/// Parsed command-line settings shared by every command.
struct RunConfig {
    model_path: PathBuf,
    t_max: f64,
    steps: usize,
    alpha_override: Vec<Vec<f64>>,
    output_dir: Option<PathBuf>,
    csv: bool,
    json: bool,
    svg: bool,
    form: SectoralForm,
    closed: bool,
    residual_from: f64,
    perturb: Option<f64>,
}

impl RunConfig {
    fn from_args(c: Common) -> Result<Self, Failure> {
        if !(c.t_max >= 0.0 && c.t_max.is_finite()) {
            return Err(Failure::Usage(format!("--t-max must be nonnegative, got {}", c.t_max)));
        }
        if c.steps < 2 {
            return Err(Failure::Usage("--steps must be at least 2".into()));
        }
        let alpha_override =
            c.alpha.iter().map(|a| parse_orders(a)).collect::<Result<Vec<_>, _>>().map_err(Failure::Usage)?;
        let (mut csv, mut json, mut svg) = (false, false, false);
        for f in &c.format {
            match f.trim() {
                "csv" => csv = true,
                "json" => json = true,
                "svg" => svg = true,
                other => return Err(Failure::Usage(format!("unknown format '{other}'"))),
            }
        }
        Ok(Self {
            model_path: c.model,
            t_max: c.t_max,
            steps: c.steps,
            alpha_override,
            output_dir: c.out,
            csv,
            json,
            svg,
            form: match c.sectoral_form {
                FormArg::PerMode => SectoralForm::PerMode,
                FormArg::PerComponent => SectoralForm::PerComponent,
            },
            closed: c.closed,
            residual_from: c.residual_from,
            perturb: c.debug_perturb,
        })
    }

    fn grid(&self) -> Vec<f64> {
        if self.t_max == 0.0 {
            return vec![0.0];
        }
        (0..=self.steps).map(|i| self.t_max * i as f64 / self.steps as f64).collect()
    }

    fn single_alpha(&self) -> Result<Option<&[f64]>, Failure> {
        match self.alpha_override.as_slice() {
            [] => Ok(None),
            [one] => Ok(Some(one)),
            _ => Err(Failure::Usage("give --alpha once (repeat it only for sweep)".into())),
        }
    }

    fn out_dir(&self) -> Result<PathBuf, Failure> {
        let dir = self.output_dir.clone().unwrap_or_else(|| PathBuf::from("fracio-out"));
        fs::create_dir_all(&dir).map_err(|e| Failure::Run(format!("cannot create {}: {e}", dir.display())))?;
        Ok(dir)
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))
}

/// The model from disk with any `--alpha` override applied, revalidated.
/// With `at_rest`, orders above one and no initial speed start at rest.
fn prepare(cfg: &RunConfig, alpha: Option<&[f64]>, at_rest: bool) -> Result<(IoModel, Vec<Finding>), Failure> {
    let (mut model, mut found) = load_model(&cfg.model_path)?;
    if let Some(a) = alpha {
        let n = model.n();
        if a.len() != 1 && a.len() != n {
            return Err(Failure::Usage(format!("--alpha needs 1 or {n} entries")));
        }
        model = model.with_alpha(a);
        if at_rest && model.needs_rate() && model.y0_rate.is_none() {
            model = model.with_rate(vec![0.0; n]);
        }
        found = fracio_core::iomodel::validate(&model);
        if found.iter().any(|f| f.severity == Severity::Error) {
            return Err(LoadError::Invalid(found).into());
        }
    }
    if cfg.closed && !model.is_closed() {
        return Err(run_err(fracio_core::Error::OpenModel));
    }
    Ok((model, found))
}

fn solved(cfg: &RunConfig, model: &IoModel) -> Result<(DerivedMatrices, ModalSolution), Failure> {
    let derived = derive(model).map_err(run_err)?;
    let mut solution = solve(model, &derived, cfg.form).map_err(run_err)?;
    if let Some(p) = cfg.perturb {
        if let Some(mode) = solution.modes.first_mut() {
            mode.eigenvalue *= Complex64::new(1.0 + p, 0.0);
        }
    }
    Ok((derived, solution))
}

fn cmd_validate(cfg: &RunConfig) -> Result<(), Failure> {
    let (model, found) = match load_model(&cfg.model_path) {
        Ok(v) => v,
        Err(LoadError::Invalid(found)) => {
            for f in &found {
                println!("{:?}: {}", f.severity, f.message);
            }
            return Err(LoadError::Invalid(found).into());
        }
        Err(e) => return Err(e.into()),
    };
    println!("valid model with {} sectors", model.n());
    for f in &found {
        println!("{:?}: {}", f.severity, f.message);
    }
    Ok(())
}

fn analysis_map(cfg: &RunConfig) -> Result<(IoModel, DerivedMatrices, ModalSolution, Map<String, Value>), Failure> {
    let (model, found) = prepare(cfg, cfg.single_alpha()?, false)?;
    let (derived, solution) = solved(cfg, &model)?;
    let a = analyze(&model, &derived, &solution);
    let map = report::analysis(&model, &found, &solution, &a);
    Ok((model, derived, solution, map))
}

fn cmd_analyze(cfg: &RunConfig) -> Result<(), Failure> {
    let (_, _, _, map) = analysis_map(cfg)?;
    let text = report::render(map);
    print!("{text}");
    if cfg.output_dir.is_some() && cfg.json {
        write(&cfg.out_dir()?.join("report.json"), &text)?;
    }
    Ok(())
}

/// Y and everything derivable from it: X = (E − A)⁻¹Y, Z = A·X, C and
/// I = Y − C. A closed model with its own X0 gets X from that start and
/// I = B·Ω·X.
fn trajectories(
    cfg: &RunConfig,
    model: &IoModel,
    derived: &DerivedMatrices,
    solution: &ModalSolution,
    grid: &[f64],
) -> Result<Vec<(&'static str, Trajectory)>, Failure> {
    let y = evaluate_trajectory(solution, grid).map_err(run_err)?;
    let c = consumption_trajectory(model, grid).map_err(run_err)?;
    let (x, i) = if model.is_closed() && model.x0.is_some() {
        let xs = solve_closed_gross(model, derived, cfg.form).map_err(run_err)?;
        let i = investment_trajectory(model, derived, &xs, grid).map_err(run_err)?;
        (evaluate_trajectory(&xs, grid).map_err(run_err)?, i)
    } else {
        let x = y.map_matrix(&derived.e_minus_a_inv, Variable::Gross).map_err(run_err)?;
        (x, y.minus(&c, Variable::Investment))
    };
    let z = x.map_matrix(&model.a, Variable::Intermediate).map_err(run_err)?;
    let mut out = vec![("Y", y), ("X", x), ("Z", z), ("I", i)];
    if !model.is_closed() {
        out.push(("C", c));
    }
    Ok(out)
}

fn cmd_simulate(cfg: &RunConfig) -> Result<(), Failure> {
    let (model, derived, solution, mut map) = analysis_map(cfg)?;
    let grid = cfg.grid();
    let series = trajectories(cfg, &model, &derived, &solution, &grid)?;
    let dir = cfg.out_dir()?;
    let mut files = Vec::new();
    if cfg.csv {
        for (name, tr) in &series {
            let file = format!("{name}.csv");
            output::write_csv(&dir.join(&file), tr, model.n()).map_err(Failure::Run)?;
            files.push(file);
        }
    }
    if cfg.svg {
        write(&dir.join("trajectories.svg"), &output::render_svg(&series[0].1, "final product Y(t)"))?;
        files.push("trajectories.svg".into());
    }
    if cfg.json {
        files.push("report.json".into());
        map.insert(
            "simulation".into(),
            json!({ "t_max": num(cfg.t_max), "steps": cfg.steps, "samples": grid.len(), "files": files }),
        );
        write(&dir.join("report.json"), &report::render(map))?;
    }
    for f in &files {
        println!("{}", dir.join(f).display());
    }
    Ok(())
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn cmd_verify(cfg: &RunConfig) -> Result<(), Failure> {
    let (model, derived, solution, mut map) = analysis_map(cfg)?;
    if cfg.t_max == 0.0 {
        return Err(Failure::Usage("verify needs --t-max > 0".into()));
    }
    let grid = cfg.grid();
    let h = grid[1];
    let from = cfg.residual_from.max(4.0 * h);
    let residuals = residual_check(&solution, &model, &derived, &grid).map_err(run_err)?;
    let window: Vec<f64> = residuals
        .times
        .iter()
        .zip(&residuals.values)
        .filter(|(t, _)| **t >= from)
        .map(|(_, r)| *r)
        .collect();
    if window.is_empty() {
        return Err(Failure::Usage(format!("no grid points at or after t = {from}")));
    }
    let max = window.iter().fold(0.0f64, |m, r| m.max(*r));
    let mean = window.iter().sum::<f64>() / window.len() as f64;

    let analytic = evaluate_trajectory(&solution, &grid).map_err(run_err)?;
    let c = consumption_trajectory(&model, &grid).map_err(run_err)?;
    let forcing: Vec<Vec<f64>> = c
        .values
        .iter()
        .map(|v| derived.lambda.mul_vec(v).map(|w| w.iter().map(|x| -x).collect()))
        .collect::<Result<_, _>>()
        .map_err(run_err)?;
    let numeric = fde_integrate(
        &derived.lambda,
        &model.alpha,
        &model.y0,
        model.y0_rate.as_deref(),
        Some(&forcing),
        &grid,
    )
    .map_err(run_err)?;
    let gap = analytic
        .values
        .iter()
        .zip(&numeric.values)
        .map(|(a, b)| {
            let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            norm(&d) / norm(b).max(f64::MIN_POSITIVE)
        })
        .fold(0.0f64, f64::max);

    let passed = max <= VERIFY_THRESHOLD;
    map.insert(
        "verification".into(),
        json!({
            "h": num(h),
            "from": num(from),
            "max_residual": num(max),
            "mean_residual": num(mean),
            "integrator_max_gap": num(gap),
            "threshold": num(VERIFY_THRESHOLD),
            "passed": passed,
        }),
    );
    if cfg.json && cfg.output_dir.is_some() {
        write(&cfg.out_dir()?.join("report.json"), &report::render(map))?;
    }
    println!("max residual {} mean residual {} (t >= {}, h = {})", sig(max), sig(mean), sig(from), sig(h));
    println!("analytic vs integrator max relative gap {}", sig(gap));
    if passed {
        println!("PASS");
        Ok(())
    } else {
        Err(Failure::Verification(format!("residual {} exceeds {}", sig(max), sig(VERIFY_THRESHOLD))))
    }
}

fn cmd_sweep(cfg: &RunConfig) -> Result<(), Failure> {
    if cfg.alpha_override.is_empty() {
        return Err(Failure::Usage("sweep needs at least one --alpha".into()));
    }
    let mut rows = vec![vec![
        "alpha".to_string(),
        "effective_technological_rate".into(),
        "lambda_s".into(),
        "dominant_mode".into(),
        "dominant_eigenvalue".into(),
        "dominant_effective_rate".into(),
        "domination_changed".into(),
        "admissible".into(),
    ]];
    for alpha in &cfg.alpha_override {
        let (model, _) = prepare(cfg, Some(alpha), true)?;
        let (derived, solution) = solved(cfg, &model)?;
        let a = analyze(&model, &derived, &solution);
        let opt = |x: Option<f64>| x.map_or(String::new(), sig);
        let dominant = a.dominant_mode;
        rows.push(vec![
            alpha.iter().map(|x| sig(*x)).collect::<Vec<_>>().join(";"),
            opt(a.effective_technological_rate),
            opt(a.perron.map(|p| p.lambda_s)),
            dominant.map_or(String::new(), |k| k.to_string()),
            opt(dominant.map(|k| a.eigenvalues[k].re)),
            opt(dominant.map(|k| a.effective_rates[k].re)),
            a.domination_changed.to_string(),
            a.admissible.to_string(),
        ]);
    }
    let path = cfg.out_dir()?.join("sweep.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|e| Failure::Run(format!("{}: {e}", path.display())))?;
    for r in &rows {
        w.write_record(r).map_err(|e| Failure::Run(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Run(e.to_string()))?;
    println!("{}", path.display());
    Ok(())
}

type Runner = fn(&RunConfig) -> Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (run, common): (Runner, Common) = match cli.command {
        Command::Validate(c) => (cmd_validate, c),
        Command::Analyze(c) => (cmd_analyze, c),
        Command::Simulate(c) => (cmd_simulate, c),
        Command::Verify(c) => (cmd_verify, c),
        Command::Sweep(c) => (cmd_sweep, c),
    };
    match RunConfig::from_args(common).and_then(|cfg| run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
