//! Command-line front end.
//!
//! Subcommands map one-to-one onto library operations and read their
//! matrices and vectors by name from a single problem file. Exit codes are
//! part of the contract: 0 success (conformal, where a verdict is
//! produced), 1 mathematically not conformal, 2 input or schema error,
//! 3 mathematical error on valid input (zero vector in an angle, degenerate
//! Kähler pair, zero-argument pseudo-angle, out-of-range θ₀). No result is
//! printed on exits ≥ 2.

mod problem;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use innerspace::metricfield::{pointwise_conformality, FieldVerdict};
use innerspace::rigidity::{
    check_conformal, default_theta0_probes, equivalence_suite, same_fixed_angle,
    EquivalenceReport, WitnessPair, DEFAULT_SCAN_STEPS,
};
use innerspace::{polarize, AngleKind, ScalarField, Tolerances};

use problem::ProblemFile;
use report::{float, object, scalar_value, to_json_string, vector_value, TextReport};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or semantically invalid input (exit 2).
    Input(String),
    /// A mathematical error on validated input (exit 3).
    Math(innerspace::Error),
}

impl From<innerspace::Error> for CliError {
    fn from(e: innerspace::Error) -> Self {
        CliError::Math(e)
    }
}

#[derive(Parser)]
#[command(
    name = "innerspace",
    version,
    about = "Angles, polarization, and conformality of inner products",
    long_about = "Computes angle notions between vectors of real or complex \
                  inner-product spaces, recovers inner products from norms by \
                  polarization, and decides whether two inner products are \
                  conformal, producing explicit witness pairs when they are not. \
                  Inputs come from a JSON problem file naming matrices, vectors, \
                  and an optional metric grid."
)]
struct Cli {
    /// Emit one JSON document instead of key=value lines
    #[arg(long, global = true)]
    json: bool,

    /// Conformality decision tolerance (relative Frobenius residual)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Seed for the randomized equivalence suite
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Direction-scan resolution for fixed-angle witness searches
    #[arg(long, global = true, default_value_t = DEFAULT_SCAN_STEPS)]
    scan_steps: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an angle between two named vectors under a named form
    Angle {
        file: PathBuf,
        form: String,
        x: String,
        y: String,
        kind: KindArg,
    },
    /// Decide conformality of two named forms (exit 0 conformal, 1 not)
    CheckConformal {
        file: PathBuf,
        g1: String,
        g2: String,
        /// Fixed angle to probe, radians in (0, π); repeatable.
        /// Defaults to π/6, π/4, π/3, 2π/3
        #[arg(long = "theta0")]
        theta0: Vec<f64>,
        /// Sample count per item of the randomized suite
        #[arg(long, default_value_t = 64)]
        trials: usize,
    },
    /// Recover ⟨x, y⟩ from the form's norms alone and compare with the
    /// directly computed value
    Polarize {
        file: PathBuf,
        form: String,
        x: String,
        y: String,
    },
    /// Produce an orthogonality witness separating two forms (exit 1 with
    /// the witness when they differ, 0 when conformal)
    Witness {
        file: PathBuf,
        g1: String,
        g2: String,
    },
    /// Pointwise conformality over the file's metric grid
    MetricField { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Euclidean,
    ComplexCos,
    Hermitian,
    Pseudo,
    Kahler,
}

impl From<KindArg> for AngleKind {
    fn from(kind: KindArg) -> AngleKind {
        match kind {
            KindArg::Euclidean => AngleKind::Euclidean,
            KindArg::ComplexCos => AngleKind::ComplexCos,
            KindArg::Hermitian => AngleKind::Hermitian,
            KindArg::Pseudo => AngleKind::Pseudo,
            KindArg::Kahler => AngleKind::Kahler,
        }
    }
}

struct CmdOutput {
    json: Value,
    text: String,
    exit: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", to_json_string(&out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances, CliError> {
    match cli.tol {
        None => Ok(Tolerances::default()),
        Some(t) if t.is_finite() && t > 0.0 => Ok(Tolerances::with_conf(t)),
        Some(t) => Err(CliError::Input(format!(
            "--tol must be a positive finite number, got {t}"
        ))),
    }
}

fn run(cli: &Cli) -> Result<CmdOutput, CliError> {
    let tol = tolerances(cli)?;
    match &cli.command {
        Command::Angle { file, form, x, y, kind } => cmd_angle(file, form, x, y, *kind, tol),
        Command::CheckConformal { file, g1, g2, theta0, trials } => {
            cmd_check_conformal(cli, file, g1, g2, theta0, *trials, tol)
        }
        Command::Polarize { file, form, x, y } => cmd_polarize(file, form, x, y, tol),
        Command::Witness { file, g1, g2 } => cmd_witness(file, g1, g2, tol),
        Command::MetricField { file } => cmd_metric_field(file, tol),
    }
}

fn witness_value(field: ScalarField, w: &WitnessPair) -> Value {
    object(vec![
        ("kind", Value::String(w.kind.name().into())),
        ("x", vector_value(field, &w.x)),
        ("y", vector_value(field, &w.y)),
        ("theta0", w.theta0.map(float).unwrap_or(Value::Null)),
        ("angle_in_1", float(w.angle_in_1)),
        ("angle_in_2", float(w.angle_in_2)),
    ])
}

fn push_witness_text(text: &mut TextReport, prefix: &str, field: ScalarField, w: &WitnessPair) {
    text.push(&format!("{prefix}_kind"), w.kind.name());
    text.push_value(&format!("{prefix}_x"), &vector_value(field, &w.x));
    text.push_value(&format!("{prefix}_y"), &vector_value(field, &w.y));
    if let Some(t0) = w.theta0 {
        text.push_f64(&format!("{prefix}_theta0"), t0);
    }
    text.push_f64(&format!("{prefix}_angle_in_1"), w.angle_in_1);
    text.push_f64(&format!("{prefix}_angle_in_2"), w.angle_in_2);
}

fn suite_value(report: &EquivalenceReport) -> Value {
    let items: Vec<Value> = report
        .items
        .iter()
        .map(|item| {
            object(vec![
                ("name", Value::String(item.name.into())),
                ("pass", Value::Bool(item.pass)),
                ("max_deviation", float(item.max_deviation)),
            ])
        })
        .collect();
    object(vec![
        ("conformal", Value::Bool(report.conformal)),
        ("factor", float(report.factor)),
        ("residual", float(report.residual)),
        ("all_agree", Value::Bool(report.all_agree)),
        ("items", Value::Array(items)),
        (
            "norm_coincidence",
            object(vec![
                (
                    "vector_found",
                    Value::Bool(report.norm_coincidence.vector_found),
                ),
                (
                    "factor_is_one",
                    report
                        .norm_coincidence
                        .factor_is_one
                        .map(Value::Bool)
                        .unwrap_or(Value::Null),
                ),
                (
                    "consistent",
                    Value::Bool(report.norm_coincidence.consistent),
                ),
            ]),
        ),
    ])
}

fn cmd_angle(
    file: &Path,
    form: &str,
    x: &str,
    y: &str,
    kind: KindArg,
    tol: Tolerances,
) -> Result<CmdOutput, CliError> {
    let pf = ProblemFile::load(file)?;
    let g = pf.form(form, tol)?;
    let xv = pf.vector(x)?;
    let yv = pf.vector(y)?;
    let value = g.angle(&xv, &yv, kind.into())?;
    let field = pf.scalar_field();

    let json = object(vec![
        ("command", Value::String("angle".into())),
        ("form", Value::String(form.into())),
        ("x", Value::String(x.into())),
        ("y", Value::String(y.into())),
        ("kind", Value::String(value.kind.name().into())),
        ("theta", value.theta.map(float).unwrap_or(Value::Null)),
        ("cos", scalar_value(field, value.cos_value)),
        (
            "pseudo_arg",
            value.pseudo_arg.map(float).unwrap_or(Value::Null),
        ),
    ]);

    let mut text = TextReport::new();
    text.push("kind", value.kind.name());
    if let Some(theta) = value.theta {
        text.push_f64("theta", theta);
    }
    text.push_value("cos", &scalar_value(field, value.cos_value));
    if let Some(arg) = value.pseudo_arg {
        text.push_f64("pseudo_arg", arg);
    }
    Ok(CmdOutput {
        json,
        text: text.finish(),
        exit: 0,
    })
}

fn cmd_check_conformal(
    cli: &Cli,
    file: &Path,
    g1: &str,
    g2: &str,
    theta0: &[f64],
    trials: usize,
    tol: Tolerances,
) -> Result<CmdOutput, CliError> {
    let pf = ProblemFile::load(file)?;
    let form1 = pf.form(g1, tol)?;
    let form2 = pf.form(g2, tol)?;
    let field = pf.scalar_field();

    let verdict = check_conformal(&form1, &form2)?;
    let probes = if theta0.is_empty() {
        default_theta0_probes()
    } else {
        theta0.to_vec()
    };
    let suite = equivalence_suite(&form1, &form2, trials, cli.seed, &probes)?;
    let fixed: Vec<(f64, innerspace::FixedAngleCheck)> = probes
        .iter()
        .map(|&t| same_fixed_angle(&form1, &form2, t, cli.scan_steps).map(|c| (t, c)))
        .collect::<Result<_, _>>()?;

    let fixed_json: Vec<Value> = fixed
        .iter()
        .map(|(t, check)| {
            object(vec![
                ("theta0", float(*t)),
                ("same", Value::Bool(check.same)),
                (
                    "witness",
                    check
                        .witness
                        .as_ref()
                        .map(|w| witness_value(field, w))
                        .unwrap_or(Value::Null),
                ),
            ])
        })
        .collect();

    let json = object(vec![
        ("command", Value::String("check-conformal".into())),
        ("g1", Value::String(g1.into())),
        ("g2", Value::String(g2.into())),
        ("conformal", Value::Bool(verdict.conformal)),
        ("factor", verdict.factor.map(float).unwrap_or(Value::Null)),
        ("residual", float(verdict.residual)),
        (
            "witness",
            verdict
                .witness
                .as_ref()
                .map(|w| witness_value(field, w))
                .unwrap_or(Value::Null),
        ),
        ("suite", suite_value(&suite)),
        ("fixed_angle", Value::Array(fixed_json)),
    ]);

    let mut text = TextReport::new();
    text.push("conformal", verdict.conformal.to_string());
    if let Some(factor) = verdict.factor {
        text.push_f64("factor", factor);
    }
    text.push_f64("residual", verdict.residual);
    if let Some(w) = &verdict.witness {
        push_witness_text(&mut text, "witness", field, w);
    }
    text.push_f64("suite_factor", suite.factor);
    text.push("suite_all_agree", suite.all_agree.to_string());
    for item in &suite.items {
        text.push(
            &format!("suite_{}", item.name),
            if item.pass { "pass" } else { "fail" },
        );
        text.push_f64(&format!("suite_{}_dev", item.name), item.max_deviation);
    }
    text.push(
        "norm_coincidence_vector_found",
        suite.norm_coincidence.vector_found.to_string(),
    );
    text.push(
        "norm_coincidence_factor_is_one",
        match suite.norm_coincidence.factor_is_one {
            Some(b) => b.to_string(),
            None => "none".into(),
        },
    );
    text.push(
        "norm_coincidence_consistent",
        suite.norm_coincidence.consistent.to_string(),
    );
    for (idx, (t, check)) in fixed.iter().enumerate() {
        text.push_f64(&format!("fixed_angle_{idx}_theta0"), *t);
        text.push(&format!("fixed_angle_{idx}_same"), check.same.to_string());
        if let Some(w) = &check.witness {
            push_witness_text(&mut text, &format!("fixed_angle_{idx}_witness"), field, w);
        }
    }

    Ok(CmdOutput {
        json,
        text: text.finish(),
        exit: if verdict.conformal { 0 } else { 1 },
    })
}

fn cmd_polarize(
    file: &Path,
    form: &str,
    x: &str,
    y: &str,
    tol: Tolerances,
) -> Result<CmdOutput, CliError> {
    let pf = ProblemFile::load(file)?;
    let g = pf.form(form, tol)?;
    let xv = pf.vector(x)?;
    let yv = pf.vector(y)?;
    let field = pf.scalar_field();

    let value = polarize(field, |v| g.norm(v).expect("validated dimensions"), &xv, &yv)?;
    let direct = g.inner(&xv, &yv)?;
    let abs = (value - direct).norm();
    let rel = abs / (1.0 + direct.norm());

    let json = object(vec![
        ("command", Value::String("polarize".into())),
        ("form", Value::String(form.into())),
        ("x", Value::String(x.into())),
        ("y", Value::String(y.into())),
        ("value", scalar_value(field, value)),
        ("direct", scalar_value(field, direct)),
        ("discrepancy_abs", float(abs)),
        ("discrepancy_rel", float(rel)),
    ]);

    let mut text = TextReport::new();
    text.push_value("value", &scalar_value(field, value));
    text.push_value("direct", &scalar_value(field, direct));
    text.push_f64("discrepancy_abs", abs);
    text.push_f64("discrepancy_rel", rel);
    Ok(CmdOutput {
        json,
        text: text.finish(),
        exit: 0,
    })
}

fn cmd_witness(
    file: &Path,
    g1: &str,
    g2: &str,
    tol: Tolerances,
) -> Result<CmdOutput, CliError> {
    let pf = ProblemFile::load(file)?;
    let form1 = pf.form(g1, tol)?;
    let form2 = pf.form(g2, tol)?;
    let field = pf.scalar_field();
    let verdict = check_conformal(&form1, &form2)?;

    let json = object(vec![
        ("command", Value::String("witness".into())),
        ("g1", Value::String(g1.into())),
        ("g2", Value::String(g2.into())),
        ("conformal", Value::Bool(verdict.conformal)),
        ("factor", verdict.factor.map(float).unwrap_or(Value::Null)),
        ("residual", float(verdict.residual)),
        (
            "witness",
            verdict
                .witness
                .as_ref()
                .map(|w| witness_value(field, w))
                .unwrap_or(Value::Null),
        ),
    ]);

    let mut text = TextReport::new();
    text.push("conformal", verdict.conformal.to_string());
    if let Some(factor) = verdict.factor {
        text.push_f64("factor", factor);
    }
    text.push_f64("residual", verdict.residual);
    if let Some(w) = &verdict.witness {
        push_witness_text(&mut text, "witness", field, w);
    }
    Ok(CmdOutput {
        json,
        text: text.finish(),
        exit: if verdict.conformal { 0 } else { 1 },
    })
}

fn cmd_metric_field(file: &Path, tol: Tolerances) -> Result<CmdOutput, CliError> {
    let pf = ProblemFile::load(file)?;
    let sample = pf.metric_sample(tol)?;
    let field = pointwise_conformality(&sample).map_err(|e| match e {
        innerspace::Error::EmptySample => CliError::Input("grid has no points".into()),
        other => CliError::Math(other),
    })?;

    let coords_value =
        |p: &[f64]| Value::Array(p.iter().map(|&c| float(c)).collect::<Vec<_>>());
    let points_json: Vec<Value> = sample
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            object(vec![
                ("coords", coords_value(p)),
                ("factor", float(field.factors[i])),
                ("norm_ratio", float(field.factors[i].sqrt())),
                ("residual", float(field.residuals[i])),
                ("conformal", Value::Bool(field.conformal_at[i])),
            ])
        })
        .collect();

    let json = object(vec![
        ("command", Value::String("metric-field".into())),
        ("verdict", Value::String(field.verdict.name().into())),
        // factors are inner-product ratios; the norm ratio at a point is √f(p)
        ("norm_ratio_is_sqrt_of_factor", Value::Bool(true)),
        (
            "failing_point",
            field
                .failing_point
                .map(|i| {
                    object(vec![
                        ("index", Value::Number(i.into())),
                        ("coords", coords_value(&sample.points()[i])),
                    ])
                })
                .unwrap_or(Value::Null),
        ),
        ("points", Value::Array(points_json)),
    ]);

    let mut text = TextReport::new();
    text.push("verdict", field.verdict.name());
    text.push("norm_ratio_is_sqrt_of_factor", "true");
    if let Some(i) = field.failing_point {
        text.push("failing_point_index", i.to_string());
        text.push_value("failing_point_coords", &coords_value(&sample.points()[i]));
    }
    for (i, p) in sample.points().iter().enumerate() {
        text.push_value(&format!("point_{i}_coords"), &coords_value(p));
        text.push_f64(&format!("point_{i}_factor"), field.factors[i]);
        text.push_f64(&format!("point_{i}_residual"), field.residuals[i]);
        text.push(
            &format!("point_{i}_conformal"),
            field.conformal_at[i].to_string(),
        );
    }

    Ok(CmdOutput {
        json,
        text: text.finish(),
        exit: if field.verdict == FieldVerdict::NotConformal {
            1
        } else {
            0
        },
    })
}
