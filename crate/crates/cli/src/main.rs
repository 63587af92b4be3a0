//! Command-line front end: constants lookup, grid verification, sharpness
//! sweeps and mode-decomposition checks.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
//! numerical failure, invalid parameters or an unreadable config.

mod config;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hardylab::constants::{beta_range, family_constant, CaseParams, Family};
use hardylab::corpus::{polynomial_bump, ExtremizerFamily, FamilyKind};
use hardylab::functionals::{run_suite, sharpness_sweep_with, BetaChoice, CellOutcome, Status};
use hardylab::harmonics::{coefficient_check, log_grid, mode_form, mow_compare, pointwise_positivity, ModeSpec};

use config::{CaseSelection, RunConfig};
use table::{Field, Format, Table};

#[derive(Parser)]
#[command(name = "hardylab", version, about = "Numerical checks of sharp Hardy and Rellich inequalities")]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "HARDYLAB_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a sharp constant with its admissible beta interval.
    Constants(ConstantsArgs),
    /// Evaluate every case x parameter x profile cell of a grid.
    Verify(VerifyArgs),
    /// `verify` restricted to the cases with an exact identity.
    Identity(VerifyArgs),
    /// Rayleigh quotients along an extremizer family.
    Sharpness(SharpnessArgs),
    /// Spherical-harmonic mode checks in hyperbolic space.
    Mow(MowArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ConstantsArgs {
    /// Constant family, e.g. hardy, onetwo, c_even, critical_odd.
    #[arg(long)]
    case: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON run configuration (schema "1").
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
    /// Case ids, "all" or "identity"; overrides the config.
    #[arg(long, value_delimiter = ',')]
    case: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    p: Vec<f64>,
    /// Numbers or "(n-p)/2".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<BetaChoice>,
    #[arg(long, value_delimiter = ',')]
    b: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    l: Vec<usize>,
    /// Corpus ids such as bump:R=1,m=4 (separate several with ';').
    #[arg(long, value_delimiter = ';')]
    corpus: Vec<String>,
}

#[derive(Args)]
struct SharpnessArgs {
    /// Extremizer family: hardy, critical, onetwo or rellich2.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    /// Decreasing scales; defaults depend on the family.
    #[arg(long, value_delimiter = ',')]
    scales: Vec<f64>,
    /// Config supplying scales and tolerance.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MowArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [4u32, 5, 6, 7, 8])]
    n: Vec<u32>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-1.9, -1.0, 0.0, 1.0, 2.0])]
    beta: Vec<f64>,
    /// Highest mode index.
    #[arg(long, default_value_t = 10)]
    k_max: u32,
    /// Highest series index for the coefficient check.
    #[arg(long, default_value_t = 100)]
    l_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

/// Overall verdict, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Verdict {
    Pass,
    Fail,
    Numerical,
}

impl Verdict {
    fn code(self) -> ExitCode {
        ExitCode::from(match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Numerical => 2,
        })
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn write(table: &Table, output: &OutputArgs, cfg: Option<&RunConfig>) -> Result<(), String> {
    let format = output.format.or(cfg.and_then(|c| c.format)).unwrap_or_default();
    let path = output.out.as_deref().or(cfg.and_then(|c| c.out.as_deref()));
    table.write(format, path).map_err(|e| format!("cannot write report: {e}"))
}

fn cmd_constants(a: &ConstantsArgs) -> ExitCode {
    let family = match Family::parse(&a.case) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let params = CaseParams::new(a.n, a.p, a.beta, 0.0, a.l);
    let constant = match family_constant(family, &params) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let range = beta_range(family, a.n, a.p, a.l).map_or("none".to_string(), |r| {
        format!("({}, {}{}", r.lower, r.upper, if r.upper_inclusive { "]" } else { ")" })
    });
    let mut t = Table::new(&["family", "n", "p", "beta", "l", "constant", "beta_range", "source"]);
    t.push(vec![
        family.name().into(),
        a.n.into(),
        a.p.into(),
        a.beta.into(),
        a.l.into(),
        constant.into(),
        range.into(),
        family.source().into(),
    ]);
    match t.write(a.format, None) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => usage_error(e),
    }
}

fn cmd_verify(a: &VerifyArgs, identity_only: bool) -> ExitCode {
    let cfg = match &a.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        },
        None => RunConfig::default(),
    };
    let selection = if !a.case.is_empty() {
        CaseSelection::Many(a.case.clone())
    } else {
        cfg.cases.clone().unwrap_or(CaseSelection::One(if identity_only { "identity" } else { "all" }.into()))
    };
    let cases = match selection.resolve() {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    if identity_only {
        if let Some(c) = cases.iter().find(|c| !c.has_identity()) {
            return usage_error(format!("{c} has no identity; use verify"));
        }
    }
    let mut grid = cfg.grid.clone().unwrap_or_default();
    macro_rules! override_list {
        ($($f:ident),*) => {$(if !a.$f.is_empty() { grid.$f = a.$f.clone(); })*};
    }
    override_list!(n, p, beta, b, l);
    let corpus = if a.corpus.is_empty() {
        cfg.corpus()
    } else {
        RunConfig { corpus: Some(a.corpus.clone()), ..RunConfig::default() }.corpus()
    };
    let (corpus, opts) = match (corpus, cfg.eval_options()) {
        (Ok(c), Ok(o)) => (c, o),
        (Err(e), _) | (_, Err(e)) => return usage_error(e),
    };

    let cells = run_suite(&cases, &grid, &corpus, &opts);
    let mut t = Table::new(&[
        "case", "n", "p", "beta", "b", "l", "corpus_id", "lhs", "rhs", "constant", "slack", "residual", "quad_error", "status",
    ]);
    let mut verdict = Verdict::Pass;
    for cell in &cells {
        let c = cell.params;
        let mut row: Vec<Field> = vec![
            cell.case.name().into(),
            c.n.into(),
            c.p.into(),
            c.beta.into(),
            c.b.into(),
            c.l.into(),
            cell.corpus_id.clone().into(),
        ];
        match &cell.outcome {
            CellOutcome::Report(r) => {
                verdict = verdict.max(match r.status {
                    Status::Pass => Verdict::Pass,
                    Status::Fail => Verdict::Fail,
                    Status::NumericalFailure => Verdict::Numerical,
                });
                row.extend([
                    r.lhs.into(),
                    r.rhs.into(),
                    r.constant.into(),
                    r.slack.into(),
                    r.identity_residual.into(),
                    r.quad_error_budget.into(),
                    r.status.to_string().into(),
                ]);
            }
            CellOutcome::Skipped { reason } => {
                row.extend(std::iter::repeat_n(Field::Empty, 6));
                row.push(format!("skipped: {reason}").into());
            }
            CellOutcome::Error { message } => {
                verdict = Verdict::Numerical;
                row.extend(std::iter::repeat_n(Field::Empty, 6));
                row.push(format!("numerical-failure: {message}").into());
            }
        }
        t.push(row);
    }
    if let Err(e) = write(&t, &a.output, Some(&cfg)) {
        return usage_error(e);
    }
    verdict.code()
}

fn default_scales(kind: FamilyKind, p: f64) -> Vec<f64> {
    match kind {
        FamilyKind::Hardy => vec![1e-1, 1e-3, 1e-6],
        _ => {
            let (_, hi) = kind.scale_range(p);
            [0.2, 0.1, 0.05, 0.02].into_iter().filter(|&s| s <= hi).collect()
        }
    }
}

fn cmd_sharpness(a: &SharpnessArgs) -> ExitCode {
    let cfg = match &a.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => Some(c),
            Err(e) => return usage_error(e),
        },
        None => None,
    };
    let kind = match FamilyKind::parse(&a.family) {
        Ok(k) => k,
        Err(e) => return usage_error(e),
    };
    let scales = if !a.scales.is_empty() {
        a.scales.clone()
    } else {
        cfg.as_ref().and_then(|c| c.scales.clone()).unwrap_or_else(|| default_scales(kind, a.p))
    };
    let opts = match cfg.as_ref().map_or(Ok(Default::default()), RunConfig::eval_options) {
        Ok(o) => o,
        Err(e) => return usage_error(e),
    };
    let params = CaseParams::new(a.n, a.p, a.beta, a.b, 0);
    let points = match ExtremizerFamily::new(kind, params).and_then(|f| sharpness_sweep_with(&f, &scales, &opts)) {
        Ok(p) => p,
        Err(e) => return usage_error(e),
    };
    let mut t = Table::new(&["family", "scale", "lhs", "rhs", "quotient", "gap", "error", "status"]);
    let mut verdict = Verdict::Pass;
    for (i, pt) in points.iter().enumerate() {
        let decreasing = i == 0 || pt.gap < points[i - 1].gap + pt.error + points[i - 1].error;
        let ok = pt.gap > -pt.error && decreasing;
        if pt.status == Status::NumericalFailure {
            verdict = Verdict::Numerical;
        } else if !ok {
            verdict = verdict.max(Verdict::Fail);
        }
        t.push(vec![
            kind.name().into(),
            pt.scale.into(),
            pt.lhs.into(),
            pt.rhs.into(),
            pt.quotient.into(),
            pt.gap.into(),
            pt.error.into(),
            if ok { pt.status.to_string() } else { "fail".to_string() }.into(),
        ]);
    }
    if let Err(e) = write(&t, &a.output, cfg.as_ref()) {
        return usage_error(e);
    }
    verdict.code()
}

// check name, mode index, profile id, (value, passed)
type CheckRow = (&'static str, u32, String, Result<(f64, bool), String>);

fn cmd_mow(a: &MowArgs) -> ExitCode {
    let mut t = Table::new(&["check", "n", "beta", "k", "profile", "value", "status"]);
    let mut verdict = Verdict::Pass;
    let grid = log_grid(1e-6, 30.0, 2000);
    let radial = ModeSpec::new(0, Arc::new(polynomial_bump(1.5, 4).expect("fixed bump parameters are valid")));
    for &n in &a.n {
        for &beta in &a.beta {
            let mut rows: Vec<CheckRow> = Vec::new();
            if !beta_range(Family::Mow, n, 2.0, 0).is_some_and(|r| r.contains(beta)) {
                t.push(vec![
                    "all".into(),
                    n.into(),
                    beta.into(),
                    Field::Empty,
                    Field::Empty,
                    Field::Empty,
                    format!("skipped: beta outside (-2, n-4] for n = {n}").into(),
                ]);
                continue;
            }
            for k in 1..=a.k_max {
                match ModeSpec::pair(k) {
                    Ok(pair) => {
                        for mode in pair {
                            let r = mode_form(n, beta, &mode).map(|v| (v.value, v.value >= -1e-9)).map_err(|e| e.to_string());
                            rows.push(("mode_form", k, mode.profile.id(), r));
                        }
                    }
                    Err(e) => rows.push(("mode_form", k, String::new(), Err(e.to_string()))),
                }
                let r = coefficient_check(n, beta, k, a.l_max).map(|c| (c.min_coefficient, c.passed())).map_err(|e| e.to_string());
                rows.push(("coefficients", k, String::new(), r));
            }
            let r = mow_compare(n, beta, std::slice::from_ref(&radial))
                .map(|c| (c.slack, c.slack.abs() <= 1e-9 * c.lhs.abs().max(1.0)))
                .map_err(|e| e.to_string());
            rows.push(("radial_slack", 0, radial.profile.id(), r));
            let r = pointwise_positivity(n, beta, &grid).map(|m| (m, m > 0.0)).map_err(|e| e.to_string());
            rows.push(("pointwise_min", 0, String::new(), r));

            for (check, k, profile, r) in rows {
                let (value, status) = match r {
                    Ok((v, true)) => (Field::Float(v), "pass".to_string()),
                    Ok((v, false)) => {
                        verdict = verdict.max(Verdict::Fail);
                        (Field::Float(v), "fail".to_string())
                    }
                    Err(e) => {
                        verdict = Verdict::Numerical;
                        (Field::Empty, format!("numerical-failure: {e}"))
                    }
                };
                t.push(vec![check.into(), n.into(), beta.into(), k.into(), profile.into(), value, status.into()]);
            }
        }
    }
    if let Err(e) = write(&t, &a.output, None) {
        return usage_error(e);
    }
    verdict.code()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return usage_error("--jobs must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return usage_error(e);
        }
    }
    match &cli.command {
        Command::Constants(a) => cmd_constants(a),
        Command::Verify(a) => cmd_verify(a, false),
        Command::Identity(a) => cmd_verify(a, true),
        Command::Sharpness(a) => cmd_sharpness(a),
        Command::Mow(a) => cmd_mow(a),
    }
}
