//! Command-line front end used by the `pinch4` binary.
//!
//! [`run`] never prints; it returns the exit code and the text to emit so the
//! binary stays a few lines long and tests can call it directly.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, Matrix3, Matrix4};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::check::CheckReport;
use crate::curvature::{CurvatureDecomposition, CurvatureOperator, RiemannTensor};
use crate::error::{Error, Result};
use crate::models::{model, ModelName, ModelParams, ModelSpace};
use crate::pinching::{self, theorem1_verdict, theorem2_verdict, TheoremVerdict};
use crate::scan::{self, scan_operator, Budget, PinchingCertificate, PinchingReport};
use crate::tol;
use crate::topology::{homogeneous_invariants, integrands};
use crate::ville::{self, AVersion};
use crate::weitzenbock;

#[derive(Parser, Debug, Clone)]
#[command(name = "pinch4", version, about = "Pointwise curvature algebra and pinching verdicts in dimension four")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Curvature tensor in JSON (`{"components": [[[[...]]]]}`).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Built-in model: S4, CP2, S2xS2 or FlatT4.
    #[arg(long, global = true)]
    pub model: Option<String>,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, global = true, default_value_t = 4.0)]
    pub c: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long = "L", global = true, default_value_t = 1.0)]
    pub l: f64,
    /// Number of random samples for the check suites.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Slack allowed before a checked inequality counts as failed.
    #[arg(long, global = true, default_value_t = tol::INEQUALITY)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// First nonzero Laplace eigenvalue, for `verdict thm2` on input tensors.
    #[arg(long, global = true)]
    pub lambda1: Option<f64>,
    /// Pinching constant for `check ville|deg` (default: the scanned minimum).
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Block decomposition and Weyl eigenvalues.
    Decompose,
    /// Extremes of sectional and biorthogonal curvature.
    Scan,
    /// Weitzenböck operator and its lower bound on random forms.
    Weitzenbock,
    /// Inequality suites.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
    /// Euler characteristic and signature of a homogeneous model.
    Invariants,
    /// The pinching constant, by bisection and in closed form.
    DeltaStar,
    /// Theorem hypotheses and conclusions for one tensor.
    Verdict {
        #[command(subcommand)]
        which: VerdictKind,
    },
    /// Built-in models.
    Model {
        #[command(subcommand)]
        which: ModelCommand,
    },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Seaman,
    Lemma1,
    K3bound,
    Ville,
    Deg,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    Thm1,
    Thm2,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelCommand {
    List,
    Export,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub model_name: Option<String>,
    pub params: ModelParams,
    pub samples: usize,
    pub tol: f64,
    pub seed: u64,
    pub lambda1: Option<f64>,
    pub delta: Option<f64>,
    pub output_format: OutputFormat,
    pub budget: Budget,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let g = cli.global;
        Self {
            command: cli.command,
            input_path: g.input,
            model_name: g.model,
            params: ModelParams {
                r: g.r,
                c: g.c,
                a: g.a,
                b: g.b,
                l: g.l,
            },
            samples: g.samples,
            tol: g.tol,
            seed: g.seed,
            lambda1: g.lambda1,
            delta: g.delta,
            output_format: g.output_format,
            budget: Budget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;

/// An ordered list of named values, rendered as JSON or `key: value` lines.
struct Report {
    fields: Map<String, Value>,
    ok: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        let mut fields = Map::new();
        fields.insert("command".into(), json!(command));
        Self { fields, ok: true }
    }

    fn put<T: Serialize>(&mut self, key: &str, value: T) {
        self.fields
            .insert(key.into(), serde_json::to_value(value).expect("report values serialise"));
    }

    fn check(&mut self, key: &str, rep: &CheckReport, tol: f64) {
        let pass = rep.min_slack >= -rep.tolerance.max(tol) || rep.samples == 0;
        self.ok &= pass;
        let mut v = serde_json::to_value(rep).expect("check report serialises");
        v["passed"] = json!(pass);
        if !rep.min_slack.is_finite() {
            v["min_slack"] = Value::Null;
        }
        self.fields.insert(key.into(), v);
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.fields).expect("report serialises");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut s = String::new();
                for (k, v) in &self.fields {
                    if k == "components" {
                        continue;
                    }
                    render_text(&mut s, k, v, 0);
                }
                s
            }
        }
    }
}

fn render_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in m {
                render_text(out, k, v, depth + 1);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            let _ = writeln!(out, "{pad}{key}:");
            for item in items {
                let _ = writeln!(out, "{pad}  {}", compact(item));
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{key}: {}", compact(v));
        }
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() && x != 0.0 && x.abs() < 1e-4 => format!("{x:.3e}"),
            Some(x) if n.is_f64() => format!("{x:.10}"),
            _ => n.to_string(),
        },
        Value::Array(items) => format!("[{}]", items.iter().map(compact).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn rows3(m: &Matrix3<f64>) -> Vec<Vec<f64>> {
    (0..3).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn rows4(m: &Matrix4<f64>) -> Vec<Vec<f64>> {
    (0..4).map(|i| m.row(i).iter().copied().collect()).collect()
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

struct Source {
    tensor: RiemannTensor,
    model: Option<ModelSpace>,
}

fn model_space(cfg: &RunConfig) -> Result<Option<ModelSpace>> {
    match &cfg.model_name {
        Some(name) => Ok(Some(model(name.parse::<ModelName>()?, &cfg.params)?)),
        None => Ok(None),
    }
}

fn load(cfg: &RunConfig) -> Result<Source> {
    match (&cfg.input_path, &cfg.model_name) {
        (Some(_), Some(_)) => Err(Error::InconsistentInputs("give either --input or --model, not both".into())),
        (None, None) => Err(Error::InconsistentInputs("this command needs --input or --model".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InconsistentInputs(format!("cannot read {}: {e}", path.display())))?;
            Ok(Source {
                tensor: RiemannTensor::from_json_str(&text)?,
                model: None,
            })
        }
        (None, Some(_)) => {
            let m = model_space(cfg)?.expect("model name present");
            Ok(Source {
                tensor: m.tensor.clone(),
                model: Some(m),
            })
        }
    }
}

fn echo(rep: &mut Report, cfg: &RunConfig) {
    rep.put("tol", cfg.tol);
    rep.put("seed", cfg.seed);
    rep.put("samples", cfg.samples);
    rep.put("budget", cfg.budget);
}

fn decomposition_fields(rep: &mut Report, dec: &CurvatureDecomposition) {
    rep.put("s", dec.s);
    rep.put("u", dec.u);
    rep.put("ric", rows4(&dec.ric));
    rep.put("ric0", rows4(&dec.ric0));
    rep.put("wplus", rows3(&dec.wplus));
    rep.put("wminus", rows3(&dec.wminus));
    rep.put("z_block", rows3(&dec.z_block));
    rep.put("wplus_eigenvalues", dec.wp_eigs);
    rep.put("wminus_eigenvalues", dec.wm_eigs);
    rep.put("wplus_norm2", dec.wplus_norm2());
    rep.put("wminus_norm2", dec.wminus_norm2());
    rep.put("ric0_norm2", dec.ric0_norm2());
    rep.put("z_norm2", dec.z_norm2());
}

fn scan_fields(rep: &mut Report, scan: &PinchingReport, dec: &CurvatureDecomposition) {
    rep.put("k_min", scan.k_min);
    rep.put("k_max", scan.k_max);
    rep.put("delta", scan.delta);
    rep.put("k1perp", scan.k1perp);
    rep.put("k3perp", scan.k3perp);
    rep.put("k1perp_closed_form", scan::k1perp_closed_form(dec));
    rep.put("k3perp_closed_form", scan::k3perp_closed_form(dec));
    rep.put("scan_accuracy", scan.accuracy());
}

fn verdict_fields(rep: &mut Report, v: &TheoremVerdict) {
    rep.ok &= v.hypotheses_hold;
    rep.put("verdict", v);
}

/// Pinching certificate for the ville suites: `--delta` if given, otherwise
/// the scanned minimum (clamped to `[0, 1]`).
fn certify(cfg: &RunConfig, op: CurvatureOperator, scan: PinchingReport) -> Result<PinchingCertificate> {
    let delta = cfg
        .delta
        .unwrap_or_else(|| (scan.k_min - scan.accuracy()).clamp(0.0, 1.0));
    PinchingCertificate::from_report(op, scan, delta)
}

fn execute(cfg: &RunConfig) -> Result<Report> {
    cfg.budget.validate()?;
    let mut rep;
    match &cfg.command {
        Command::DeltaStar => {
            rep = Report::new("delta-star");
            let d = pinching::delta_star();
            rep.put("delta_star", format!("{:.16}", d.bisection));
            rep.put("bisection", d.bisection);
            rep.put("closed_form", "(3*sqrt(3) - 5)/4");
            rep.put("closed_form_value", format!("{:.16}", d.closed_form));
            rep.put("difference", (d.bisection - d.closed_form).abs());
            let c = pinching::CornerValues::closed_form(d.closed_form);
            rep.put("corners_at_delta_star", c);
            rep.put("hessian_inner_eigenvalues", pinching::hessian_inner_eigs());
            rep.put("cellwise_minimum_at_delta_star", pinching::cell_vertex_min(d.closed_form));
            rep.put("cellwise_critical_delta", d.cellwise_bisection);
            rep.put("cellwise_closed_form", "(3*sqrt(39) - 14)/31");
            rep.put("cellwise_closed_form_value", d.cellwise_closed_form);
        }
        Command::Model { which: ModelCommand::List } => {
            rep = Report::new("model list");
            let mut list = Vec::new();
            for name in ModelName::ALL {
                let m = model(name, &ModelParams::default())?;
                list.push(json!({
                    "name": m.name,
                    "params": m.params.iter().map(|(k, v)| json!({ *k: v })).collect::<Vec<_>>(),
                    "volume": m.volume,
                    "lambda1": m.lambda1,
                    "lambda1_source": m.lambda1_source,
                    "expected_chi": m.expected_chi,
                    "expected_tau": m.expected_tau,
                }));
            }
            rep.put("models", list);
        }
        Command::Model {
            which: ModelCommand::Export,
        } => {
            let m = model_space(cfg)?.ok_or_else(|| Error::InconsistentInputs("model export needs --model".into()))?;
            rep = Report::new("model export");
            rep.put("model", &m.name);
            rep.put("components", m.tensor.components);
        }
        Command::Invariants => {
            rep = Report::new("invariants");
            if cfg.input_path.is_some() {
                return Err(Error::InconsistentInputs(
                    "invariants need a built-in model (a single tensor has no volume)".into(),
                ));
            }
            let m = model_space(cfg)?.ok_or_else(|| Error::InconsistentInputs("invariants need --model".into()))?;
            let inv = homogeneous_invariants(&m)?;
            let dec = CurvatureDecomposition::new(&m.tensor)?;
            rep.put("model", &m.name);
            rep.put("volume", m.volume);
            rep.put("chi", inv.chi);
            rep.put("tau", inv.tau);
            rep.put("chi_minus_2tau", inv.chi_minus_2tau);
            rep.put("expected_chi", m.expected_chi);
            rep.put("expected_tau", m.expected_tau);
            rep.put("integrands", integrands(&dec));
            rep.put("tol", cfg.tol);
        }
        cmd => {
            let src = load(cfg)?;
            let dec = CurvatureDecomposition::new(&src.tensor)?;
            let op = CurvatureOperator::from_tensor(&src.tensor)?;
            match cmd {
                Command::Decompose => {
                    rep = Report::new("decompose");
                    echo(&mut rep, cfg);
                    decomposition_fields(&mut rep, &dec);
                    rep.put("symmetry_residual", src.tensor.validate_symmetries().max_residual());
                    rep.put("components", src.tensor.components);
                }
                Command::Scan => {
                    rep = Report::new("scan");
                    echo(&mut rep, cfg);
                    let scan = scan_operator(&op, &cfg.budget)?;
                    scan_fields(&mut rep, &scan, &dec);
                    rep.put("argmin", scan.argmin.form.coeffs);
                    rep.put("argmax", scan.argmax.form.coeffs);
                }
                Command::Weitzenbock => {
                    rep = Report::new("weitzenbock");
                    echo(&mut rep, cfg);
                    let w = weitzenbock::weitzenbock_operator(&src.tensor)?;
                    let m = DMatrix::from_iterator(6, 6, w.matrix.iter().copied());
                    let mut eig: Vec<f64> = w.matrix.symmetric_eigenvalues().iter().copied().collect();
                    eig.sort_by(f64::total_cmp);
                    rep.put("operator", rows(&m));
                    rep.put("eigenvalues", eig);
                    let (fin, mid) = weitzenbock::lemma1_suite(&src.tensor, cfg.samples, cfg.seed)?;
                    rep.check("lower_bound", &fin, cfg.tol);
                    rep.check("intermediate_bound", &mid, cfg.tol);
                }
                Command::Check { which } => {
                    rep = Report::new(match which {
                        CheckKind::Seaman => "check seaman",
                        CheckKind::Lemma1 => "check lemma1",
                        CheckKind::K3bound => "check k3bound",
                        CheckKind::Ville => "check ville",
                        CheckKind::Deg => "check deg",
                    });
                    echo(&mut rep, cfg);
                    match which {
                        CheckKind::Seaman => {
                            let r = scan::seaman_check(&src.tensor, cfg.samples, cfg.seed)?;
                            rep.check("seaman", &r, cfg.tol);
                        }
                        CheckKind::Lemma1 => {
                            let (fin, mid) = weitzenbock::lemma1_suite(&src.tensor, cfg.samples, cfg.seed)?;
                            rep.check("lower_bound", &fin, cfg.tol);
                            rep.check("intermediate_bound", &mid, cfg.tol);
                        }
                        CheckKind::K3bound => {
                            rep.check("k3bound", &weitzenbock::k3_bound_check(&dec), cfg.tol);
                        }
                        CheckKind::Ville | CheckKind::Deg => {
                            let scan = scan_operator(&op, &cfg.budget)?;
                            let cert = certify(cfg, op, scan)?;
                            rep.put("delta", cert.delta());
                            if *which == CheckKind::Ville {
                                let b = ville::operator_bounds_certified(&dec, &cert, cfg.samples, cfg.seed)?;
                                rep.check("planes", &b.planes, cfg.tol);
                                rep.check("self_dual", &b.self_dual, cfg.tol);
                                let z = ville::znorm_bound_check(&dec, &cert, AVersion::Derived)?;
                                rep.check("z_norm", &z, cfg.tol);
                                let alt = ville::znorm_bound_check(&dec, &cert, AVersion::Alternate)?;
                                rep.put("z_norm_alternate", alt);
                            }
                            let deg = ville::deg_lower_bound(&dec, &cert)?;
                            let mut r = CheckReport::new("F(g) lower bound", cert.report().accuracy());
                            r.record(deg.slack());
                            rep.put("fg", deg.fg);
                            rep.put("fg_bound", deg.bound);
                            rep.check("deg", &r, cfg.tol);
                        }
                    }
                }
                Command::Verdict { which } => {
                    let scan = scan_operator(&op, &cfg.budget)?;
                    match which {
                        VerdictKind::Thm1 => {
                            rep = Report::new("verdict thm1");
                            echo(&mut rep, cfg);
                            scan_fields(&mut rep, &scan, &dec);
                            verdict_fields(&mut rep, &theorem1_verdict(&dec, &scan)?);
                        }
                        VerdictKind::Thm2 => {
                            rep = Report::new("verdict thm2");
                            echo(&mut rep, cfg);
                            let lambda1 = cfg
                                .lambda1
                                .or_else(|| src.model.as_ref().and_then(|m| m.lambda1))
                                .ok_or_else(|| Error::InconsistentInputs("verdict thm2 needs --lambda1".into()))?;
                            rep.put("lambda1", lambda1);
                            if let Some(m) = src.model.as_ref().filter(|_| cfg.lambda1.is_none()) {
                                rep.put("lambda1_source", m.lambda1_source);
                            }
                            scan_fields(&mut rep, &scan, &dec);
                            verdict_fields(&mut rep, &theorem2_verdict(&dec, &scan, lambda1)?);
                        }
                    }
                }
                _ => unreachable!("handled above"),
            }
        }
    }
    Ok(rep)
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match execute(cfg) {
        Ok(rep) => Outcome {
            code: if rep.ok { EXIT_OK } else { EXIT_HYPOTHESIS },
            stdout: rep.render(cfg.output_format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: match e {
                Error::PinchingNotVerified { .. } => EXIT_HYPOTHESIS,
                _ => EXIT_ERROR,
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parse arguments and run; clap usage errors are reported with exit code 1.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&RunConfig::from(cli)),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            }
        }
    }
}
