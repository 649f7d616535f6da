//! Command-line front end.
//!
//! Exit codes: 0 success, 1 theorem violation, 2 parse error, 3 degenerate input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::distinguish::{
    decompose, decompose_all, distinguishability_outcome, hyperplane_witness_from_effects, verify_hyperplane_witness,
    witness_from_outcome, Decomposition, DistinguishabilityWitness,
};
use crate::error::Error;
use crate::geometry::Point;
use crate::linprog::LpOutcome;
use crate::models::{
    ball_decompose, ball_distinguishable, cylinder_decompose, cylinder_distinguishable, model_theorem17_report,
    Model, ModelDecomposition, ModelPoint,
};
use crate::polytope::{generate, load_polytope, LoadedPolytope, PolytopeSpec};
use crate::theorems::{analyze_polytope, default_corpus, polytope_theorem17, theorem_suite, CorpusEntry, SuiteReport};

pub const REPORT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "statespace", version, about = "Distinguishability, symmetry and decomposition of convex state spaces")]
pub struct Cli {
    /// Trace every LP tableau to stderr.
    #[arg(long, global = true)]
    pub debug_lp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Sampling {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full analysis of a polytope file.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Decide whether points of a polytope are distinguishable.
    Distinguish {
        file: PathBuf,
        /// JSON list of points, e.g. '[["1","1"],["-1","-1"]]'.
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decompose a point into distinguishable extreme points.
    Decompose {
        file: PathBuf,
        /// JSON point, e.g. '["1/3","1/3"]'.
        #[arg(long)]
        point: String,
        /// List every decomposition instead of the first.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write a generated polytope, e.g. `polygon(6)` or `prism(simplex(2))`.
    Gen {
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the theorem suite and the conjecture probe.
    Verify {
        /// `default` or a directory of polytope files.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Closed-form models.
    Model {
        #[command(subcommand)]
        model: ModelCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelCommand {
    /// The unit ball.
    Ball {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[command(subcommand)]
        action: ModelAction,
    },
    /// The cylinder {x² + y² ≤ 1, 0 ≤ z ≤ 1}.
    Cylinder {
        #[command(subcommand)]
        action: ModelAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModelAction {
    /// Points separated by `;`, coordinates by `,`.
    Distinguish {
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    Decompose {
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// The three symmetry and decomposition conditions.
    Report {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        sampling: Sampling,
    },
}

/// A command's printable result and exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_OK }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotFullDimensional | Error::EmptyPointSet | Error::FrameNotIndependent | Error::EffectConstant => {
            EXIT_DEGENERATE
        }
        _ => EXIT_PARSE,
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    if cli.debug_lp {
        env_logger::Builder::new().parse_filters("statespace::linprog=trace").init();
    }
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Analyze { file, format, sampling } => analyze(file, *format, *sampling),
        Command::Distinguish { file, points, format } => distinguish_cmd(file, points, *format),
        Command::Decompose { file, point, all, format } => decompose_cmd(file, point, *all, *format),
        Command::Gen { spec, output } => gen_cmd(spec, output.as_deref()),
        Command::Verify { corpus, format, sampling } => verify_cmd(corpus, *format, *sampling),
        Command::Model { model } => model_cmd(model),
    }
}

fn read_polytope(path: &Path) -> Result<LoadedPolytope, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    load_polytope(&text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn parse_json(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Accepts `["1/3","1/3"]`, numbers in place of strings, and the nested `[["1/3"],["1/3"]]` form.
fn point_from_value(v: &Value) -> Result<Point, Error> {
    let Value::Array(items) = v else { return Err(Error::Parse("a point is a JSON list".into())) };
    let flat: Vec<Value> = items
        .iter()
        .map(|c| match c {
            Value::Array(inner) if inner.len() == 1 => inner[0].clone(),
            other => other.clone(),
        })
        .collect();
    let coords = flat
        .iter()
        .map(|c| match c {
            Value::String(s) => s.parse(),
            Value::Number(n) => n.to_string().parse(),
            _ => Err(Error::Parse(format!("invalid coordinate {c}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Point::new(coords))
}

fn points_from_json(text: &str) -> Result<Vec<Point>, Error> {
    match parse_json(text)? {
        Value::Array(items) => items.iter().map(point_from_value).collect(),
        _ => Err(Error::Parse("points must be a JSON list of points".into())),
    }
}

fn analyze(file: &Path, format: Format, s: Sampling) -> Result<Outcome, Error> {
    let loaded = read_polytope(file)?;
    let poly = &loaded.polytope;
    let a = analyze_polytope(poly, s.trials, s.seed)?;
    let t17 = polytope_theorem17(&a);
    let set_points = |sets: &[Vec<usize>]| -> Vec<Vec<Point>> {
        sets.iter().map(|s| s.iter().map(|&i| poly.vertices()[i].clone()).collect()).collect()
    };
    let report = json!({
        "report_version": REPORT_VERSION,
        "command": "analyze",
        "input": { "file": file.display().to_string(), "dim": poly.dim(), "removed_points": loaded.removed },
        "seed": s.seed,
        "trials": s.trials,
        "extreme_points": poly.vertices(),
        "intrinsic_dim": poly.intrinsic_dim(),
        "automorphism_order": a.group_order,
        "generators": a.generators,
        "orbits": a.orbits.orbits,
        "vertex_transitive": a.vertex_transitive,
        "pair_transitive": a.pair_transitive,
        "fixed_point": a.fixed_point,
        "gram": {
            "entries": a.gram.entries.to_rows(),
            "invariant": a.gram_invariant,
            "positive_definite": a.gram_positive_definite,
            "orthonormalizing_basis": a.gram.orthonormalizing_basis(),
        },
        "max_distinguishable": { "k": a.max_distinguishable, "sets": set_points(&a.maximal_sets) },
        "decomposability": {
            "decomposable": a.decomposability.all_decomposable(),
            "decomposable_samples": a.decomposability.decomposable_samples,
            "counterexample": a.decomposability.counterexample,
        },
        "classification": a.classification,
        "theorem17": t17,
    });
    if format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    let mut t = String::new();
    let rows: Vec<(&str, String)> = vec![
        ("file", file.display().to_string()),
        ("dimension", poly.dim().to_string()),
        ("extreme points", poly.vertex_count().to_string()),
        ("removed points", loaded.removed.len().to_string()),
        ("automorphism order", a.group_order.to_string()),
        ("orbits", a.orbits.orbits.len().to_string()),
        ("vertex transitive", yn(a.vertex_transitive).into()),
        ("pair transitive", yn(a.pair_transitive).into()),
        ("fixed point", a.fixed_point.point.to_string()),
        ("fixed point unique", yn(a.fixed_point.unique).into()),
        ("fixed point interior", yn(a.fixed_point.interior).into()),
        ("gram matrix", format!("{:?}", a.gram.entries)),
        ("gram invariant", yn(a.gram_invariant).into()),
        ("max distinguishable", format!("k={} ({} sets)", a.max_distinguishable, a.maximal_sets.len())),
        ("decomposable", yn(a.decomposability.all_decomposable()).into()),
        ("samples decomposed", format!("{}/{}", a.decomposability.decomposable_samples, s.trials)),
        ("seed", s.seed.to_string()),
        ("label", a.classification.label.to_string()),
        (
            "conditions (1,2,3)",
            format!("{}, {}, {}", yn(t17.transitive.holds), yn(t17.pair_transitive.holds), yn(t17.two_decomposable.holds)),
        ),
    ];
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(t, "{k:<width$}  {v}");
    }
    Ok(Outcome::ok(t))
}

fn witness_json(w: &DistinguishabilityWitness) -> Value {
    json!(w.effects)
}

fn distinguish_cmd(file: &Path, points: &str, format: Format) -> Result<Outcome, Error> {
    let loaded = read_polytope(file)?;
    let poly = &loaded.polytope;
    let pts = points_from_json(points)?;
    let outcome = distinguishability_outcome(poly, &pts)?;
    let (distinguishable, body) = match &outcome {
        LpOutcome::Feasible { .. } => {
            let w = witness_from_outcome(poly.dim(), pts.len(), &outcome).expect("feasible outcome");
            let hw = if pts.len() >= 2 { hyperplane_witness_from_effects(poly, &pts, &w).ok() } else { None };
            let verified = hw.as_ref().map(|h| verify_hyperplane_witness(poly, &pts, h));
            (true, json!({ "effects": witness_json(&w), "hyperplane_witness": hw, "hyperplane_witness_verified": verified }))
        }
        LpOutcome::Infeasible { farkas_certificate } => (false, json!({ "farkas_certificate": farkas_certificate })),
        LpOutcome::Unbounded { .. } => unreachable!("feasibility LP has no objective"),
    };
    let report = json!({
        "report_version": REPORT_VERSION,
        "command": "distinguish",
        "points": pts,
        "distinguishable": distinguishable,
        "certificate": body,
    });
    if format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)));
    }
    let mut t = format!("distinguishable: {}\n", if distinguishable { "yes" } else { "no" });
    if let Some(effects) = body.get("effects").and_then(Value::as_array) {
        let _ = writeln!(t, "{:<6}  {:<24}  effect", "index", "point");
        for (i, (p, e)) in pts.iter().zip(effects).enumerate() {
            let g: Vec<String> = e["gradient"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
            let _ = writeln!(t, "{:<6}  {:<24}  <({}), x> + {}", i, p.to_string(), g.join(", "), e["offset"].as_str().unwrap());
        }
    } else {
        t.push_str("farkas certificate verified: yes\n");
    }
    Ok(Outcome::ok(t))
}

fn decomposition_json(d: &Decomposition) -> Value {
    json!(d.terms)
}

fn decomposition_text(d: &Decomposition) -> String {
    let mut t = format!("{:<10}  vertex\n", "weight");
    for term in &d.terms {
        let _ = writeln!(t, "{:<10}  {}", term.weight.to_string(), term.vertex);
    }
    t
}

fn decompose_cmd(file: &Path, point: &str, all: bool, format: Format) -> Result<Outcome, Error> {
    let loaded = read_polytope(file)?;
    let poly = &loaded.polytope;
    let p = point_from_value(&parse_json(point)?)?;
    let found: Vec<Decomposition> = if all { decompose_all(poly, &p)? } else { decompose(poly, &p)?.into_iter().collect() };
    let report = json!({
        "report_version": REPORT_VERSION,
        "command": "decompose",
        "point": p,
        "decomposable": !found.is_empty(),
        "decompositions": found.iter().map(decomposition_json).collect::<Vec<_>>(),
    });
    if format == Format::Json {
        return Ok(Outcome::ok(to_json(&report)));
    }
    if found.is_empty() {
        return Ok(Outcome::ok("not decomposable\n".into()));
    }
    Ok(Outcome::ok(found.iter().map(decomposition_text).collect::<Vec<_>>().join("\n")))
}

fn gen_cmd(spec: &str, output: Option<&Path>) -> Result<Outcome, Error> {
    let spec: PolytopeSpec = spec.parse()?;
    let mut text = generate(&spec)?.to_json();
    text.push('\n');
    match output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn load_corpus(corpus: &str) -> Result<Vec<CorpusEntry>, Error> {
    if corpus == "default" {
        return Ok(default_corpus());
    }
    let dir = Path::new(corpus);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{corpus}: {e}")))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|f| {
            let name = f.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry::polytope(name, read_polytope(f)?.polytope))
        })
        .collect()
}

fn suite_text(r: &SuiteReport) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" };
    let name_w = r.rows.iter().map(|x| x.name.len()).max().unwrap_or(4).max(4);
    let mut t = format!(
        "{:<name_w$}  {:<26}  {:>5}  {:>3}  {:<5}  {:<5}  {:<5}  {:<5}  checks\n",
        "item", "label", "order", "k", "decomp", "c1", "c2", "c3"
    );
    for row in &r.rows {
        let failed = row.violations().count();
        let _ = writeln!(
            t,
            "{:<name_w$}  {:<26}  {:>5}  {:>3}  {:<5}  {:<5}  {:<5}  {:<5}  {}",
            row.name,
            row.label.to_string(),
            row.group_order.map_or("-".into(), |o| o.to_string()),
            row.max_distinguishable.map_or("-".into(), |k| k.to_string()),
            yn(row.decomposable.holds),
            yn(row.theorem17.transitive.holds),
            yn(row.theorem17.pair_transitive.holds),
            yn(row.theorem17.two_decomposable.holds),
            if failed == 0 { "ok".to_string() } else { format!("{failed} failed") },
        );
    }
    let _ = writeln!(t, "seed {} trials {}", r.seed, r.trials);
    let _ = writeln!(t, "conjecture probe: {}", r.conjecture.summary());
    for v in &r.violations {
        let _ = writeln!(t, "violation: {v}");
    }
    let _ = writeln!(t, "{}", if r.passed() { "PASS" } else { "FAIL" });
    t
}

fn verify_cmd(corpus: &str, format: Format, s: Sampling) -> Result<Outcome, Error> {
    let entries = load_corpus(corpus)?;
    let report = theorem_suite(&entries, s.trials, s.seed)?;
    let failed = !report.passed() || report.conjecture.counterexample.is_some();
    let stdout = match format {
        Format::Json => to_json(&json!({
            "report_version": REPORT_VERSION,
            "command": "verify",
            "corpus": corpus,
            "seed": s.seed,
            "trials": s.trials,
            "passed": !failed,
            "suite": report,
        })),
        Format::Text => suite_text(&report),
    };
    Ok(Outcome { stdout, code: if failed { EXIT_VIOLATION } else { EXIT_OK } })
}

fn parse_model_points(text: &str) -> Result<Vec<ModelPoint>, Error> {
    text.split(';').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

fn model_decomposition_text(d: &ModelDecomposition) -> String {
    let mut t = format!("{:<22}  point\n", "weight");
    for term in &d.terms {
        let _ = writeln!(t, "{:<22}  {}", term.weight, term.point);
    }
    t
}

fn model_cmd(cmd: &ModelCommand) -> Result<Outcome, Error> {
    let (model, action) = match cmd {
        ModelCommand::Ball { dim, action } => {
            if *dim == 0 {
                return Err(Error::InvalidArgument("ball dimension must be at least 1".into()));
            }
            (Model::ball(*dim), action)
        }
        ModelCommand::Cylinder { action } => (Model::cylinder(), action),
    };
    match action {
        ModelAction::Distinguish { points, format } => {
            let pts = parse_model_points(points)?;
            let ok = match model {
                Model::Ball(b) => ball_distinguishable(b.dim, &pts)?,
                Model::Cylinder(_) => cylinder_distinguishable(&pts)?,
            };
            let stdout = match format {
                Format::Json => to_json(&json!({
                    "report_version": REPORT_VERSION,
                    "command": "model distinguish",
                    "model": model.name(),
                    "points": pts,
                    "distinguishable": ok,
                })),
                Format::Text => format!("distinguishable: {}\n", if ok { "yes" } else { "no" }),
            };
            Ok(Outcome::ok(stdout))
        }
        ModelAction::Decompose { point, format } => {
            let p: ModelPoint = point.parse()?;
            let d = match model {
                Model::Ball(b) => Some(ball_decompose(b.dim, &p)?),
                Model::Cylinder(_) => cylinder_decompose(&p)?,
            };
            let stdout = match format {
                Format::Json => to_json(&json!({
                    "report_version": REPORT_VERSION,
                    "command": "model decompose",
                    "model": model.name(),
                    "point": p,
                    "decomposable": d.is_some(),
                    "decomposition": d.as_ref().map(|d| &d.terms),
                })),
                Format::Text => match &d {
                    Some(d) => model_decomposition_text(d),
                    None => "not decomposable\n".into(),
                },
            };
            Ok(Outcome::ok(stdout))
        }
        ModelAction::Report { format, sampling } => {
            let r = model_theorem17_report(&model, sampling.trials, sampling.seed);
            let stdout = match format {
                Format::Json => to_json(&json!({ "report_version": REPORT_VERSION, "command": "model report", "report": r })),
                Format::Text => {
                    let yn = |b: bool| if b { "yes" } else { "no" };
                    let mut t = format!("model {}\n", r.model);
                    for (name, c) in [("transitive", &r.transitive), ("pair transitive", &r.pair_transitive), ("2-decomposable", &r.two_decomposable)] {
                        let _ = writeln!(t, "{name:<16}  {:<3}  {:?}  {}", yn(c.holds), c.evidence, c.note);
                    }
                    if let Some(w) = &r.witness {
                        let _ = writeln!(t, "witness           {w}");
                    }
                    t
                }
            };
            Ok(Outcome::ok(stdout))
        }
    }
}
