//! Classification and the theorem checks over a corpus of polytopes and models.
//!
//! Each corpus item is analyzed once; the suite then evaluates implications
//! between the computed properties and reports any that fail.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distinguish::{max_distinguishable, verdict_with_catalog, DecomposabilityReport};
use crate::error::{Error, Result};
use crate::models::{model_theorem17_report, ConditionVerdict, Evidence, Model, ModelPoint, ModelTheorem17Report};
use crate::polytope::{generate, PolytopeSpec, VPolytope};
use crate::symmetry::{
    automorphism_group, fixed_point, invariant_gram, is_vertex_transitive, pair_transitive_distinguishable,
    verify_m_orthogonal, AutomorphismGroup, FixedPointReport, GramMatrix, VertexOrbits,
};

/// Serialized as its display string, e.g. `"Simplex(3)"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    Simplex(usize),
    VertexTransitivePolytope,
    AsymmetricPolytope,
    Ball(usize),
    Disk,
    Cylinder,
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let arg = |prefix: &str| {
            s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')).and_then(|n| n.parse().ok())
        };
        Ok(match s {
            "VertexTransitivePolytope" => ClassLabel::VertexTransitivePolytope,
            "AsymmetricPolytope" => ClassLabel::AsymmetricPolytope,
            "Disk" => ClassLabel::Disk,
            "Cylinder" => ClassLabel::Cylinder,
            _ => match (arg("Simplex("), arg("Ball(")) {
                (Some(n), _) => ClassLabel::Simplex(n),
                (_, Some(n)) => ClassLabel::Ball(n),
                _ => return Err(format!("unknown class label {s:?}")),
            },
        })
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Simplex(n) => write!(f, "Simplex({n})"),
            ClassLabel::VertexTransitivePolytope => f.write_str("VertexTransitivePolytope"),
            ClassLabel::AsymmetricPolytope => f.write_str("AsymmetricPolytope"),
            ClassLabel::Ball(n) => write!(f, "Ball({n})"),
            ClassLabel::Disk => f.write_str("Disk"),
            ClassLabel::Cylinder => f.write_str("Cylinder"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub vertex_count: usize,
    pub intrinsic_dim: usize,
    pub affinely_independent: bool,
    /// Absent for simplices, whose label needs no group.
    pub group_order: Option<usize>,
    pub orbit_count: Option<usize>,
}

pub fn classify(poly: &VPolytope) -> Result<Classification> {
    let base = Classification {
        label: ClassLabel::Simplex(poly.intrinsic_dim()),
        vertex_count: poly.vertex_count(),
        intrinsic_dim: poly.intrinsic_dim(),
        affinely_independent: poly.is_simplex(),
        group_order: None,
        orbit_count: None,
    };
    if poly.is_simplex() {
        return Ok(base);
    }
    let group = automorphism_group(poly)?;
    Ok(classify_with_group(poly, &group, base))
}

fn classify_with_group(poly: &VPolytope, group: &AutomorphismGroup, base: Classification) -> Classification {
    let (transitive, orbits) = is_vertex_transitive(group, poly);
    let label = if poly.is_simplex() {
        ClassLabel::Simplex(poly.intrinsic_dim())
    } else if transitive {
        ClassLabel::VertexTransitivePolytope
    } else {
        ClassLabel::AsymmetricPolytope
    };
    Classification { label, group_order: Some(group.order()), orbit_count: Some(orbits.orbits.len()), ..base }
}

pub fn classify_model(model: &Model) -> ClassLabel {
    match model {
        Model::Ball(b) if b.dim == 2 => ClassLabel::Disk,
        Model::Ball(b) => ClassLabel::Ball(b.dim),
        Model::Cylinder(_) => ClassLabel::Cylinder,
    }
}

#[derive(Clone, Debug)]
pub enum CorpusEntry {
    Polytope { name: String, poly: VPolytope },
    Model { name: String, model: Model },
}

impl CorpusEntry {
    pub fn polytope(name: impl Into<String>, poly: VPolytope) -> Self {
        CorpusEntry::Polytope { name: name.into(), poly }
    }

    pub fn model(model: Model) -> Self {
        CorpusEntry::Model { name: model.name(), model }
    }

    pub fn name(&self) -> &str {
        match self {
            CorpusEntry::Polytope { name, .. } | CorpusEntry::Model { name, .. } => name,
        }
    }
}

/// Named polytopes of the default corpus. The random seeds are fixed; each
/// gives a polytope with the trivial automorphism group.
pub const DEFAULT_POLYTOPES: &[(&str, &str)] = &[
    ("triangle", "simplex(2)"),
    ("square", "cube(2)"),
    ("rectangle", "box(1,2)"),
    ("hexagon", "polygon(6)"),
    ("simplex3", "simplex(3)"),
    ("cube", "cube(3)"),
    ("cross_polytope3", "cross_polytope(3)"),
    ("triangular_prism", "prism(polygon(3))"),
    ("hexagonal_prism", "prism(polygon(6))"),
    ("random_polygon_a", "random(2,7,11)"),
    ("random_polygon_b", "random(2,6,1)"),
    ("random_polytope3", "random(3,8,5)"),
];

pub fn default_polytopes() -> Vec<(String, VPolytope)> {
    DEFAULT_POLYTOPES
        .iter()
        .map(|(name, spec)| {
            let spec: PolytopeSpec = spec.parse().expect("valid built-in spec");
            (name.to_string(), generate(&spec).expect("built-in polytope"))
        })
        .collect()
}

pub fn default_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> =
        default_polytopes().into_iter().map(|(n, p)| CorpusEntry::polytope(n, p)).collect();
    out.push(CorpusEntry::model(Model::ball(2)));
    out.push(CorpusEntry::model(Model::ball(3)));
    out.push(CorpusEntry::model(Model::cylinder()));
    out
}

/// Everything the suite needs about one polytope.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeAnalysis {
    pub dim: usize,
    pub vertex_count: usize,
    pub classification: Classification,
    pub group_order: usize,
    pub generators: Vec<Vec<usize>>,
    pub orbits: VertexOrbits,
    pub vertex_transitive: bool,
    pub pair_transitive: bool,
    pub fixed_point: FixedPointReport,
    pub gram: GramMatrix,
    pub gram_invariant: bool,
    pub gram_positive_definite: bool,
    pub max_distinguishable: usize,
    pub maximal_sets: Vec<Vec<usize>>,
    pub decomposability: DecomposabilityReport,
    pub two_decomposability: DecomposabilityReport,
    #[serde(skip)]
    pub group: Option<AutomorphismGroup>,
}

pub fn analyze_polytope(poly: &VPolytope, trials: usize, seed: u64) -> Result<PolytopeAnalysis> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let group = automorphism_group(poly)?;
    let base = Classification {
        label: ClassLabel::AsymmetricPolytope,
        vertex_count: poly.vertex_count(),
        intrinsic_dim: poly.intrinsic_dim(),
        affinely_independent: poly.is_simplex(),
        group_order: None,
        orbit_count: None,
    };
    let classification = classify_with_group(poly, &group, base);
    let (vertex_transitive, orbits) = is_vertex_transitive(&group, poly);
    let fixed = fixed_point(poly, &group)?;
    let gram = invariant_gram(&group, poly.dim());
    let gram_invariant = verify_m_orthogonal(&group, &gram);
    let gram_positive_definite = gram.is_positive_definite();
    let maxd = max_distinguishable(poly)?;
    let pair_transitive = pair_transitive_distinguishable(&group, &maxd.catalog);
    let decomposability = verdict_with_catalog(poly, &maxd.catalog, trials, seed, None)?;
    let two_decomposability = verdict_with_catalog(poly, &maxd.catalog, trials, seed, Some(2))?;
    let generators = group.generators().into_iter().map(|k| group.vertex_permutations()[k].clone()).collect();
    Ok(PolytopeAnalysis {
        dim: poly.dim(),
        vertex_count: poly.vertex_count(),
        classification,
        group_order: group.order(),
        generators,
        orbits,
        vertex_transitive,
        pair_transitive,
        fixed_point: fixed,
        gram,
        gram_invariant,
        gram_positive_definite,
        max_distinguishable: maxd.k,
        maximal_sets: maxd.sets,
        decomposability,
        two_decomposability,
        group: Some(group),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem17Conditions {
    pub transitive: ConditionVerdict,
    pub pair_transitive: ConditionVerdict,
    pub two_decomposable: ConditionVerdict,
}

impl Theorem17Conditions {
    pub fn all(&self) -> bool {
        self.transitive.holds && self.pair_transitive.holds && self.two_decomposable.holds
    }

    pub fn as_tuple(&self) -> (bool, bool, bool) {
        (self.transitive.holds, self.pair_transitive.holds, self.two_decomposable.holds)
    }
}

fn sampled_verdict(r: &DecomposabilityReport) -> ConditionVerdict {
    let note = match &r.counterexample {
        Some(p) => format!("counterexample {p}"),
        None => format!("{}/{} samples decomposed", r.decomposable_samples, r.trials),
    };
    ConditionVerdict { holds: r.all_decomposable(), evidence: Evidence::Sampled, note }
}

pub fn polytope_theorem17(a: &PolytopeAnalysis) -> Theorem17Conditions {
    let exhaustive = |holds: bool, note: &str| ConditionVerdict { holds, evidence: Evidence::Exhaustive, note: note.into() };
    Theorem17Conditions {
        transitive: exhaustive(a.vertex_transitive, &format!("{} vertex orbit(s)", a.orbits.orbits.len())),
        pair_transitive: exhaustive(a.pair_transitive, "orbits on ordered distinguishable pairs"),
        two_decomposable: sampled_verdict(&a.two_decomposability),
    }
}

fn model_conditions(r: &ModelTheorem17Report) -> Theorem17Conditions {
    Theorem17Conditions {
        transitive: r.transitive.clone(),
        pair_transitive: r.pair_transitive.clone(),
        two_decomposable: r.two_decomposable.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> Check {
    Check { name: name.into(), holds }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremRow {
    pub name: String,
    pub kind: String,
    pub label: ClassLabel,
    pub group_order: Option<usize>,
    pub max_distinguishable: Option<usize>,
    pub decomposable: ConditionVerdict,
    pub theorem17: Theorem17Conditions,
    /// Degenerate one-dimensional ball (a segment).
    pub segment: bool,
    pub checks: Vec<Check>,
    pub counterexample: Option<Vec<f64>>,
}

impl TheoremRow {
    pub fn violations(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn is_ball_like(label: ClassLabel, segment: bool) -> bool {
    segment || matches!(label, ClassLabel::Ball(_) | ClassLabel::Disk)
}

fn polytope_row(name: &str, poly: &VPolytope, trials: usize, seed: u64) -> Result<TheoremRow> {
    let a = analyze_polytope(poly, trials, seed)?;
    let label = a.classification.label;
    let is_simplex = matches!(label, ClassLabel::Simplex(_));
    let decomposable = sampled_verdict(&a.decomposability);
    let t17 = polytope_theorem17(&a);
    let segment = is_simplex && poly.intrinsic_dim() == 1;
    let checks = vec![
        check("transitive and decomposable implies simplex", !(a.vertex_transitive && decomposable.holds) || is_simplex),
        check("simplex implies transitive and decomposable", !is_simplex || (a.vertex_transitive && decomposable.holds)),
        check("all three conditions imply a ball", !t17.all() || is_ball_like(label, segment)),
        check("decomposable polytope is a simplex", !decomposable.holds || is_simplex),
        check("size bound", a.max_distinguishable <= poly.intrinsic_dim() + 1),
        check(
            "bound attained only by simplices",
            a.max_distinguishable < poly.intrinsic_dim() + 1 || is_simplex,
        ),
        check("gram invariant and positive definite", a.gram_invariant && a.gram_positive_definite),
        check(
            "transitive fixed point unique and interior",
            !a.vertex_transitive || (a.fixed_point.unique && a.fixed_point.interior),
        ),
    ];
    Ok(TheoremRow {
        name: name.into(),
        kind: "polytope".into(),
        label,
        group_order: Some(a.group_order),
        max_distinguishable: Some(a.max_distinguishable),
        decomposable,
        theorem17: t17,
        segment,
        checks,
        counterexample: a.decomposability.counterexample.as_ref().map(|p| p.to_f64()),
    })
}

fn model_row(name: &str, model: &Model, trials: usize, seed: u64) -> TheoremRow {
    let r = model_theorem17_report(model, trials, seed);
    let label = classify_model(model);
    let t17 = model_conditions(&r);
    // two-term decomposability already gives full decomposability
    let decomposable = r.two_decomposable.clone();
    let transitive = r.transitive.holds;
    let ball = is_ball_like(label, false);
    let checks = vec![
        check("transitive and decomposable implies simplex or ball", !(transitive && decomposable.holds) || ball),
        check("ball satisfies all three conditions", !ball || t17.all()),
        check("all three conditions imply a ball", !t17.all() || ball),
    ];
    TheoremRow {
        name: name.into(),
        kind: "model".into(),
        label,
        group_order: None,
        max_distinguishable: None,
        decomposable,
        theorem17: t17,
        segment: false,
        checks,
        counterexample: r.witness.as_ref().map(|p: &ModelPoint| p.0.clone()),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<TheoremRow>,
    pub violations: Vec<String>,
    pub conjecture: ConjectureReport,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn theorem_rows(corpus: &[CorpusEntry], trials: usize, seed: u64) -> Result<Vec<TheoremRow>> {
    corpus
        .par_iter()
        .map(|entry| match entry {
            CorpusEntry::Polytope { name, poly } => polytope_row(name, poly, trials, seed),
            CorpusEntry::Model { name, model } => Ok(model_row(name, model, trials, seed)),
        })
        .collect()
}

pub fn theorem_suite(corpus: &[CorpusEntry], trials: usize, seed: u64) -> Result<SuiteReport> {
    let rows = theorem_rows(corpus, trials, seed)?;
    let violations = rows
        .iter()
        .flat_map(|r| r.violations().map(move |c| format!("{}: {}", r.name, c.name)))
        .collect();
    let conjecture = probe_conjecture(&rows);
    Ok(SuiteReport { seed, trials, rows, violations, conjecture })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub checked: usize,
    pub counterexample: Option<String>,
    /// Items meeting both conditions only as the degenerate segment.
    pub degenerate: Vec<String>,
}

impl ConjectureReport {
    pub fn summary(&self) -> String {
        match &self.counterexample {
            Some(name) => format!("counterexample: {name}"),
            None => "no counterexample found".into(),
        }
    }
}

/// Looks for an item that is transitive and distinguishably 2-decomposable
/// without being a ball, disk or segment.
pub fn probe_conjecture(rows: &[TheoremRow]) -> ConjectureReport {
    let mut counterexample = None;
    let mut degenerate = Vec::new();
    for r in rows {
        if !(r.theorem17.transitive.holds && r.theorem17.two_decomposable.holds) {
            continue;
        }
        if r.segment {
            degenerate.push(r.name.clone());
        } else if !is_ball_like(r.label, false) && counterexample.is_none() {
            counterexample = Some(r.name.clone());
        }
    }
    ConjectureReport { checked: rows.len(), counterexample, degenerate }
}
