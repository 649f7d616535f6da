//! Closed-form smooth models: the unit ball in any dimension and the canonical
//! cylinder `{x² + y² ≤ 1, 0 ≤ z ≤ 1}`.
//!
//! Coordinates are `f64` and membership is tested within a tolerance `τ`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const TAU: f64 = 1e-9;


#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModelPoint(pub Vec<f64>);

impl ModelPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        ModelPoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn distance(&self, other: &ModelPoint) -> f64 {
        norm(&sub(&self.0, &other.0))
    }

    pub fn neg(&self) -> ModelPoint {
        ModelPoint(self.0.iter().map(|x| -x).collect())
    }
}

/// Comma-separated coordinates, each a decimal or a `p/q` rational.
impl FromStr for ModelPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        s.split(',')
            .map(|part| {
                let part = part.trim().trim_matches('"');
                if part.contains('/') {
                    part.parse::<Scalar>().map(|q| q.to_f64())
                } else {
                    part.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Error::Parse(format!("invalid coordinate {part:?}")))
                }
            })
            .collect::<Result<Vec<f64>>>()
            .map(ModelPoint)
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| format!("{x}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn basis(dim: usize, axis: usize, sign: f64) -> ModelPoint {
    let mut v = vec![0.0; dim];
    v[axis] = sign;
    ModelPoint(v)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelTerm {
    pub point: ModelPoint,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDecomposition {
    pub terms: Vec<ModelTerm>,
}

impl ModelDecomposition {
    fn single(p: ModelPoint) -> Self {
        ModelDecomposition { terms: vec![ModelTerm { point: p, weight: 1.0 }] }
    }

    /// Weights `w` and `1 − w`; for `w ∈ [1/2, 1]` the float sum is exactly one.
    fn pair(a: ModelPoint, b: ModelPoint, w: f64) -> Self {
        let (a, b, w) = if w >= 0.5 { (a, b, w) } else { (b, a, 1.0 - w) };
        ModelDecomposition {
            terms: vec![ModelTerm { point: a, weight: w }, ModelTerm { point: b, weight: 1.0 - w }],
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    pub fn reconstruct(&self) -> ModelPoint {
        let dim = self.terms.first().map_or(0, |t| t.point.dim());
        let mut out = vec![0.0; dim];
        for t in &self.terms {
            for (o, x) in out.iter_mut().zip(&t.point.0) {
                *o += t.weight * x;
            }
        }
        ModelPoint(out)
    }

    pub fn reconstructs(&self, p: &ModelPoint, tol: f64) -> bool {
        self.reconstruct().distance(p) <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallModel {
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    Ball(BallModel),
    Cylinder(CylinderModel),
}

impl Model {
    pub fn ball(dim: usize) -> Self {
        Model::Ball(BallModel { dim })
    }

    pub fn cylinder() -> Self {
        Model::Cylinder(CylinderModel)
    }

    pub fn dim(&self) -> usize {
        match self {
            Model::Ball(b) => b.dim,
            Model::Cylinder(_) => 3,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Model::Ball(b) => format!("ball({})", b.dim),
            Model::Cylinder(_) => "cylinder".into(),
        }
    }

    /// `max ⟨n, x⟩` over the model.
    pub fn support(&self, n: &[f64]) -> f64 {
        match self {
            Model::Ball(_) => norm(n),
            Model::Cylinder(_) => norm(&n[..2]) + n[2].max(0.0),
        }
    }

    pub fn contains(&self, p: &ModelPoint, tol: f64) -> bool {
        p.dim() == self.dim()
            && match self {
                Model::Ball(_) => p.norm() <= 1.0 + tol,
                Model::Cylinder(_) => {
                    norm(&p.0[..2]) <= 1.0 + tol && p.0[2] >= -tol && p.0[2] <= 1.0 + tol
                }
            }
    }

    pub fn is_extreme(&self, p: &ModelPoint, tol: f64) -> bool {
        p.dim() == self.dim()
            && match self {
                Model::Ball(_) => (p.norm() - 1.0).abs() <= tol,
                Model::Cylinder(_) => cylinder_level(p, tol).is_some(),
            }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn check_ball_point(dim: usize, p: &ModelPoint) -> Result<()> {
    if p.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
    }
    Ok(())
}

pub fn ball_distinguishable(dim: usize, points: &[ModelPoint]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in points {
        check_ball_point(dim, p)?;
        if !Model::ball(dim).is_extreme(p, TAU) {
            return Err(Error::NotExtremePoint("ball"));
        }
    }
    Ok(match points {
        [_] => true,
        [a, b] => a.distance(&b.neg()) <= TAU,
        _ => false,
    })
}

/// `p = ((1+r)/2)·u + ((1−r)/2)·(−u)` with `u = p/r`; the center uses `±e₁`.
pub fn ball_decompose(dim: usize, p: &ModelPoint) -> Result<ModelDecomposition> {
    check_ball_point(dim, p)?;
    let r = p.norm();
    if r > 1.0 + TAU {
        return Err(Error::OutsideModel("ball"));
    }
    if r == 0.0 {
        return Ok(ModelDecomposition::pair(basis(dim, 0, 1.0), basis(dim, 0, -1.0), 0.5));
    }
    let u = ModelPoint(p.0.iter().map(|x| x / r).collect());
    if r >= 1.0 - TAU {
        return Ok(ModelDecomposition::single(u));
    }
    let neg = u.neg();
    Ok(ModelDecomposition::pair(u, neg, (1.0 + r) / 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CylinderLevel {
    Bottom,
    Top,
}

fn cylinder_level(p: &ModelPoint, tol: f64) -> Option<CylinderLevel> {
    if p.dim() != 3 || (norm(&p.0[..2]) - 1.0).abs() > tol {
        return None;
    }
    if p.0[2].abs() <= tol {
        Some(CylinderLevel::Bottom)
    } else if (p.0[2] - 1.0).abs() <= tol {
        Some(CylinderLevel::Top)
    } else {
        None
    }
}

fn check_cylinder_point(p: &ModelPoint) -> Result<()> {
    if p.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: p.dim() });
    }
    Ok(())
}

/// Singletons; top–bottom pairs; antipodal pairs on one circle. Nothing larger.
pub fn cylinder_distinguishable(points: &[ModelPoint]) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut levels = Vec::with_capacity(points.len());
    for p in points {
        check_cylinder_point(p)?;
        levels.push(cylinder_level(p, TAU).ok_or(Error::NotExtremePoint("cylinder"))?);
    }
    Ok(match points {
        [_] => true,
        [_, _] if levels[0] != levels[1] => true,
        [a, b] => norm(&[a.0[0] + b.0[0], a.0[1] + b.0[1]]) <= TAU,
        _ => false,
    })
}

pub fn cylinder_decompose(p: &ModelPoint) -> Result<Option<ModelDecomposition>> {
    check_cylinder_point(p)?;
    if !Model::cylinder().contains(p, TAU) {
        return Err(Error::OutsideModel("cylinder"));
    }
    if cylinder_level(p, TAU).is_some() {
        return Ok(Some(ModelDecomposition::single(p.clone())));
    }
    let (x, y, h) = (p.0[0], p.0[1], p.0[2]);
    if h.abs() <= TAU || (h - 1.0).abs() <= TAU {
        let z = if h.abs() <= TAU { 0.0 } else { 1.0 };
        let disk = ball_decompose(2, &ModelPoint(vec![x, y]))?;
        let terms = disk
            .terms
            .into_iter()
            .map(|t| ModelTerm { point: ModelPoint(vec![t.point.0[0], t.point.0[1], z]), weight: t.weight })
            .collect();
        return Ok(Some(ModelDecomposition { terms }));
    }
    Ok(top_bottom_pair(x, y, h))
}

/// Solves `q = h·u + (1−h)·w` with `|u| = |w| = 1`. Eliminating `w` leaves
/// `⟨q, u⟩ = (|q|² + 2h − 1)/(2h)`.
fn top_bottom_pair(x: f64, y: f64, h: f64) -> Option<ModelDecomposition> {
    let q2 = x * x + y * y;
    let qn = q2.sqrt();
    let c = (q2 + 2.0 * h - 1.0) / (2.0 * h);
    let u = if qn <= TAU {
        if c.abs() > TAU {
            return None;
        }
        [1.0, 0.0]
    } else {
        if c.abs() > qn + TAU {
            return None;
        }
        let s = (q2 - c * c).max(0.0).sqrt();
        [(c * x - s * y) / q2, (c * y + s * x) / q2]
    };
    let w = [(x - h * u[0]) / (1.0 - h), (y - h * u[1]) / (1.0 - h)];
    if (norm(&w) - 1.0).abs() > 1e-7 {
        return None;
    }
    let top = ModelPoint(vec![u[0], u[1], 1.0]);
    let bottom = ModelPoint(vec![w[0], w[1], 0.0]);
    let d = ModelDecomposition::pair(top, bottom, h);
    d.reconstructs(&ModelPoint(vec![x, y, h]), 1e-7).then_some(d)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloatHyperplane {
    pub normal: Vec<f64>,
    pub level: f64,
}

impl FloatHyperplane {
    pub fn value(&self, p: &ModelPoint) -> f64 {
        dot(&self.normal, &p.0) - self.level
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelWitness {
    pub hyperplanes: Vec<FloatHyperplane>,
    pub dependence: Vec<f64>,
}

/// Explicit witness for a pair accepted by the closed-form rules.
pub fn model_pair_witness(model: &Model, a: &ModelPoint, b: &ModelPoint) -> Option<ModelWitness> {
    let antipodal = |dir: Vec<f64>| ModelWitness {
        hyperplanes: vec![
            FloatHyperplane { normal: dir.clone(), level: -1.0 },
            FloatHyperplane { normal: dir, level: 1.0 },
        ],
        dependence: vec![1.0, -1.0],
    };
    match model {
        Model::Ball(b_model) => ball_distinguishable(b_model.dim, &[a.clone(), b.clone()])
            .ok()?
            .then(|| antipodal(a.0.clone())),
        Model::Cylinder(_) => {
            if !cylinder_distinguishable(&[a.clone(), b.clone()]).ok()? {
                return None;
            }
            let la = cylinder_level(a, TAU)?;
            let lb = cylinder_level(b, TAU)?;
            if la == lb {
                return Some(antipodal(vec![a.0[0], a.0[1], 0.0]));
            }
            // each plane holds the other point's circle
            let level_of = |l: CylinderLevel| if l == CylinderLevel::Top { 1.0 } else { 0.0 };
            Some(ModelWitness {
                hyperplanes: vec![
                    FloatHyperplane { normal: vec![0.0, 0.0, 1.0], level: level_of(lb) },
                    FloatHyperplane { normal: vec![0.0, 0.0, 1.0], level: level_of(la) },
                ],
                dependence: vec![1.0, -1.0],
            })
        }
    }
}

/// Tolerance-relaxed form of the exact hyperplane-witness check.
pub fn verify_model_witness(model: &Model, points: &[ModelPoint], w: &ModelWitness, tol: f64) -> bool {
    let k = points.len();
    if k < 2 || w.hyperplanes.len() != k || w.dependence.len() != k {
        return false;
    }
    for h in &w.hyperplanes {
        let neg: Vec<f64> = h.normal.iter().map(|x| -x).collect();
        let max = model.support(&h.normal);
        let min = -model.support(&neg);
        if (h.level - max).abs() > tol && (h.level - min).abs() > tol {
            return false;
        }
    }
    for (i, h) in w.hyperplanes.iter().enumerate() {
        for (j, p) in points.iter().enumerate() {
            let on = h.value(p).abs() <= tol;
            if on != (i != j) {
                return false;
            }
        }
    }
    let dim = model.dim();
    let combo: Vec<f64> = (0..dim)
        .map(|d| w.hyperplanes.iter().zip(&w.dependence).map(|(h, l)| l * h.normal[d]).sum())
        .collect();
    if norm(&combo) > tol || norm(&w.dependence) <= tol {
        return false;
    }
    // proper-subset independence, decided by Gram determinants
    (0..k).all(|omit| {
        let rest: Vec<&Vec<f64>> =
            w.hyperplanes.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, h)| &h.normal).collect();
        gram_determinant(&rest) > tol
    })
}

fn gram_determinant(vs: &[&Vec<f64>]) -> f64 {
    let n = vs.len();
    let mut g: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| dot(vs[i], vs[j])).collect()).collect();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| g[a][c].abs().total_cmp(&g[b][c].abs())).unwrap();
        if g[p][c].abs() < 1e-300 {
            return 0.0;
        }
        g.swap(c, p);
        if p != c {
            det = -det;
        }
        det *= g[c][c];
        for r in c + 1..n {
            let f = g[r][c] / g[c][c];
            for j in c..n {
                g[r][j] -= f * g[c][j];
            }
        }
    }
    det
}

pub fn random_unit_vector<R: Rng>(dim: usize, rng: &mut R) -> ModelPoint {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-6 {
            return ModelPoint(v.into_iter().map(|x| x / n).collect());
        }
    }
}

/// Uniform in the ball.
pub fn random_ball_point<R: Rng>(dim: usize, rng: &mut R) -> ModelPoint {
    let u = random_unit_vector(dim, rng);
    let r: f64 = rng.random::<f64>().powf(1.0 / dim as f64);
    ModelPoint(u.0.into_iter().map(|x| x * r).collect())
}

pub fn random_cylinder_extreme<R: Rng>(rng: &mut R) -> ModelPoint {
    let u = random_unit_vector(2, rng);
    let z = if rng.random::<bool>() { 1.0 } else { 0.0 };
    ModelPoint(vec![u.0[0], u.0[1], z])
}

/// The reflection across the bisector of `a` and `b`, which maps `a` to `b`.
#[derive(Clone, Debug)]
pub struct Householder {
    v: Vec<f64>,
}

impl Householder {
    pub fn between(a: &[f64], b: &[f64]) -> Option<Self> {
        let d = sub(a, b);
        let n = norm(&d);
        (n > 1e-12).then(|| Householder { v: d.into_iter().map(|x| x / n).collect() })
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        let t = 2.0 * dot(&self.v, p);
        p.iter().zip(&self.v).map(|(x, v)| x - t * v).collect()
    }
}

/// Rotation about the z-axis composed with an optional flip `z ↦ 1 − z`; the
/// automorphisms of the cylinder.
fn cylinder_map_between(a: &ModelPoint, b: &ModelPoint) -> impl Fn(&ModelPoint) -> ModelPoint {
    let ta = a.0[1].atan2(a.0[0]);
    let tb = b.0[1].atan2(b.0[0]);
    let (s, c) = (tb - ta).sin_cos();
    let flip = (a.0[2] - b.0[2]).abs() > 0.5;
    move |p: &ModelPoint| {
        let z = if flip { 1.0 - p.0[2] } else { p.0[2] };
        ModelPoint(vec![c * p.0[0] - s * p.0[1], s * p.0[0] + c * p.0[1], z])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    Analytic,
    Sampled,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub evidence: Evidence,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelTheorem17Report {
    pub model: String,
    pub seed: u64,
    pub trials: usize,
    pub transitive: ConditionVerdict,
    pub pair_transitive: ConditionVerdict,
    pub two_decomposable: ConditionVerdict,
    /// A point without a distinguishable decomposition, when one is known.
    pub witness: Option<ModelPoint>,
}

impl ModelTheorem17Report {
    pub fn conditions(&self) -> (bool, bool, bool) {
        (self.transitive.holds, self.pair_transitive.holds, self.two_decomposable.holds)
    }
}

fn verdict(holds: bool, evidence: Evidence, note: &str) -> ConditionVerdict {
    ConditionVerdict { holds, evidence, note: note.into() }
}

pub fn model_theorem17_report(model: &Model, trials: usize, seed: u64) -> ModelTheorem17Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match model {
        Model::Ball(b) => {
            let n = b.dim;
            let mut transitive = true;
            let mut pairs = true;
            for _ in 0..trials {
                let a = random_unit_vector(n, &mut rng);
                let c = random_unit_vector(n, &mut rng);
                let probe = random_unit_vector(n, &mut rng);
                let Some(h) = Householder::between(&a.0, &c.0) else { continue };
                transitive &= ModelPoint(h.apply(&a.0)).distance(&c) <= TAU
                    && (norm(&h.apply(&probe.0)) - 1.0).abs() <= TAU;
                pairs &= ModelPoint(h.apply(&a.neg().0)).distance(&c.neg()) <= TAU;
            }
            let mut decomposable = true;
            for _ in 0..trials {
                let p = random_ball_point(n, &mut rng);
                decomposable &= ball_decompose(n, &p).is_ok_and(|d| d.len() <= 2 && d.reconstructs(&p, TAU));
            }
            ModelTheorem17Report {
                model: model.name(),
                seed,
                trials,
                transitive: verdict(transitive, Evidence::Sampled, "reflections map any sphere point to any other"),
                pair_transitive: verdict(pairs, Evidence::Sampled, "distinguishable pairs are antipodal; one orbit"),
                two_decomposable: verdict(decomposable, Evidence::Sampled, "antipodal decomposition along p/|p|"),
                witness: None,
            }
        }
        Model::Cylinder(_) => {
            let mut transitive = true;
            for _ in 0..trials {
                let a = random_cylinder_extreme(&mut rng);
                let c = random_cylinder_extreme(&mut rng);
                let probe = random_cylinder_extreme(&mut rng);
                let g = cylinder_map_between(&a, &c);
                transitive &= g(&a).distance(&c) <= TAU && model.is_extreme(&g(&probe), TAU);
            }
            let witness = ModelPoint(vec![0.0, 0.0, 0.25]);
            let decomposable = !matches!(cylinder_decompose(&witness), Ok(None));
            ModelTheorem17Report {
                model: model.name(),
                seed,
                trials,
                transitive: verdict(transitive, Evidence::Sampled, "rotations and the flip z -> 1-z"),
                pair_transitive: verdict(
                    false,
                    Evidence::Analytic,
                    "top-bottom and same-circle antipodal pairs lie in different orbits",
                ),
                two_decomposable: verdict(decomposable, Evidence::Analytic, "(0,0,1/4) has no decomposition"),
                witness: (!decomposable).then_some(witness),
            }
        }
    }
}
