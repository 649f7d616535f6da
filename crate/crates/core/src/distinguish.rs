//! Distinguishability of points and distinguishable decompositions.
//!
//! Points `s₁..s_k` of a polytope are distinguishable when there are affine
//! effects `eᵢ ≥ 0` on the polytope with `Σ eᵢ ≡ 1` and `eᵢ(sᵢ) = 1`. The
//! effects are found by one exact LP; the identity `Σ eᵢ ≡ 1` is imposed
//! coefficient-wise (gradients sum to zero, offsets to one) and nonnegativity
//! only at the vertices, which suffices because the effects are affine.
//!
//! The geometric dual certificate is a family of supporting hyperplanes
//! `Hᵢ` with linearly dependent normals, `sᵢ ∉ Hᵢ` and `sⱼ ∈ Hᵢ` for `j ≠ i`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AffineFunctional, Hyperplane, Point};
use crate::linalg::{vector_rank, Matrix};
use crate::linprog::{solve, Constraint, LinearProgram, LpOutcome};
use crate::polytope::{convex_weights, VPolytope};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishabilityWitness {
    pub effects: Vec<AffineFunctional>,
}

impl DistinguishabilityWitness {
    /// Exact check of the witness invariants against `poly` and `points`.
    pub fn verify(&self, poly: &VPolytope, points: &[Point]) -> bool {
        if self.effects.len() != points.len() || self.effects.is_empty() {
            return false;
        }
        let n = poly.dim();
        if self.effects.iter().any(|e| e.gradient.len() != n) {
            return false;
        }
        let grad_sum_zero =
            (0..n).all(|d| self.effects.iter().map(|e| &e.gradient[d]).sum::<Scalar>().is_zero());
        let offsets_one = self.effects.iter().map(|e| &e.offset).sum::<Scalar>().is_one();
        let nonneg = self
            .effects
            .iter()
            .all(|e| poly.vertices().iter().all(|v| !e.eval(v).is_negative()));
        let hits = self.effects.iter().zip(points).all(|(e, p)| e.eval(p).is_one());
        grad_sum_zero && offsets_one && nonneg && hits
    }
}

fn check_points(poly: &VPolytope, points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in points {
        poly.check_point(p)?;
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

/// The witness LP over `k·(n+1)` free variables `(gradientᵢ, offsetᵢ)`.
pub fn distinguishability_lp(poly: &VPolytope, points: &[Point]) -> LinearProgram {
    let n = poly.dim();
    let k = points.len();
    let width = n + 1;
    let nv = k * width;
    let mut lp = LinearProgram::new(nv);
    for d in 0..n {
        let mut row = vec![Scalar::zero(); nv];
        for i in 0..k {
            row[i * width + d] = Scalar::one();
        }
        lp.push(Constraint::eq(row, Scalar::zero()));
    }
    let mut row = vec![Scalar::zero(); nv];
    for i in 0..k {
        row[i * width + n] = Scalar::one();
    }
    lp.push(Constraint::eq(row, Scalar::one()));
    let effect_row = |i: usize, x: &Point| {
        let mut row = vec![Scalar::zero(); nv];
        row[i * width..i * width + n].clone_from_slice(x.coords());
        row[i * width + n] = Scalar::one();
        row
    };
    for i in 0..k {
        for v in poly.vertices() {
            lp.push(Constraint::ge(effect_row(i, v), Scalar::zero()));
        }
    }
    for (i, p) in points.iter().enumerate() {
        lp.push(Constraint::eq(effect_row(i, p), Scalar::one()));
    }
    lp
}

/// Solves the witness LP; the raw outcome keeps the Farkas certificate on failure.
pub fn distinguishability_outcome(poly: &VPolytope, points: &[Point]) -> Result<LpOutcome> {
    check_points(poly, points)?;
    for p in points {
        if convex_weights(poly.vertices(), p)?.is_none() {
            return Err(Error::PointNotInSet);
        }
    }
    solve(&distinguishability_lp(poly, points))
}

pub fn distinguishable(poly: &VPolytope, points: &[Point]) -> Result<Option<DistinguishabilityWitness>> {
    let outcome = distinguishability_outcome(poly, points)?;
    Ok(witness_from_outcome(poly.dim(), points.len(), &outcome))
}

/// Reads the effects out of a feasible witness-LP outcome.
pub fn witness_from_outcome(n: usize, k: usize, outcome: &LpOutcome) -> Option<DistinguishabilityWitness> {
    let LpOutcome::Feasible { assignment, .. } = outcome else { return None };
    let width = n + 1;
    let effects = (0..k)
        .map(|i| {
            let chunk = &assignment[i * width..(i + 1) * width];
            AffineFunctional::new(chunk[..n].to_vec(), chunk[n].clone())
        })
        .collect();
    Some(DistinguishabilityWitness { effects })
}

/// Distinguishability of a vertex subset given by indices; skips the membership LPs.
pub fn distinguishable_vertices(poly: &VPolytope, subset: &[usize]) -> Result<Option<DistinguishabilityWitness>> {
    let points: Vec<Point> = subset.iter().map(|&i| poly.vertices()[i].clone()).collect();
    check_points(poly, &points)?;
    let outcome = solve(&distinguishability_lp(poly, &points))?;
    Ok(witness_from_outcome(poly.dim(), points.len(), &outcome))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneWitness {
    pub hyperplanes: Vec<Hyperplane>,
    /// `λᵢ`, not all zero, with `Σ λᵢ·normalᵢ = 0`.
    pub dependence: Vec<Scalar>,
}

pub fn hyperplane_witness_from_effects(
    poly: &VPolytope,
    points: &[Point],
    witness: &DistinguishabilityWitness,
) -> Result<HyperplaneWitness> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("hyperplane witnesses need at least two points".into()));
    }
    if witness.effects.len() != points.len() {
        return Err(Error::DimensionMismatch { expected: points.len(), found: witness.effects.len() });
    }
    let mut hyperplanes = Vec::with_capacity(points.len());
    let mut dependence = Vec::with_capacity(points.len());
    for e in &witness.effects {
        if e.gradient.len() != poly.dim() {
            return Err(Error::DimensionMismatch { expected: poly.dim(), found: e.gradient.len() });
        }
        let h = e.zero_set()?;
        // gradient = lead · (canonical normal)
        let lead = e.gradient.iter().find(|x| !x.is_zero()).expect("nonconstant effect").clone();
        hyperplanes.push(h);
        dependence.push(lead);
    }
    Ok(HyperplaneWitness { hyperplanes, dependence })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessDefect {
    Malformed,
    NotSupporting { hyperplane: usize },
    OwnPointOnHyperplane { point: usize },
    OtherPointOffHyperplane { hyperplane: usize, point: usize },
    NormalsNotDependent,
    ProperSubsetDependent { omitted: usize },
}

impl WitnessDefect {
    pub fn reason(&self) -> &'static str {
        match self {
            WitnessDefect::Malformed => "malformed witness",
            WitnessDefect::NotSupporting { .. } => "not supporting",
            WitnessDefect::OwnPointOnHyperplane { .. } => "point on its own hyperplane",
            WitnessDefect::OtherPointOffHyperplane { .. } => "point off another hyperplane",
            WitnessDefect::NormalsNotDependent => "normals not dependent",
            WitnessDefect::ProperSubsetDependent { .. } => "proper subset of normals dependent",
        }
    }
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

/// Exact check of every hyperplane-witness condition, reporting the first failure.
pub fn check_hyperplane_witness(
    poly: &VPolytope,
    points: &[Point],
    hw: &HyperplaneWitness,
) -> std::result::Result<(), WitnessDefect> {
    let k = points.len();
    let n = poly.dim();
    if k < 2
        || hw.hyperplanes.len() != k
        || hw.dependence.len() != k
        || points.iter().any(|p| p.dim() != n)
        || hw.hyperplanes.iter().any(|h| h.normal().len() != n)
    {
        return Err(WitnessDefect::Malformed);
    }
    for (i, h) in hw.hyperplanes.iter().enumerate() {
        let values: Vec<i32> = poly.vertices().iter().map(|v| h.signed_value(v).signum()).collect();
        let one_side = values.iter().all(|&s| s <= 0) || values.iter().all(|&s| s >= 0);
        if !one_side || !values.contains(&0) {
            return Err(WitnessDefect::NotSupporting { hyperplane: i });
        }
    }
    for (i, h) in hw.hyperplanes.iter().enumerate() {
        if h.contains(&points[i]) {
            return Err(WitnessDefect::OwnPointOnHyperplane { point: i });
        }
        for (j, p) in points.iter().enumerate() {
            if j != i && !h.contains(p) {
                return Err(WitnessDefect::OtherPointOffHyperplane { hyperplane: i, point: j });
            }
        }
    }
    let combo_zero = (0..n).all(|d| {
        hw.hyperplanes.iter().zip(&hw.dependence).map(|(h, l)| l * &h.normal()[d]).sum::<Scalar>().is_zero()
    });
    if !combo_zero || hw.dependence.iter().all(Scalar::is_zero) {
        return Err(WitnessDefect::NormalsNotDependent);
    }
    for omit in 0..k {
        let rest: Vec<Vec<Scalar>> = hw
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .map(|(_, h)| h.normal().to_vec())
            .collect();
        if vector_rank(&rest) != k - 1 {
            return Err(WitnessDefect::ProperSubsetDependent { omitted: omit });
        }
    }
    Ok(())
}

pub fn verify_hyperplane_witness(poly: &VPolytope, points: &[Point], hw: &HyperplaneWitness) -> bool {
    check_hyperplane_witness(poly, points, hw).is_ok()
}

/// All distinguishable vertex subsets up to the size bound, by size, each in
/// lexicographic index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishableCatalog {
    pub by_size: Vec<Vec<Vec<usize>>>,
}

impl DistinguishableCatalog {
    pub fn max_size(&self) -> usize {
        self.by_size.iter().rposition(|l| !l.is_empty()).map_or(0, |i| i + 1)
    }

    pub fn of_size(&self, s: usize) -> &[Vec<usize>] {
        if s == 0 || s > self.by_size.len() {
            &[]
        } else {
            &self.by_size[s - 1]
        }
    }

    pub fn contains(&self, subset: &[usize]) -> bool {
        self.of_size(subset.len()).binary_search_by(|s| s.as_slice().cmp(subset)).is_ok()
    }

    /// Canonical order: increasing size, then lexicographic.
    pub fn iter(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.by_size.iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxDistinguishable {
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
    pub catalog: DistinguishableCatalog,
}

/// Level-wise search. A set of size `s + 1` is tested only when all its
/// `s`-subsets are distinguishable (subsets of distinguishable sets are
/// distinguishable); the search never goes past `dim + 1`.
pub fn max_distinguishable(poly: &VPolytope) -> Result<MaxDistinguishable> {
    let bound = poly.intrinsic_dim() + 1;
    let v = poly.vertex_count();
    let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..v).map(|i| vec![i]).collect();
    while !level.is_empty() && by_size.len() < bound {
        let verdicts: Vec<Result<bool>> = level
            .par_iter()
            .map(|s| distinguishable_vertices(poly, s).map(|w| w.is_some()))
            .collect();
        let mut accepted = Vec::new();
        for (s, ok) in level.iter().zip(verdicts) {
            if ok? {
                accepted.push(s.clone());
            }
        }
        level = next_candidates(&accepted);
        by_size.push(accepted);
    }
    while by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    let catalog = DistinguishableCatalog { by_size };
    let k = catalog.max_size();
    if k == bound {
        assert!(poly.is_simplex(), "a distinguishable set of size dim+1 forces a simplex");
    }
    let sets = catalog.of_size(k).to_vec();
    Ok(MaxDistinguishable { k, sets, catalog })
}

/// Joins sorted `s`-sets sharing their first `s − 1` entries, keeping only
/// candidates whose every `s`-subset is present.
fn next_candidates(level: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (a_idx, a) in level.iter().enumerate() {
        for b in &level[a_idx + 1..] {
            let s = a.len();
            if a[..s - 1] != b[..s - 1] {
                break;
            }
            let mut cand = a.clone();
            cand.push(b[s - 1]);
            let all_subsets = (0..cand.len()).all(|omit| {
                let sub: Vec<usize> =
                    cand.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &x)| x).collect();
                level.binary_search(&sub).is_ok()
            });
            if all_subsets {
                out.push(cand);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub vertex: Point,
    pub weight: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub terms: Vec<DecompositionTerm>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weights(&self) -> Vec<Scalar> {
        self.terms.iter().map(|t| t.weight.clone()).collect()
    }

    pub fn point(&self) -> Point {
        let pts: Vec<&Point> = self.terms.iter().map(|t| &t.vertex).collect();
        Point::combination(&pts, &self.weights())
    }

    /// Exact check: positive weights summing to one, extreme-point support that is
    /// distinguishable, and a weighted sum equal to `target`.
    pub fn verify(&self, poly: &VPolytope, target: &Point) -> Result<bool> {
        if self.terms.is_empty() {
            return Ok(false);
        }
        if self.terms.iter().any(|t| !t.weight.is_positive()) {
            return Ok(false);
        }
        if !self.weights().iter().sum::<Scalar>().is_one() {
            return Ok(false);
        }
        let mut idx = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match poly.index_of(&t.vertex) {
                Some(i) => idx.push(i),
                None => return Ok(false),
            }
        }
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Ok(false);
        }
        if distinguishable_vertices(poly, &idx)?.is_none() {
            return Ok(false);
        }
        Ok(self.point() == *target)
    }
}

/// Tries one distinguishable subset; zero-weight vertices are dropped and the
/// reduced support re-checked.
fn decompose_on(poly: &VPolytope, subset: &[usize], p: &Point) -> Result<Option<Decomposition>> {
    let pts: Vec<Point> = subset.iter().map(|&i| poly.vertices()[i].clone()).collect();
    let Some(weights) = convex_weights(&pts, p)? else { return Ok(None) };
    let support: Vec<usize> = (0..subset.len()).filter(|&j| !weights[j].is_zero()).collect();
    if support.len() < subset.len() {
        let reduced: Vec<usize> = support.iter().map(|&j| subset[j]).collect();
        if distinguishable_vertices(poly, &reduced)?.is_none() {
            return Ok(None);
        }
    }
    let terms = support
        .into_iter()
        .map(|j| DecompositionTerm { vertex: pts[j].clone(), weight: weights[j].clone() })
        .collect();
    Ok(Some(Decomposition { terms }))
}

/// First decomposition under the catalog order, using supports of at most `max_terms` points.
pub fn decompose_with_catalog(
    poly: &VPolytope,
    catalog: &DistinguishableCatalog,
    p: &Point,
    max_terms: Option<usize>,
) -> Result<Option<Decomposition>> {
    let limit = max_terms.unwrap_or(usize::MAX);
    for subset in catalog.iter().take_while(|s| s.len() <= limit) {
        if let Some(d) = decompose_on(poly, subset, p)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

fn require_inside(poly: &VPolytope, p: &Point) -> Result<()> {
    poly.check_point(p)?;
    if convex_weights(poly.vertices(), p)?.is_none() {
        return Err(Error::PointNotInSet);
    }
    Ok(())
}

pub fn decompose(poly: &VPolytope, p: &Point) -> Result<Option<Decomposition>> {
    require_inside(poly, p)?;
    let catalog = max_distinguishable(poly)?.catalog;
    decompose_with_catalog(poly, &catalog, p, None)
}

/// Every decomposition over distinguishable vertex subsets, in catalog order.
pub fn decompose_all(poly: &VPolytope, p: &Point) -> Result<Vec<Decomposition>> {
    require_inside(poly, p)?;
    let catalog = max_distinguishable(poly)?.catalog;
    let mut out: Vec<Decomposition> = Vec::new();
    for subset in catalog.iter() {
        if let Some(d) = decompose_on(poly, subset, p)? {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// A seeded relative-interior point: positive integer weights in `1..=100`
/// over all vertices, normalized.
pub struct InteriorSample {
    pub point: Point,
    pub weights: Vec<Scalar>,
}

pub fn interior_samples(poly: &VPolytope, trials: usize, seed: u64) -> Vec<InteriorSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let refs: Vec<&Point> = poly.vertices().iter().collect();
    (0..trials)
        .map(|_| {
            let raw: Vec<i64> = (0..poly.vertex_count()).map(|_| rng.random_range(1..=100)).collect();
            let total = Scalar::from_int(raw.iter().sum());
            let weights: Vec<Scalar> = raw.iter().map(|&w| Scalar::from_int(w) / &total).collect();
            InteriorSample { point: Point::combination(&refs, &weights), weights }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposabilityReport {
    pub trials: usize,
    pub seed: u64,
    /// Support bound used (`None` = any distinguishable support).
    pub max_terms: Option<usize>,
    pub decomposable_samples: usize,
    /// First sampled point that admits no decomposition.
    pub counterexample: Option<Point>,
}

impl DecomposabilityReport {
    pub fn all_decomposable(&self) -> bool {
        self.decomposable_samples == self.trials
    }
}

pub fn decomposability_verdict(poly: &VPolytope, trials: usize, seed: u64) -> Result<DecomposabilityReport> {
    decomposability_verdict_bounded(poly, trials, seed, None)
}

pub fn decomposability_verdict_bounded(
    poly: &VPolytope,
    trials: usize,
    seed: u64,
    max_terms: Option<usize>,
) -> Result<DecomposabilityReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let catalog = max_distinguishable(poly)?.catalog;
    verdict_with_catalog(poly, &catalog, trials, seed, max_terms)
}

pub fn verdict_with_catalog(
    poly: &VPolytope,
    catalog: &DistinguishableCatalog,
    trials: usize,
    seed: u64,
    max_terms: Option<usize>,
) -> Result<DecomposabilityReport> {
    let samples = interior_samples(poly, trials, seed);
    let found: Vec<Result<bool>> = samples
        .par_iter()
        .map(|s| decompose_with_catalog(poly, catalog, &s.point, max_terms).map(|d| d.is_some()))
        .collect();
    let mut decomposable_samples = 0;
    let mut counterexample = None;
    for (s, ok) in samples.iter().zip(found) {
        if ok? {
            decomposable_samples += 1;
        } else if counterexample.is_none() {
            counterexample = Some(s.point.clone());
        }
    }
    Ok(DecomposabilityReport { trials, seed, max_terms, decomposable_samples, counterexample })
}

/// Ordered pairs `(i, j)` of distinct vertex indices.
pub fn distinguishable_ordered_pairs(catalog: &DistinguishableCatalog) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for s in catalog.of_size(2) {
        out.push((s[0], s[1]));
        out.push((s[1], s[0]));
    }
    out.sort_unstable();
    out
}

/// Matrix of effect values `eᵢ(pⱼ)`; the identity for a valid witness.
pub fn effect_table(witness: &DistinguishabilityWitness, points: &[Point]) -> Matrix {
    Matrix::from_rows(
        witness.effects.iter().map(|e| points.iter().map(|p| e.eval(p)).collect()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{generate, PolytopeSpec};
    use crate::scalar::q;

    fn square() -> VPolytope {
        generate(&PolytopeSpec::Cube(2)).unwrap()
    }

    fn p(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    #[test]
    fn diagonal_pair_of_square() {
        let sq = square();
        let pts = vec![p(&[1, 1]), p(&[-1, -1])];
        let w = distinguishable(&sq, &pts).unwrap().unwrap();
        assert!(w.verify(&sq, &pts));
        assert!(effect_table(&w, &pts).is_identity());

        // the hand-built witness (2+x+y)/4, (2-x-y)/4 also passes
        let manual = DistinguishabilityWitness {
            effects: vec![
                AffineFunctional::new(vec![q(1, 4), q(1, 4)], q(1, 2)),
                AffineFunctional::new(vec![q(-1, 4), q(-1, 4)], q(1, 2)),
            ],
        };
        assert!(manual.verify(&sq, &pts));

        let hw = hyperplane_witness_from_effects(&sq, &pts, &manual).unwrap();
        assert_eq!(hw.hyperplanes[0], Hyperplane::new(vec![q(1, 1), q(1, 1)], q(-2, 1)).unwrap());
        assert_eq!(hw.hyperplanes[1], Hyperplane::new(vec![q(1, 1), q(1, 1)], q(2, 1)).unwrap());
        assert!(hw.hyperplanes[0].is_parallel_to(&hw.hyperplanes[1]));
        assert_eq!(check_hyperplane_witness(&sq, &pts, &hw), Ok(()));

        let mut skew = hw.clone();
        skew.hyperplanes[1] = Hyperplane::new(vec![q(0, 1), q(1, 1)], q(1, 1)).unwrap();
        assert_eq!(check_hyperplane_witness(&sq, &pts, &skew), Err(WitnessDefect::NormalsNotDependent));
        assert_eq!(WitnessDefect::NormalsNotDependent.reason(), "normals not dependent");

        let mut cutting = hw.clone();
        cutting.hyperplanes[1] = Hyperplane::new(vec![q(1, 1), q(1, 1)], q(0, 1)).unwrap();
        assert_eq!(
            check_hyperplane_witness(&sq, &pts, &cutting).unwrap_err().reason(),
            "not supporting"
        );
    }

    #[test]
    fn triangle_vertices_give_barycentric_effects() {
        let tri = generate(&PolytopeSpec::Simplex(2)).unwrap();
        let pts = tri.vertices().to_vec();
        let w = distinguishable(&tri, &pts).unwrap().unwrap();
        assert!(w.verify(&tri, &pts));
        // barycentric coordinates are the only affine functions with eᵢ(vⱼ) = δᵢⱼ
        let centroid = tri.barycenter();
        for e in &w.effects {
            assert_eq!(e.eval(&centroid), q(1, 3));
        }
        let hw = hyperplane_witness_from_effects(&tri, &pts, &w).unwrap();
        assert!(verify_hyperplane_witness(&tri, &pts, &hw));
        assert!(hw.dependence.iter().all(|l| !l.is_zero()));
        // each Hᵢ is the edge line opposite vertex i
        for (i, h) in hw.hyperplanes.iter().enumerate() {
            for (j, v) in pts.iter().enumerate() {
                assert_eq!(h.contains(v), i != j);
            }
        }
    }

    #[test]
    fn singletons_and_triples() {
        let sq = square();
        let w = distinguishable(&sq, &[p(&[1, -1])]).unwrap().unwrap();
        assert_eq!(w.effects[0], AffineFunctional::constant(2, q(1, 1)));
        let inner = distinguishable(&sq, &[Point(vec![q(1, 3), q(0, 1)])]).unwrap().unwrap();
        assert!(inner.effects[0].is_constant());
        for omit in 0..4 {
            let pts: Vec<Point> =
                sq.vertices().iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, v)| v.clone()).collect();
            match distinguishability_outcome(&sq, &pts).unwrap() {
                LpOutcome::Infeasible { farkas_certificate } => {
                    assert!(distinguishability_lp(&sq, &pts).verify_farkas(&farkas_certificate))
                }
                other => panic!("triple should be indistinguishable: {other:?}"),
            }
        }
    }

    #[test]
    fn input_errors() {
        let sq = square();
        assert_eq!(distinguishable(&sq, &[p(&[2, 0])]), Err(Error::PointNotInSet));
        assert_eq!(distinguishable(&sq, &[p(&[1, 1]), p(&[1, 1])]), Err(Error::DuplicatePoints));
        assert!(matches!(distinguishable(&sq, &[p(&[1, 1, 1])]), Err(Error::DimensionMismatch { .. })));
        let w = distinguishable(&sq, &[p(&[1, 1])]).unwrap().unwrap();
        assert!(hyperplane_witness_from_effects(&sq, &[p(&[1, 1])], &w).is_err());
        let constant = DistinguishabilityWitness {
            effects: vec![AffineFunctional::constant(2, q(1, 1)), AffineFunctional::constant(2, q(0, 1))],
        };
        assert_eq!(
            hyperplane_witness_from_effects(&sq, &[p(&[1, 1]), p(&[-1, -1])], &constant),
            Err(Error::EffectConstant)
        );
    }

    #[test]
    fn square_maximal_sets() {
        let m = max_distinguishable(&square()).unwrap();
        assert_eq!(m.k, 2);
        assert_eq!(m.sets.len(), 6);
    }

    #[test]
    fn hexagon_pairs() {
        let hex = generate(&PolytopeSpec::AffinelyRegularPolygon(6)).unwrap();
        let m = max_distinguishable(&hex).unwrap();
        assert_eq!(m.k, 2);
        // each vertex pairs with its antipode and the antipode's two neighbours
        assert_eq!(m.sets.len(), 9);
        for s in &m.sets {
            let pts: Vec<Point> = s.iter().map(|&i| hex.vertices()[i].clone()).collect();
            let w = distinguishable(&hex, &pts).unwrap().unwrap();
            let hw = hyperplane_witness_from_effects(&hex, &pts, &w).unwrap();
            assert!(verify_hyperplane_witness(&hex, &pts, &hw));
        }
        let pair = [p(&[1, 1]), p(&[0, -1])];
        assert!(distinguishable(&hex, &pair).unwrap().is_some());
    }

    #[test]
    fn simplex_maximal_set() {
        for n in 1..=3 {
            let s = generate(&PolytopeSpec::Simplex(n)).unwrap();
            let m = max_distinguishable(&s).unwrap();
            assert_eq!(m.k, n + 1);
            assert_eq!(m.sets, vec![(0..=n).collect::<Vec<_>>()]);
        }
    }

    #[test]
    fn decompose_examples() {
        let tri = generate(&PolytopeSpec::Simplex(2)).unwrap();
        let c = tri.barycenter();
        let d = decompose(&tri, &c).unwrap().unwrap();
        assert_eq!(d.weights(), vec![q(1, 3); 3]);
        assert!(d.verify(&tri, &c).unwrap());

        let sq = square();
        let d = decompose(&sq, &p(&[0, 0])).unwrap().unwrap();
        assert_eq!(d.weights(), vec![q(1, 2), q(1, 2)]);
        assert_eq!(d.terms[0].vertex, d.terms[1].vertex.scaled(&q(-1, 1)));
        assert!(d.verify(&sq, &p(&[0, 0])).unwrap());

        assert_eq!(decompose(&sq, &Point(vec![q(1, 2), q(1, 4)])).unwrap(), None);
        assert_eq!(decompose(&sq, &p(&[3, 0])), Err(Error::PointNotInSet));

        let vertex = decompose(&sq, &p(&[1, 1])).unwrap().unwrap();
        assert_eq!(vertex.len(), 1);

        // the center lies on both diagonals
        assert_eq!(decompose_all(&sq, &p(&[0, 0])).unwrap().len(), 2);
    }

    #[test]
    fn verdicts() {
        let s3 = generate(&PolytopeSpec::Simplex(3)).unwrap();
        let r = decomposability_verdict(&s3, 20, 5).unwrap();
        assert!(r.all_decomposable() && r.counterexample.is_none());
        let sq = square();
        let r = decomposability_verdict(&sq, 20, 5).unwrap();
        assert!(r.counterexample.is_some());
        assert!(decomposability_verdict(&sq, 0, 5).is_err());
        // the centroid of a triangle needs three terms
        let tri = generate(&PolytopeSpec::Simplex(2)).unwrap();
        let r = decomposability_verdict_bounded(&tri, 10, 1, Some(2)).unwrap();
        assert_eq!(r.decomposable_samples, 0);
    }
}
