//! Polytopes in V-representation: extreme points, containment with
//! interiority, supporting hyperplanes on demand, and the generator corpus.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{affine_hull_directions, affine_rank, AffineMap, Hyperplane, Point};
use crate::linalg::Matrix;
use crate::linprog::{feasible_point, solve, Constraint, LinearProgram, LpOutcome};
use crate::scalar::Scalar;

/// A polytope given by its extreme points, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
    rank: usize,
}

impl VPolytope {
    /// Builds the hull of `points`, discarding non-extreme points.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        Ok(Self::hull_with_removed(points)?.0)
    }

    /// Like [`VPolytope::from_points`], also returning the points that were dropped
    /// (duplicates and points inside the hull of the rest).
    pub fn hull_with_removed(points: Vec<Point>) -> Result<(Self, Vec<Point>)> {
        let vertices = extreme_points(&points)?;
        let mut removed: Vec<Point> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for p in points {
            if vertices.binary_search(&p).is_err() || !seen.insert(p.clone()) {
                removed.push(p);
            }
        }
        let rank = affine_rank(&vertices)?;
        let dim = vertices[0].dim();
        Ok((VPolytope { dim, vertices, rank }, removed))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the affine hull.
    pub fn intrinsic_dim(&self) -> usize {
        self.rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.rank == self.dim
    }

    /// `rank + 1` affinely independent vertices.
    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.rank + 1
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn barycenter(&self) -> Point {
        Point::barycenter(&self.vertices)
    }

    pub fn transformed(&self, f: &AffineMap) -> Result<Self> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: f.dim() });
        }
        if !f.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| f.apply(v)).collect();
        vertices.sort();
        Ok(VPolytope { dim: self.dim, vertices, rank: self.rank })
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(())
    }

    pub fn to_file(&self) -> PolytopeFile {
        PolytopeFile { dim: self.dim, vertices: self.vertices.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("polytope serializes")
    }
}

/// On-disk form: `{"dim": n, "vertices": [["p/q", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Point>,
}

/// A parsed polytope file, with the input points that were not extreme.
#[derive(Clone, Debug)]
pub struct LoadedPolytope {
    pub polytope: VPolytope,
    pub removed: Vec<Point>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn into_polytope(self) -> Result<LoadedPolytope> {
        if self.vertices.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for v in &self.vertices {
            if v.dim() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
            }
        }
        let (polytope, removed) = VPolytope::hull_with_removed(self.vertices)?;
        Ok(LoadedPolytope { polytope, removed })
    }
}

pub fn load_polytope(text: &str) -> Result<LoadedPolytope> {
    PolytopeFile::parse(text)?.into_polytope()
}

/// Weights `λ ≥ 0`, `Σλ = 1` with `Σ λᵢ·pointsᵢ = target`, if any exist.
pub fn convex_weights(points: &[Point], target: &Point) -> Result<Option<Vec<Scalar>>> {
    let k = points.len();
    let mut rows = Vec::with_capacity(target.dim() + 1 + k);
    rows.push(Constraint::eq(vec![Scalar::one(); k], Scalar::one()));
    for d in 0..target.dim() {
        rows.push(Constraint::eq(points.iter().map(|p| p[d].clone()).collect(), target[d].clone()));
    }
    for i in 0..k {
        rows.push(Constraint::ge(unit(k, i), Scalar::zero()));
    }
    feasible_point(k, &rows)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut e = vec![Scalar::zero(); n];
    e[i] = Scalar::one();
    e
}

/// The extreme points of `conv(points)`, sorted lexicographically.
///
/// A point is dropped iff it lies in the hull of the remaining distinct points.
pub fn extreme_points(points: &[Point]) -> Result<Vec<Point>> {
    affine_rank(points)?;
    let mut distinct = points.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut keep = Vec::with_capacity(distinct.len());
    for (i, p) in distinct.iter().enumerate() {
        let others: Vec<Point> =
            distinct.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        if others.is_empty() || convex_weights(&others, p)?.is_none() {
            keep.push(p.clone());
        }
    }
    Ok(keep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Containment {
    Outside,
    Boundary,
    RelativeInterior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentVerdict {
    pub kind: Containment,
    /// Convex weights over the polytope's vertices reproducing the point (absent when outside).
    pub weights: Option<Vec<Scalar>>,
}

impl ContainmentVerdict {
    pub fn is_inside(&self) -> bool {
        self.kind != Containment::Outside
    }
}

pub fn contains(poly: &VPolytope, p: &Point) -> Result<ContainmentVerdict> {
    poly.check_point(p)?;
    let Some(weights) = convex_weights(&poly.vertices, p)? else {
        return Ok(ContainmentVerdict { kind: Containment::Outside, weights: None });
    };
    let directions = affine_hull_directions(&poly.vertices)?;
    let mut interior = true;
    'dirs: for d in &directions {
        for sign in [Scalar::one(), -Scalar::one()] {
            let dir: Vec<Scalar> = d.iter().map(|x| x * &sign).collect();
            if max_step(poly, p, &dir)?.is_zero() {
                interior = false;
                break 'dirs;
            }
        }
    }
    let kind = if interior { Containment::RelativeInterior } else { Containment::Boundary };
    Ok(ContainmentVerdict { kind, weights: Some(weights) })
}

/// `max t ∈ [0, 1]` such that `p + t·dir` stays in the polytope.
fn max_step(poly: &VPolytope, p: &Point, dir: &[Scalar]) -> Result<Scalar> {
    let k = poly.vertex_count();
    let nv = k + 1;
    let mut lp = LinearProgram::new(nv);
    let mut sum = vec![Scalar::one(); k];
    sum.push(Scalar::zero());
    lp.push(Constraint::eq(sum, Scalar::one()));
    for d in 0..poly.dim {
        let mut row: Vec<Scalar> = poly.vertices.iter().map(|v| v[d].clone()).collect();
        row.push(-dir[d].clone());
        lp.push(Constraint::eq(row, p[d].clone()));
    }
    for i in 0..nv {
        lp.push(Constraint::ge(unit(nv, i), Scalar::zero()));
    }
    lp.push(Constraint::le(unit(nv, k), Scalar::one()));
    let lp = lp.maximize(unit(nv, k));
    match solve(&lp)? {
        LpOutcome::Feasible { objective_value: Some(t), .. } => Ok(t),
        other => unreachable!("bounded program with p inside: {other:?}"),
    }
}

/// A hyperplane `{⟨v,x⟩ = c}` through every point of `contain`, with the polytope
/// in `{⟨v,x⟩ ≤ c}`, each point of `exclude` in `{⟨v,x⟩ ≤ c − 1}`, and not every
/// vertex on it (normalized as `Σ (c − ⟨v,q⟩) ≥ 1` over the vertices).
pub fn supporting_hyperplane(
    poly: &VPolytope,
    contain: &[Point],
    exclude: &[Point],
) -> Result<Option<Hyperplane>> {
    if contain.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in contain.iter().chain(exclude) {
        poly.check_point(p)?;
    }
    let n = poly.dim;
    let row = |p: &Point| -> Vec<Scalar> {
        let mut r = p.0.clone();
        r.push(-Scalar::one());
        r
    };
    let mut cons = Vec::new();
    for p in contain {
        cons.push(Constraint::eq(row(p), Scalar::zero()));
    }
    for q in &poly.vertices {
        cons.push(Constraint::le(row(q), Scalar::zero()));
    }
    for r in exclude {
        cons.push(Constraint::le(row(r), -Scalar::one()));
    }
    let mut total = vec![Scalar::zero(); n + 1];
    for q in &poly.vertices {
        for (t, x) in total.iter_mut().zip(row(q)) {
            *t -= x;
        }
    }
    cons.push(Constraint::ge(total, Scalar::one()));
    let Some(sol) = feasible_point(n + 1, &cons)? else { return Ok(None) };
    Ok(Hyperplane::new(sol[..n].to_vec(), sol[n].clone()))
}

/// Named constructions of the exact corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeSpec {
    Simplex(usize),
    Cube(usize),
    CrossPolytope(usize),
    /// `Π [−aᵢ, aᵢ]`.
    Box(Vec<Scalar>),
    AffinelyRegularPolygon(usize),
    Prism { base: Box<PolytopeSpec>, height: Scalar },
    Random { dim: usize, count: usize, seed: u64 },
}

impl fmt::Display for PolytopeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeSpec::Simplex(n) => write!(f, "simplex({n})"),
            PolytopeSpec::Cube(n) => write!(f, "cube({n})"),
            PolytopeSpec::CrossPolytope(n) => write!(f, "cross_polytope({n})"),
            PolytopeSpec::Box(a) => {
                let parts: Vec<String> = a.iter().map(Scalar::to_string).collect();
                write!(f, "box({})", parts.join(","))
            }
            PolytopeSpec::AffinelyRegularPolygon(m) => write!(f, "polygon({m})"),
            PolytopeSpec::Prism { base, height } if height.is_one() => write!(f, "prism({base})"),
            PolytopeSpec::Prism { base, height } => write!(f, "prism({base},{height})"),
            PolytopeSpec::Random { dim, count, seed } => write!(f, "random({dim},{count},{seed})"),
        }
    }
}

impl FromStr for PolytopeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid polytope spec {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let name = &t[..open];
        let inner = &t[open + 1..t.len() - 1];
        let args = split_top_level(inner);
        let int = |i: usize| -> Result<u64> {
            args.get(i).ok_or_else(bad)?.parse::<u64>().map_err(|_| bad())
        };
        let nargs = |n: usize| if args.len() == n { Ok(()) } else { Err(bad()) };
        match name {
            "simplex" => nargs(1).and(Ok(PolytopeSpec::Simplex(int(0)? as usize))),
            "cube" => nargs(1).and(Ok(PolytopeSpec::Cube(int(0)? as usize))),
            "cross_polytope" | "cross" => nargs(1).and(Ok(PolytopeSpec::CrossPolytope(int(0)? as usize))),
            "polygon" | "affinely_regular_polygon" => {
                nargs(1).and(Ok(PolytopeSpec::AffinelyRegularPolygon(int(0)? as usize)))
            }
            "box" => {
                let a = args.iter().map(|x| x.parse()).collect::<Result<Vec<Scalar>>>()?;
                if a.is_empty() {
                    return Err(bad());
                }
                Ok(PolytopeSpec::Box(a))
            }
            "prism" => {
                let base = args.first().ok_or_else(bad)?.parse()?;
                let height = match args.len() {
                    1 => Scalar::one(),
                    2 => args[1].parse()?,
                    _ => return Err(bad()),
                };
                Ok(PolytopeSpec::Prism { base: Box::new(base), height })
            }
            "random" => nargs(3).and(Ok(PolytopeSpec::Random {
                dim: int(0)? as usize,
                count: int(1)? as usize,
                seed: int(2)?,
            })),
            _ => Err(bad()),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.is_empty() {
        out.push(&s[start..]);
    }
    out
}

/// The rational rotation of order 3, 4 or 6 used for affinely regular polygons.
pub fn rational_rotation(order: usize) -> Result<Matrix> {
    match order {
        3 => Ok(Matrix::from_ints(&[&[0, -1], &[1, -1]])),
        4 => Ok(Matrix::from_ints(&[&[0, -1], &[1, 0]])),
        6 => Ok(Matrix::from_ints(&[&[1, -1], &[1, 0]])),
        m => Err(Error::NoRationalRealization(m)),
    }
}

/// The orbit of `(1, 0)` under [`rational_rotation`], in orbit order.
pub fn polygon_orbit(order: usize) -> Result<Vec<Point>> {
    let rot = rational_rotation(order)?;
    let mut p = vec![Scalar::one(), Scalar::zero()];
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        out.push(Point(p.clone()));
        p = rot.mul_vec(&p);
    }
    Ok(out)
}

pub fn generate(spec: &PolytopeSpec) -> Result<VPolytope> {
    let positive = |n: usize| {
        if n == 0 {
            Err(Error::InvalidArgument("dimension must be positive".into()))
        } else {
            Ok(())
        }
    };
    let points = match spec {
        PolytopeSpec::Simplex(n) => {
            positive(*n)?;
            let mut pts = vec![Point::origin(*n)];
            pts.extend((0..*n).map(|i| Point(unit(*n, i))));
            pts
        }
        PolytopeSpec::Cube(n) => {
            positive(*n)?;
            (0..1u64 << *n)
                .map(|mask| {
                    Point((0..*n).map(|i| Scalar::from_int(if mask >> i & 1 == 1 { 1 } else { -1 })).collect())
                })
                .collect()
        }
        PolytopeSpec::CrossPolytope(n) => {
            positive(*n)?;
            (0..*n)
                .flat_map(|i| {
                    let e = Point(unit(*n, i));
                    let m = e.scaled(&-Scalar::one());
                    [e, m]
                })
                .collect()
        }
        PolytopeSpec::Box(a) => {
            if a.iter().any(|x| !x.is_positive()) {
                return Err(Error::InvalidArgument("box half-widths must be positive".into()));
            }
            let n = a.len();
            (0..1u64 << n)
                .map(|mask| {
                    Point((0..n).map(|i| if mask >> i & 1 == 1 { a[i].clone() } else { -a[i].clone() }).collect())
                })
                .collect()
        }
        PolytopeSpec::AffinelyRegularPolygon(m) => polygon_orbit(*m)?,
        PolytopeSpec::Prism { base, height } => {
            let base = generate(base)?;
            if base.dim() != 2 || base.intrinsic_dim() != 2 {
                return Err(Error::InvalidArgument("prism base must be a 2-dimensional polygon".into()));
            }
            if !height.is_positive() {
                return Err(Error::InvalidArgument("prism height must be positive".into()));
            }
            let mut pts = Vec::with_capacity(2 * base.vertex_count());
            for z in [Scalar::zero(), height.clone()] {
                for v in base.vertices() {
                    let mut c = v.0.clone();
                    c.push(z.clone());
                    pts.push(Point(c));
                }
            }
            pts
        }
        PolytopeSpec::Random { dim, count, seed } => {
            positive(*dim)?;
            if *count == 0 {
                return Err(Error::EmptyPointSet);
            }
            random_points(*dim, *count, *seed)
        }
    };
    VPolytope::from_points(points)
}

/// Seeded rational coordinates `p/q` with `|p| ≤ 24`, `1 ≤ q ≤ 5`.
pub fn random_points(dim: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            Point(
                (0..dim)
                    .map(|_| Scalar::ratio(rng.random_range(-24..=24), rng.random_range(1..=5)))
                    .collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|c| Point::from_ints(c)).collect()
    }

    fn square() -> VPolytope {
        generate(&PolytopeSpec::Cube(2)).unwrap()
    }

    #[test]
    fn extreme_points_examples() {
        let with_center = pts(&[&[1, 1], &[-1, 1], &[0, 0], &[1, -1], &[-1, -1]]);
        assert_eq!(extreme_points(&with_center).unwrap(), pts(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]));
        assert_eq!(extreme_points(&pts(&[&[0, 0], &[2, 0], &[1, 0]])).unwrap(), pts(&[&[0, 0], &[2, 0]]));
        assert_eq!(generate(&PolytopeSpec::Cube(3)).unwrap().vertex_count(), 8);
        assert_eq!(extreme_points(&pts(&[&[3, 3], &[3, 3]])).unwrap(), pts(&[&[3, 3]]));
    }

    #[test]
    fn hull_reports_removals() {
        let (p, removed) = VPolytope::hull_with_removed(pts(&[&[0, 0], &[2, 0], &[1, 0], &[0, 0]])).unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(removed, pts(&[&[1, 0], &[0, 0]]));
        assert_eq!(p.intrinsic_dim(), 1);
    }

    #[test]
    fn containment_examples() {
        let tri = VPolytope::from_points(pts(&[&[0, 0], &[3, 0], &[0, 3]])).unwrap();
        let c = contains(&tri, &Point::from_ints(&[1, 1])).unwrap();
        assert_eq!(c.kind, Containment::RelativeInterior);
        assert_eq!(c.weights.unwrap(), vec![q(1, 3); 3]);
        assert_eq!(contains(&tri, &Point::from_ints(&[3, 0])).unwrap().kind, Containment::Boundary);
        assert_eq!(contains(&square(), &Point::from_ints(&[2, 0])).unwrap().kind, Containment::Outside);
        assert_eq!(contains(&square(), &Point::from_ints(&[1, 0])).unwrap().kind, Containment::Boundary);

        // relative interior of a segment lying in the plane
        let seg = VPolytope::from_points(pts(&[&[0, 0], &[2, 2]])).unwrap();
        assert_eq!(contains(&seg, &Point::from_ints(&[1, 1])).unwrap().kind, Containment::RelativeInterior);
        assert_eq!(contains(&seg, &Point::from_ints(&[1, 0])).unwrap().kind, Containment::Outside);
        assert!(contains(&seg, &Point::from_ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn supporting_hyperplane_examples() {
        let sq = square();
        let h = supporting_hyperplane(&sq, &pts(&[&[1, 1]]), &pts(&[&[1, -1]])).unwrap().unwrap();
        assert!(h.contains(&Point::from_ints(&[1, 1])));
        assert!(!h.contains(&Point::from_ints(&[1, -1])));
        // every vertex weakly on one side
        let sides: Vec<i32> = sq.vertices().iter().map(|v| h.signed_value(v).signum()).collect();
        assert!(sides.iter().all(|&s| s <= 0) || sides.iter().all(|&s| s >= 0));

        assert!(supporting_hyperplane(&sq, &pts(&[&[1, 1], &[-1, -1]]), &[]).unwrap().is_none());

        let tri = VPolytope::from_points(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let edge = supporting_hyperplane(&tri, &pts(&[&[1, 0], &[0, 1]]), &pts(&[&[0, 0]])).unwrap().unwrap();
        assert_eq!(edge, Hyperplane::new(vec![q(1, 1), q(1, 1)], q(1, 1)).unwrap());
    }

    #[test]
    fn generator_examples() {
        let hex = polygon_orbit(6).unwrap();
        assert_eq!(hex, pts(&[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]]));
        let s3 = generate(&PolytopeSpec::Simplex(3)).unwrap();
        assert!(s3.is_simplex() && s3.vertex_count() == 4);
        let prism: PolytopeSpec = "prism(polygon(4), 1)".parse().unwrap();
        let p = generate(&prism).unwrap();
        assert_eq!(p.vertex_count(), 8);
        assert!(p.is_full_dimensional());
        assert_eq!(generate(&PolytopeSpec::AffinelyRegularPolygon(5)), Err(Error::NoRationalRealization(5)));
        assert!(generate(&"prism(simplex(3))".parse().unwrap()).is_err());
        assert_eq!(generate(&PolytopeSpec::CrossPolytope(3)).unwrap().vertex_count(), 6);
    }

    #[test]
    fn spec_strings_roundtrip() {
        for s in ["simplex(3)", "cube(2)", "cross_polytope(3)", "polygon(6)", "prism(polygon(6))", "prism(polygon(3),2)", "random(2,7,11)", "box(1,2)"] {
            let spec: PolytopeSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("simplex".parse::<PolytopeSpec>().is_err());
        assert!("simplex(3,4)".parse::<PolytopeSpec>().is_err());
        assert!("blob(2)".parse::<PolytopeSpec>().is_err());
    }

    #[test]
    fn random_is_deterministic() {
        let a = generate(&PolytopeSpec::Random { dim: 2, count: 6, seed: 3 }).unwrap();
        let b = generate(&PolytopeSpec::Random { dim: 2, count: 6, seed: 3 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn file_format() {
        let text = r#"{"dim": 2, "vertices": [["0","0"],["1","0"],["0","1"],["1/4","1/4"]]}"#;
        let loaded = load_polytope(text).unwrap();
        assert_eq!(loaded.polytope.vertex_count(), 3);
        assert_eq!(loaded.removed, vec![Point(vec![q(1, 4), q(1, 4)])]);
        assert!(matches!(load_polytope(r#"{"vertices": [["0"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(
            load_polytope(r#"{"dim": 2, "vertices": [["0"]]}"#),
            Err(Error::DimensionMismatch { .. })
        ));
        let back = load_polytope(&loaded.polytope.to_json()).unwrap();
        assert_eq!(back.polytope, loaded.polytope);
    }
}
