//! Points, affine functionals, affine maps and hyperplanes over exact rationals.

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

/// A point of the ambient space `R^n`; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn sub(&self, other: &Point) -> Vec<Scalar> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn translate(&self, v: &[Scalar]) -> Point {
        Point(self.0.iter().zip(v).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, s: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// `Σ wᵢ·pᵢ`. Panics on an empty slice.
    pub fn combination(points: &[&Point], weights: &[Scalar]) -> Point {
        assert_eq!(points.len(), weights.len());
        let dim = points[0].dim();
        let mut acc = vec![Scalar::zero(); dim];
        for (p, w) in points.iter().zip(weights) {
            if w.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&p.0) {
                *a += w * x;
            }
        }
        Point(acc)
    }

    /// Vertex average. Panics on an empty slice.
    pub fn barycenter(points: &[Point]) -> Point {
        let n = Scalar::from_int(points.len() as i64);
        let refs: Vec<&Point> = points.iter().collect();
        let w = vec![n.recip(); points.len()];
        Point::combination(&refs, &w)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `x ↦ ⟨gradient, x⟩ + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFunctional {
    pub gradient: Vec<Scalar>,
    pub offset: Scalar,
}

impl AffineFunctional {
    pub fn new(gradient: Vec<Scalar>, offset: Scalar) -> Self {
        AffineFunctional { gradient, offset }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        AffineFunctional { gradient: vec![Scalar::zero(); dim], offset: value }
    }

    pub fn eval(&self, p: &Point) -> Scalar {
        dot(&self.gradient, &p.0) + &self.offset
    }

    pub fn is_constant(&self) -> bool {
        self.gradient.iter().all(Scalar::is_zero)
    }

    pub fn zero_set(&self) -> Result<Hyperplane> {
        Hyperplane::new(self.gradient.clone(), -self.offset.clone()).ok_or(Error::EffectConstant)
    }
}

/// `x ↦ linear·x + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vec<Scalar>,
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineMap {{ linear: {:?}, translation: {:?} }}", self.linear, self.translation)
    }
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Vec<Scalar>) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::DimensionMismatch { expected: linear.nrows(), found: linear.ncols() });
        }
        if translation.len() != linear.nrows() {
            return Err(Error::DimensionMismatch { expected: linear.nrows(), found: translation.len() });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap { linear: Matrix::identity(dim), translation: vec![Scalar::zero(); dim] }
    }

    pub fn linear_only(linear: Matrix) -> Self {
        let n = linear.nrows();
        AffineMap { linear, translation: vec![Scalar::zero(); n] }
    }

    pub fn translation_by(t: Vec<Scalar>) -> Self {
        AffineMap { linear: Matrix::identity(t.len()), translation: t }
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, p: &Point) -> Point {
        let lx = self.linear.mul_vec(&p.0);
        Point(lx.into_iter().zip(&self.translation).map(|(a, b)| a + b).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Scalar::is_zero)
    }

    pub fn is_invertible(&self) -> bool {
        !self.linear.determinant().is_zero()
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        let linear = self.linear.mul(&other.linear);
        let lt = self.linear.mul_vec(&other.translation);
        let translation = lt.into_iter().zip(&self.translation).map(|(a, b)| a + b).collect();
        Ok(AffineMap { linear, translation })
    }

    pub fn invert(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let t = inv.mul_vec(&self.translation).into_iter().map(|x| -x).collect();
        Ok(AffineMap { linear: inv, translation: t })
    }

    pub fn pow(&self, k: u32) -> AffineMap {
        let mut acc = AffineMap::identity(self.dim());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same dimension");
        }
        acc
    }
}

/// `{x : ⟨normal, x⟩ = level}`, scaled so the first nonzero normal entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<Scalar>,
    level: Scalar,
}

impl Hyperplane {
    /// `None` when the normal is zero.
    pub fn new(normal: Vec<Scalar>, level: Scalar) -> Option<Self> {
        let lead = normal.iter().find(|x| !x.is_zero())?.clone();
        let inv = lead.recip();
        Some(Hyperplane {
            normal: normal.iter().map(|x| x * &inv).collect(),
            level: level * inv,
        })
    }

    pub fn normal(&self) -> &[Scalar] {
        &self.normal
    }

    pub fn level(&self) -> &Scalar {
        &self.level
    }

    /// `⟨normal, p⟩ − level`; zero exactly on the hyperplane.
    pub fn signed_value(&self, p: &Point) -> Scalar {
        dot(&self.normal, &p.0) - &self.level
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.signed_value(p).is_zero()
    }

    pub fn is_parallel_to(&self, other: &Hyperplane) -> bool {
        self.normal == other.normal
    }
}

fn check_uniform(points: &[Point]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let dim = first.dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
    }
    Ok(dim)
}

/// Difference vectors `pᵢ − p₀`.
pub fn difference_vectors(points: &[Point]) -> Vec<Vec<Scalar>> {
    points[1..].iter().map(|p| p.sub(&points[0])).collect()
}

/// Dimension of the affine hull.
pub fn affine_rank(points: &[Point]) -> Result<usize> {
    check_uniform(points)?;
    if points.len() == 1 {
        return Ok(0);
    }
    Ok(Matrix::from_rows(difference_vectors(points)).rank())
}

pub fn is_affinely_independent(points: &[Point]) -> Result<bool> {
    Ok(affine_rank(points)? + 1 == points.len())
}

/// Basis (rows of the reduced echelon form) of the direction space of the affine hull.
pub fn affine_hull_directions(points: &[Point]) -> Result<Vec<Vec<Scalar>>> {
    check_uniform(points)?;
    if points.len() == 1 {
        return Ok(Vec::new());
    }
    let (red, pivots) = Matrix::from_rows(difference_vectors(points)).rref();
    Ok((0..pivots.len()).map(|i| red.row(i).to_vec()).collect())
}

/// The unique affine map sending `frame[k]` to `images[k]`.
///
/// `frame` must be `n + 1` affinely independent points of `R^n`.
pub fn affine_map_from_frame(frame: &[Point], images: &[Point]) -> Result<AffineMap> {
    let dim = check_uniform(frame)?;
    if images.len() != frame.len() {
        return Err(Error::DimensionMismatch { expected: frame.len(), found: images.len() });
    }
    let image_dim = check_uniform(images)?;
    if image_dim != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: image_dim });
    }
    if frame.len() != dim + 1 || affine_rank(frame)? != dim {
        return Err(Error::FrameNotIndependent);
    }
    let frame_inv = Matrix::from_columns(&difference_vectors(frame))
        .inverse()
        .map_err(|_| Error::FrameNotIndependent)?;
    Ok(FrameSolver { origin: frame[0].clone(), frame_inv }.map_to(images))
}

/// Repeated [`affine_map_from_frame`] against one fixed frame.
#[derive(Clone, Debug)]
pub struct FrameSolver {
    origin: Point,
    frame_inv: Matrix,
}

impl FrameSolver {
    pub fn new(frame: &[Point]) -> Result<Self> {
        let dim = check_uniform(frame)?;
        if frame.len() != dim + 1 {
            return Err(Error::FrameNotIndependent);
        }
        let frame_inv = Matrix::from_columns(&difference_vectors(frame))
            .inverse()
            .map_err(|_| Error::FrameNotIndependent)?;
        Ok(FrameSolver { origin: frame[0].clone(), frame_inv })
    }

    pub fn map_to(&self, images: &[Point]) -> AffineMap {
        let linear = Matrix::from_columns(&difference_vectors(images)).mul(&self.frame_inv);
        let lo = linear.mul_vec(&self.origin.0);
        let translation = images[0].0.iter().zip(lo).map(|(a, b)| a - b).collect();
        AffineMap { linear, translation }
    }
}
