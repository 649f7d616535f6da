//! Affine automorphism groups of polytopes, orbits, the fixed point and the
//! invariant inner product.
//!
//! An affine map of a full-dimensional polytope is fixed by the images of an
//! affine frame, so the group is enumerated over ordered vertex tuples.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distinguish::{distinguishable_ordered_pairs, DistinguishableCatalog};
use crate::error::{Error, Result};
use crate::geometry::{affine_rank, AffineMap, FrameSolver, Point};
use crate::linalg::Matrix;
use crate::polytope::{contains, Containment, VPolytope};
use crate::scalar::Scalar;

/// `perm[i]` is the index of the image of vertex `i`.
pub type Permutation = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    elements: Vec<AffineMap>,
    vertex_permutations: Vec<Permutation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupDefect {
    MissingIdentity,
    NotPermutation(usize),
    NotClosed(usize, usize),
    MissingInverse(usize),
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineMap] {
        &self.elements
    }

    pub fn vertex_permutations(&self) -> &[Permutation] {
        &self.vertex_permutations
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn index_of_permutation(&self, perm: &[usize]) -> Option<usize> {
        self.vertex_permutations.binary_search_by(|p| p.as_slice().cmp(perm)).ok()
    }

    /// Linear parts with translations dropped.
    pub fn linear_parts(&self) -> Vec<&Matrix> {
        self.elements.iter().map(|g| &g.linear).collect()
    }

    /// Exact group-axiom check: each element permutes the vertices as recorded,
    /// the identity is present, and composition and inversion stay inside.
    pub fn verify(&self, poly: &VPolytope) -> std::result::Result<(), GroupDefect> {
        for (k, (g, perm)) in self.elements.iter().zip(&self.vertex_permutations).enumerate() {
            let ok = perm.len() == poly.vertex_count()
                && poly.vertices().iter().zip(perm).all(|(v, &j)| g.apply(v) == poly.vertices()[j]);
            if !ok || !is_permutation(perm) {
                return Err(GroupDefect::NotPermutation(k));
            }
        }
        if !self.elements.iter().any(AffineMap::is_identity) {
            return Err(GroupDefect::MissingIdentity);
        }
        let closure: std::result::Result<(), GroupDefect> = (0..self.order()).into_par_iter().try_for_each(|a| {
            for b in 0..self.order() {
                let composed = self.elements[a].compose(&self.elements[b]).expect("equal dimensions");
                let perm = compose_perm(&self.vertex_permutations[a], &self.vertex_permutations[b]);
                match self.index_of_permutation(&perm) {
                    Some(c) if self.elements[c] == composed => {}
                    _ => return Err(GroupDefect::NotClosed(a, b)),
                }
            }
            Ok(())
        });
        closure?;
        for (a, g) in self.elements.iter().enumerate() {
            let inv = g.invert().map_err(|_| GroupDefect::MissingInverse(a))?;
            let perm = invert_perm(&self.vertex_permutations[a]);
            match self.index_of_permutation(&perm) {
                Some(c) if self.elements[c] == inv => {}
                _ => return Err(GroupDefect::MissingInverse(a)),
            }
        }
        Ok(())
    }

    /// A generating set picked greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span: Vec<Permutation> = if self.order() == 0 {
            Vec::new()
        } else {
            vec![identity_perm(self.vertex_permutations[0].len())]
        };
        for (k, perm) in self.vertex_permutations.iter().enumerate() {
            if span.binary_search(perm).is_ok() {
                continue;
            }
            gens.push(k);
            let gen_perms: Vec<&Permutation> = gens.iter().map(|&g| &self.vertex_permutations[g]).collect();
            span = generated_subgroup(&gen_perms, perm.len());
            if span.len() == self.order() {
                break;
            }
        }
        gens
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &j in perm {
        if j >= perm.len() || std::mem::replace(&mut seen[j], true) {
            return false;
        }
    }
    true
}

fn identity_perm(n: usize) -> Permutation {
    (0..n).collect()
}

/// `(a ∘ b)[i] = a[b[i]]`.
pub fn compose_perm(a: &[usize], b: &[usize]) -> Permutation {
    b.iter().map(|&i| a[i]).collect()
}

pub fn invert_perm(a: &[usize]) -> Permutation {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn generated_subgroup(gens: &[&Permutation], n: usize) -> Vec<Permutation> {
    let mut seen = std::collections::BTreeSet::new();
    let start = identity_perm(n);
    seen.insert(start.clone());
    let mut queue = vec![start];
    while let Some(p) = queue.pop() {
        for g in gens {
            let next = compose_perm(g, &p);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// First vertex, then each vertex that raises the affine rank, up to `dim + 1` points.
fn greedy_frame(poly: &VPolytope) -> Result<Vec<usize>> {
    let mut frame: Vec<usize> = Vec::new();
    let mut pts: Vec<Point> = Vec::new();
    for (i, v) in poly.vertices().iter().enumerate() {
        pts.push(v.clone());
        if affine_rank(&pts)? + 1 == pts.len() {
            frame.push(i);
            if frame.len() == poly.dim() + 1 {
                break;
            }
        } else {
            pts.pop();
        }
    }
    Ok(frame)
}

pub fn automorphism_group(poly: &VPolytope) -> Result<AutomorphismGroup> {
    if !poly.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let frame_idx = greedy_frame(poly)?;
    let frame: Vec<Point> = frame_idx.iter().map(|&i| poly.vertices()[i].clone()).collect();
    let solver = FrameSolver::new(&frame)?;
    let bary = poly.barycenter();
    let v = poly.vertex_count();
    let width = frame.len();

    let mut found: Vec<(Permutation, AffineMap)> = (0..v)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut tuple = vec![first];
            extend_tuples(poly, &solver, &bary, v, width, &mut tuple, &mut out);
            out
        })
        .collect();
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (vertex_permutations, elements) = found.into_iter().unzip();
    Ok(AutomorphismGroup { elements, vertex_permutations })
}

fn extend_tuples(
    poly: &VPolytope,
    solver: &FrameSolver,
    bary: &Point,
    v: usize,
    width: usize,
    tuple: &mut Vec<usize>,
    out: &mut Vec<(Permutation, AffineMap)>,
) {
    if tuple.len() == width {
        let images: Vec<Point> = tuple.iter().map(|&i| poly.vertices()[i].clone()).collect();
        let map = solver.map_to(&images);
        if map.apply(bary) != *bary {
            return;
        }
        if let Some(perm) = induced_permutation(poly, &map) {
            out.push((perm, map));
        }
        return;
    }
    for next in 0..v {
        if tuple.contains(&next) {
            continue;
        }
        tuple.push(next);
        extend_tuples(poly, solver, bary, v, width, tuple, out);
        tuple.pop();
    }
}

/// The vertex permutation induced by `map`, if it maps the vertex set onto itself.
pub fn induced_permutation(poly: &VPolytope, map: &AffineMap) -> Option<Permutation> {
    let mut perm = Vec::with_capacity(poly.vertex_count());
    let mut seen = vec![false; poly.vertex_count()];
    for vtx in poly.vertices() {
        let j = poly.index_of(&map.apply(vtx))?;
        if std::mem::replace(&mut seen[j], true) {
            return None;
        }
        perm.push(j);
    }
    Some(perm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrbits {
    /// Orbits as sorted index lists, ordered by smallest member.
    pub orbits: Vec<Vec<usize>>,
}

impl VertexOrbits {
    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn vertex_orbits(group: &AutomorphismGroup, poly: &VPolytope) -> VertexOrbits {
    let n = poly.vertex_count();
    let mut uf = UnionFind::new(n);
    for perm in group.vertex_permutations() {
        for (i, &j) in perm.iter().enumerate() {
            uf.union(i, j);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    VertexOrbits { orbits }
}

pub fn is_vertex_transitive(group: &AutomorphismGroup, poly: &VPolytope) -> (bool, VertexOrbits) {
    let orbits = vertex_orbits(group, poly);
    (orbits.is_transitive(), orbits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub point: Point,
    pub unique: bool,
    pub interior: bool,
}

/// `Σ_g (L_g − I)`; its kernel is the common fixed subspace of the linear parts.
fn averaged_displacement(group: &AutomorphismGroup, n: usize) -> Matrix {
    let id = Matrix::identity(n);
    group.elements().iter().fold(Matrix::zeros(n, n), |acc, g| acc.add(&g.linear.sub(&id)))
}

/// Dimension of `{x : L_g x = x for all g}` from the summed displacement.
pub fn fixed_subspace_dim(group: &AutomorphismGroup, n: usize) -> usize {
    averaged_displacement(group, n).kernel().len()
}

/// The same dimension from the stacked system of all `L_g − I`.
pub fn fixed_subspace_dim_stacked(group: &AutomorphismGroup, n: usize) -> usize {
    let id = Matrix::identity(n);
    let rows: Vec<Vec<Scalar>> = group.elements().iter().flat_map(|g| g.linear.sub(&id).to_rows()).collect();
    if rows.is_empty() {
        return n;
    }
    Matrix::from_rows(rows).kernel().len()
}

pub fn fixed_point(poly: &VPolytope, group: &AutomorphismGroup) -> Result<FixedPointReport> {
    let point = poly.barycenter();
    let unique = fixed_subspace_dim(group, poly.dim()) == 0;
    let interior = contains(poly, &point)?.kind == Containment::RelativeInterior;
    Ok(FixedPointReport { point, unique, interior })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub entries: Matrix,
}

impl GramMatrix {
    pub fn identity(n: usize) -> Self {
        GramMatrix { entries: Matrix::identity(n) }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_identity()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.entries.is_symmetric() && self.entries.leading_minors().iter().all(Scalar::is_positive)
    }

    /// Floating basis change `R` with `RᵀR = M` (Cholesky), for display only.
    /// Returns `None` when the factor's residual exceeds `1e-12`.
    pub fn orthonormalizing_basis(&self) -> Option<Vec<Vec<f64>>> {
        let n = self.entries.nrows();
        let m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| self.entries[(i, j)].to_f64()).collect()).collect();
        let mut l = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
                if i == j {
                    let d = m[i][i] - s;
                    if d <= 0.0 {
                        return None;
                    }
                    l[i][j] = d.sqrt();
                } else {
                    l[i][j] = (m[i][j] - s) / l[j][j];
                }
            }
        }
        let scale = m.iter().flatten().fold(1.0f64, |a, x| a.max(x.abs()));
        for i in 0..n {
            for j in 0..n {
                let r: f64 = (0..n).map(|k| l[i][k] * l[j][k]).sum();
                if (r - m[i][j]).abs() > 1e-12 * scale {
                    return None;
                }
            }
        }
        // R = Lᵀ
        Some((0..n).map(|i| (0..n).map(|j| l[j][i]).collect()).collect())
    }
}

/// `(1/|G|) Σ L_gᵀ L_g` over the linear parts.
pub fn invariant_gram(group: &AutomorphismGroup, n: usize) -> GramMatrix {
    let sum = group
        .elements()
        .iter()
        .fold(Matrix::zeros(n, n), |acc, g| acc.add(&g.linear.transpose().mul(&g.linear)));
    let order = Scalar::from_int(group.order().max(1) as i64);
    GramMatrix { entries: sum.scale(&order.recip()) }
}

pub fn verify_m_orthogonal(group: &AutomorphismGroup, m: &GramMatrix) -> bool {
    group
        .elements()
        .iter()
        .all(|g| g.linear.transpose().mul(&m.entries).mul(&g.linear) == m.entries)
}

/// One orbit of the diagonal action on ordered distinguishable vertex pairs.
pub fn pair_transitive_distinguishable(group: &AutomorphismGroup, catalog: &DistinguishableCatalog) -> bool {
    let pairs = distinguishable_ordered_pairs(catalog);
    let Some(&(a, b)) = pairs.first() else { return false };
    let mut orbit: Vec<(usize, usize)> = group.vertex_permutations().iter().map(|p| (p[a], p[b])).collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit == pairs
}

/// A random invertible affine map with entries in `-3..=3` and translation in `-5..=5`.
pub fn random_invertible_affine<R: Rng>(dim: usize, rng: &mut R) -> AffineMap {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| Scalar::from_int(rng.random_range(-3..=3))).collect())
            .collect();
        let linear = Matrix::from_rows(rows);
        if linear.determinant().is_zero() {
            continue;
        }
        let t = (0..dim).map(|_| Scalar::from_int(rng.random_range(-5..=5))).collect();
        return AffineMap::new(linear, t).expect("square linear part");
    }
}

/// True when `phi` carries the permutation action of `group` on `poly` onto
/// that of `image_group` on `phi(poly)` exactly.
pub fn conjugate_action_matches(
    poly: &VPolytope,
    group: &AutomorphismGroup,
    phi: &AffineMap,
    image: &VPolytope,
    image_group: &AutomorphismGroup,
) -> bool {
    if group.order() != image_group.order() {
        return false;
    }
    let Some(rel) = poly.vertices().iter().map(|v| image.index_of(&phi.apply(v))).collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let rel_inv = invert_perm(&rel);
    let mut conj: Vec<Permutation> = group
        .vertex_permutations()
        .iter()
        .map(|p| compose_perm(&rel, &compose_perm(p, &rel_inv)))
        .collect();
    conj.sort();
    conj == image_group.vertex_permutations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguish::max_distinguishable;
    use crate::polytope::generate;
    use crate::scalar::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(spec: &str) -> VPolytope {
        generate(&spec.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (spec, order) in [("simplex(2)", 6), ("cube(2)", 8), ("box(1,2)", 8), ("polygon(6)", 12), ("cube(3)", 48), ("simplex(3)", 24)] {
            let p = poly(spec);
            let g = automorphism_group(&p).unwrap();
            assert_eq!(g.order(), order, "{spec}");
            assert_eq!(g.verify(&p), Ok(()), "{spec}");
            assert!(g.elements()[0].is_identity());
        }
    }

    #[test]
    fn rectangle_has_non_isometric_maps() {
        let rect = poly("box(1,2)");
        let g = automorphism_group(&rect).unwrap();
        assert!(g.elements().iter().any(|e| e.linear.transpose().mul(&e.linear) != Matrix::identity(2)));
        let m = invariant_gram(&g, 2);
        assert_eq!(m.entries, Matrix::diagonal(&[q(5, 2), q(5, 8)]));
        assert!(m.is_positive_definite());
        assert!(verify_m_orthogonal(&g, &m));
        assert!(!verify_m_orthogonal(&g, &GramMatrix::identity(2)));
        let r = m.orthonormalizing_basis().unwrap();
        assert!((r[0][0] - 2.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn permutation_groups_have_identity_gram() {
        for spec in ["cube(3)", "cross(3)", "cube(2)"] {
            let g = automorphism_group(&poly(spec)).unwrap();
            let m = invariant_gram(&g, poly(spec).dim());
            assert!(m.is_identity(), "{spec}");
            assert!(verify_m_orthogonal(&g, &GramMatrix::identity(m.entries.nrows())));
        }
    }

    #[test]
    fn transitivity() {
        for spec in ["simplex(3)", "polygon(6)", "cube(3)"] {
            let p = poly(spec);
            let g = automorphism_group(&p).unwrap();
            assert!(is_vertex_transitive(&g, &p).0, "{spec}");
        }
        let displaced = VPolytope::from_points(vec![
            Point::from_ints(&[2, 1]),
            Point::from_ints(&[-1, 1]),
            Point::from_ints(&[-1, -1]),
            Point::from_ints(&[1, -1]),
        ])
        .unwrap();
        // a trapezoid: one affine reflection swaps its parallel sides' ends
        let g = automorphism_group(&displaced).unwrap();
        assert_eq!(g.order(), 2);
        let (t, orbits) = is_vertex_transitive(&g, &displaced);
        assert!(!t);
        assert_eq!(orbits.orbits.len(), 2);
        let fp = fixed_point(&displaced, &g).unwrap();
        assert!(!fp.unique);
        assert!(fp.interior);

        let generic = poly("random(2,6,1)");
        let g = automorphism_group(&generic).unwrap();
        assert!(g.is_trivial());
        assert!(!is_vertex_transitive(&g, &generic).0);
        assert!(!fixed_point(&generic, &g).unwrap().unique);
        assert!(invariant_gram(&g, 2).is_identity());
    }

    #[test]
    fn fixed_points() {
        let sq = poly("cube(2)");
        let g = automorphism_group(&sq).unwrap();
        let fp = fixed_point(&sq, &g).unwrap();
        assert_eq!(fp, FixedPointReport { point: Point::from_ints(&[0, 0]), unique: true, interior: true });
        assert_eq!(fixed_subspace_dim_stacked(&g, 2), 0);

        let shifted = sq.transformed(&AffineMap::translation_by(vec![q(5, 1), q(5, 1)])).unwrap();
        let g = automorphism_group(&shifted).unwrap();
        let fp = fixed_point(&shifted, &g).unwrap();
        assert_eq!(fp.point, Point::from_ints(&[5, 5]));
        assert!(fp.unique && fp.interior);
        assert!(g.elements().iter().all(|e| e.apply(&fp.point) == fp.point));
    }

    #[test]
    fn pair_transitivity() {
        for (spec, expected) in [("simplex(2)", true), ("simplex(3)", true), ("cube(2)", false), ("cube(3)", false)] {
            let p = poly(spec);
            let g = automorphism_group(&p).unwrap();
            let cat = max_distinguishable(&p).unwrap().catalog;
            assert_eq!(pair_transitive_distinguishable(&g, &cat), expected, "{spec}");
        }
    }

    #[test]
    fn generators_generate() {
        for spec in ["cube(3)", "polygon(6)", "simplex(3)"] {
            let g = automorphism_group(&poly(spec)).unwrap();
            let gens = g.generators();
            let perms: Vec<&Permutation> = gens.iter().map(|&k| &g.vertex_permutations()[k]).collect();
            let n = g.vertex_permutations()[0].len();
            assert_eq!(generated_subgroup(&perms, n), g.vertex_permutations());
            assert!(gens.len() <= 3, "{spec}: {gens:?}");
        }
    }

    #[test]
    fn conjugation_stability() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for spec in ["polygon(6)", "cube(2)", "simplex(3)"] {
            let p = poly(spec);
            let g = automorphism_group(&p).unwrap();
            for _ in 0..3 {
                let phi = random_invertible_affine(p.dim(), &mut rng);
                let image = p.transformed(&phi).unwrap();
                let ig = automorphism_group(&image).unwrap();
                assert!(conjugate_action_matches(&p, &g, &phi, &image, &ig), "{spec}");
            }
        }
    }

    #[test]
    fn degenerate_input() {
        let flat = VPolytope::from_points(vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]).unwrap();
        assert_eq!(automorphism_group(&flat), Err(Error::NotFullDimensional));
    }
}
