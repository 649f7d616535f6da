use proptest::prelude::*;

use statespace::distinguish::{decompose, distinguishable, distinguishable_vertices, max_distinguishable};
use statespace::geometry::{affine_map_from_frame, affine_rank, AffineMap, Point};
use statespace::linalg::Matrix;
use statespace::linprog::{solve, solve_with_stats, Constraint, LinearProgram, LpOutcome, Relation};
use statespace::polytope::{contains, extreme_points, supporting_hyperplane, Containment, VPolytope};
use statespace::scalar::{q, Scalar};

fn small() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn point(dim: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(small(), dim).prop_map(Point::new)
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Eq), Just(Relation::Ge), Just(Relation::Le)]
}

fn constraint(nv: usize) -> impl Strategy<Value = Constraint> {
    (prop::collection::vec(-3i64..=3, nv), relation(), -4i64..=4).prop_map(|(c, r, b)| {
        Constraint::new(c.into_iter().map(Scalar::from_int).collect(), r, Scalar::from_int(b))
    })
}

fn lp() -> impl Strategy<Value = LinearProgram> {
    (1usize..=3)
        .prop_flat_map(|nv| {
            (
                Just(nv),
                prop::collection::vec(constraint(nv), 1..=5),
                prop::collection::vec(-3i64..=3, nv),
                any::<bool>(),
            )
        })
        .prop_map(|(nv, rows, obj, max)| {
            let base = LinearProgram::with_constraints(nv, rows);
            let c = obj.into_iter().map(Scalar::from_int).collect();
            if max {
                base.maximize(c)
            } else {
                base.minimize(c)
            }
        })
}

/// Bounding box rows keep the LP bounded so the duality check always applies.
fn boxed(mut lp: LinearProgram) -> LinearProgram {
    for i in 0..lp.num_vars {
        let mut e = vec![Scalar::zero(); lp.num_vars];
        e[i] = Scalar::one();
        lp.push(Constraint::le(e.clone(), Scalar::from_int(10)));
        lp.push(Constraint::ge(e, Scalar::from_int(-10)));
    }
    lp
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lp_certificates_are_sound(lp in lp()) {
        match solve(&lp).unwrap() {
            LpOutcome::Feasible { assignment, objective_value, dual } => {
                prop_assert!(lp.is_feasible_assignment(&assignment));
                let value = objective_value.unwrap();
                prop_assert!(lp.verify_dual(&dual.unwrap(), &value));
            }
            LpOutcome::Infeasible { farkas_certificate } => {
                prop_assert!(lp.verify_farkas(&farkas_certificate));
            }
            LpOutcome::Unbounded { assignment, ray } => {
                prop_assert!(lp.is_feasible_assignment(&assignment));
                prop_assert!(lp.verify_ray(&ray));
            }
        }
    }

    #[test]
    fn bounded_lps_satisfy_strong_duality(lp in lp().prop_map(boxed)) {
        match solve(&lp).unwrap() {
            LpOutcome::Feasible { assignment, objective_value, dual } => {
                let obj = lp.objective.as_ref().unwrap();
                let value = objective_value.unwrap();
                let attained: Scalar = obj.coeffs.iter().zip(&assignment).map(|(c, x)| c * x).sum();
                prop_assert_eq!(&attained, &value);
                prop_assert!(lp.verify_dual(&dual.unwrap(), &value));
            }
            LpOutcome::Infeasible { farkas_certificate } => prop_assert!(lp.verify_farkas(&farkas_certificate)),
            LpOutcome::Unbounded { .. } => prop_assert!(false, "boxed LP reported unbounded"),
        }
    }

    #[test]
    fn compose_with_inverse_is_identity(
        entries in prop::collection::vec(small(), 9),
        t in prop::collection::vec(small(), 3),
    ) {
        let m = Matrix::from_rows(entries.chunks(3).map(<[Scalar]>::to_vec).collect());
        prop_assume!(!m.determinant().is_zero());
        let f = AffineMap::new(m, t).unwrap();
        let inv = f.invert().unwrap();
        prop_assert!(inv.compose(&f).unwrap().is_identity());
        prop_assert!(f.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn frame_maps_reproduce_images(frame in prop::collection::vec(point(2), 3), images in prop::collection::vec(point(2), 3)) {
        prop_assume!(affine_rank(&frame).unwrap() == 2);
        let f = affine_map_from_frame(&frame, &images).unwrap();
        for (p, img) in frame.iter().zip(&images) {
            prop_assert_eq!(&f.apply(p), img);
        }
    }

    #[test]
    fn affine_rank_invariances(mut pts in prop::collection::vec(point(3), 1..6), shift in prop::collection::vec(small(), 3)) {
        let r = affine_rank(&pts).unwrap();
        let moved: Vec<Point> = pts.iter().map(|p| p.translate(&shift)).collect();
        prop_assert_eq!(affine_rank(&moved).unwrap(), r);
        pts.reverse();
        prop_assert_eq!(affine_rank(&pts).unwrap(), r);
    }

    #[test]
    fn hull_is_idempotent_and_certified(pts in prop::collection::vec(point(2), 3..9)) {
        let ext = extreme_points(&pts).unwrap();
        prop_assert_eq!(&extreme_points(&ext).unwrap(), &ext);
        for p in &pts {
            if !ext.contains(p) {
                let w = statespace::polytope::convex_weights(&ext, p).unwrap().unwrap();
                let refs: Vec<&Point> = ext.iter().collect();
                prop_assert_eq!(&Point::combination(&refs, &w), p);
            }
        }
    }

    #[test]
    fn positive_combinations_are_interior(pts in prop::collection::vec(point(2), 3..8), seed in prop::collection::vec(1i64..=9, 8)) {
        let poly = VPolytope::from_points(pts).unwrap();
        prop_assume!(poly.is_full_dimensional());
        let n = poly.vertex_count();
        let total: i64 = seed[..n].iter().sum();
        let w: Vec<Scalar> = seed[..n].iter().map(|&x| Scalar::ratio(x, total)).collect();
        let refs: Vec<&Point> = poly.vertices().iter().collect();
        let p = Point::combination(&refs, &w);
        prop_assert_eq!(contains(&poly, &p).unwrap().kind, Containment::RelativeInterior);
    }

    #[test]
    fn supporting_hyperplanes_hold(pts in prop::collection::vec(point(2), 3..8), i in 0usize..8) {
        let poly = VPolytope::from_points(pts).unwrap();
        let v = &poly.vertices()[i % poly.vertex_count()];
        if let Some(h) = supporting_hyperplane(&poly, std::slice::from_ref(v), &[]).unwrap() {
            prop_assert!(h.contains(v));
            let signs: Vec<i32> = poly.vertices().iter().map(|q| h.signed_value(q).signum()).collect();
            prop_assert!(signs.iter().all(|&s| s <= 0) || signs.iter().all(|&s| s >= 0));
        }
    }

    #[test]
    fn subsets_of_distinguishable_sets_are_distinguishable(pts in prop::collection::vec(point(2), 3..7)) {
        let poly = VPolytope::from_points(pts).unwrap();
        prop_assume!(poly.is_full_dimensional());
        let m = max_distinguishable(&poly).unwrap();
        for s in m.catalog.iter().filter(|s| s.len() >= 2) {
            for omit in 0..s.len() {
                let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &x)| x).collect();
                prop_assert!(distinguishable_vertices(&poly, &sub).unwrap().is_some());
            }
        }
    }

    #[test]
    fn decompositions_verify(pts in prop::collection::vec(point(2), 3..7), a in 0usize..7, b in 0usize..7) {
        let poly = VPolytope::from_points(pts).unwrap();
        prop_assume!(poly.is_full_dimensional());
        let n = poly.vertex_count();
        let target = Point::combination(&[&poly.vertices()[a % n], &poly.vertices()[b % n]], &[q(1, 2), q(1, 2)]);
        if let Some(d) = decompose(&poly, &target).unwrap() {
            prop_assert!(d.verify(&poly, &target).unwrap());
        }
    }

    #[test]
    fn scalar_text_roundtrip(x in small()) {
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }
}

#[test]
fn bland_rule_terminates_on_beale_cycling_example() {
    // minimize -3/4 x4 + 20 x5 - 1/2 x6 + 6 x7
    let row = |c: [Scalar; 7], b: Scalar| Constraint::eq(c.to_vec(), b);
    let z = Scalar::zero;
    let mut lp = LinearProgram::new(7);
    lp.push(row([Scalar::one(), z(), z(), q(1, 4), q(-8, 1), q(-1, 1), q(9, 1)], z()));
    lp.push(row([z(), Scalar::one(), z(), q(1, 2), q(-12, 1), q(-1, 2), q(3, 1)], z()));
    lp.push(row([z(), z(), Scalar::one(), z(), z(), Scalar::one(), z()], Scalar::one()));
    for i in 0..7 {
        let mut e = vec![z(); 7];
        e[i] = Scalar::one();
        lp.push(Constraint::ge(e, z()));
    }
    let lp = lp.minimize(vec![z(), z(), z(), q(-3, 4), q(20, 1), q(-1, 2), q(6, 1)]);
    let (outcome, stats) = solve_with_stats(&lp).unwrap();
    assert!(stats.pivots() < 200, "{} pivots", stats.pivots());
    match outcome {
        LpOutcome::Feasible { assignment, objective_value, dual } => {
            assert_eq!(objective_value, Some(q(-5, 4)));
            assert!(lp.is_feasible_assignment(&assignment));
            assert!(lp.verify_dual(&dual.unwrap(), &q(-5, 4)));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn distinguishing_a_point_with_itself_is_rejected() {
    let sq = VPolytope::from_points(vec![
        Point::from_ints(&[0, 0]),
        Point::from_ints(&[1, 0]),
        Point::from_ints(&[0, 1]),
        Point::from_ints(&[1, 1]),
    ])
    .unwrap();
    let p = Point::from_ints(&[0, 0]);
    assert!(distinguishable(&sq, &[p.clone(), p]).is_err());
}
