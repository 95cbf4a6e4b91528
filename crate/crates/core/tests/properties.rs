//! Randomized invariants over exact arithmetic.

use std::collections::HashMap;

use miquel_core::areal::{
    circle_through, distance_squared, line_through, on_circle, second_intersection,
};
use miquel_core::cartesian::{build_cartesian_figure, circle_through_cartesian};
use miquel_core::sampling::Sampler;
use miquel_core::singular::{build_figure, verify_claims};
use miquel_core::{ArealPoint, CartPoint, ExactRational, MultiPoly, Scalar, SingularConfig};
use proptest::prelude::*;

fn rational(limit: i64) -> impl Strategy<Value = ExactRational> {
    (-limit..=limit, 1i64..=9).prop_map(|(n, d)| ExactRational::new(n, d).expect("d > 0"))
}

fn areal_point() -> impl Strategy<Value = ArealPoint<ExactRational>> {
    (rational(6), rational(6), rational(6)).prop_map(|(x, y, z)| ArealPoint::new(x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn similar_triangles_give_the_same_configuration(index in 0u64..10_000, t in 1i64..=12) {
        let cfg = Sampler::for_sample(99, index).singular_config();
        let factor = ExactRational::from_int(t);
        let scaled = SingularConfig::new(cfg.metric.scaled(&factor), cfg.n.clone()).unwrap();
        let (a, b) = (build_figure(&cfg).unwrap(), build_figure(&scaled).unwrap());
        prop_assert!(a.s.same_point(&b.s));
        prop_assert!(a.center_f.same_point(&b.center_f));
        prop_assert!(verify_claims(&b).pass);
        let d = |f: &miquel_core::SingularFigure<ExactRational>| {
            distance_squared(&f.config.metric, &f.center_d, &f.center_e).unwrap()
        };
        prop_assert_eq!(d(&b), d(&a) * &factor);
    }

    #[test]
    fn fitted_areal_circle_passes_through_its_points(
        index in 0u64..10_000,
        p1 in areal_point(), p2 in areal_point(), p3 in areal_point(),
    ) {
        let metric = Sampler::for_sample(3, index).metric();
        if let Ok(c) = circle_through(&metric, &p1, &p2, &p3) {
            for p in [&p1, &p2, &p3] {
                prop_assert!(on_circle(&c, p));
            }
        }
    }

    #[test]
    fn second_intersection_is_an_involution(index in 0u64..10_000, dir in areal_point()) {
        let fig = build_figure(&Sampler::for_sample(11, index).singular_config()).unwrap();
        // A chord of circle BPQ through B.
        let b = ArealPoint::vertex_b();
        let Ok(line) = line_through(&b, &dir) else { return Ok(()) };
        let other = second_intersection(&fig.circle_bpq, &line, &b).unwrap();
        prop_assert!(on_circle(&fig.circle_bpq, &other));
        let back = second_intersection(&fig.circle_bpq, &line, &other).unwrap();
        prop_assert!(back.same_point(&b) || other.same_point(&b));
    }

    #[test]
    fn fitted_cartesian_circle_passes_through_its_points(
        pts in proptest::collection::vec((rational(8), rational(8)), 3),
    ) {
        let p: Vec<_> = pts.into_iter().map(|(x, y)| CartPoint::new(x, y)).collect();
        if let Ok(c) = circle_through_cartesian(&p[0], &p[1], &p[2]) {
            prop_assert!(p.iter().all(|q| c.contains(q)));
        }
    }

    #[test]
    fn miquel_point_is_fixed_by_the_similarity(index in 0u64..10_000) {
        let fig = build_cartesian_figure(&Sampler::for_sample(5, index).cartesian_config()).unwrap();
        prop_assert_eq!(fig.similarity.apply(&fig.miquel_point), fig.miquel_point.clone());
        let inverse = fig.similarity.compose(&fig.similarity.inverse());
        prop_assert_eq!(inverse.apply(&fig.vertices[1]), fig.vertices[1].clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        coeffs in proptest::collection::vec(-5i64..=5, 6),
        x in rational(5), y in rational(5),
    ) {
        let ring = MultiPoly::ring(&["x", "y"]);
        let (px, py) = (MultiPoly::var(&ring, "x"), MultiPoly::var(&ring, "y"));
        let c = |i: usize| MultiPoly::from_int(coeffs[i]);
        let f = &(&c(0) * &(&px * &py)) + &(&c(1) * &px) + c(2);
        let g = &(&c(3) * &(&py * &py)) - &(&c(4) * &px) + c(5);
        let at: HashMap<String, ExactRational> =
            [("x".to_string(), x), ("y".to_string(), y)].into_iter().collect();
        let (fv, gv) = (f.evaluate(&at).unwrap(), g.evaluate(&at).unwrap());
        prop_assert_eq!((&f * &g).evaluate(&at).unwrap(), fv.clone() * &gv);
        prop_assert_eq!((&f + &g).evaluate(&at).unwrap(), fv + &gv);
    }
}
