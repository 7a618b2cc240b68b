//! Property tests for the metric and hyperspace invariants.

use ballspace::graph::catalog;
use ballspace::hausdorff::{hausdorff_intervals, hausdorff_pl};
use ballspace::length::FLOAT_TOL;
use ballspace::oracle::EpsilonNet;
use ballspace::{decide_point, GraphPoint, Length, MetricGraph, ModelPoint, ModelSpace, Scalar, Segment};
use proptest::prelude::*;
use std::sync::OnceLock;

fn graphs() -> &'static [MetricGraph] {
    static GRAPHS: OnceLock<Vec<MetricGraph>> = OnceLock::new();
    GRAPHS.get_or_init(|| {
        vec![
            catalog::diamond(),
            catalog::bent_line(),
            catalog::diamond_chain(),
            catalog::square(),
        ]
    })
}

fn graph_index() -> impl Strategy<Value = usize> {
    0..graphs().len()
}

/// A point on `g` at an offset that is a multiple of `1/24`, so both dyadic
/// and triadic breakpoints occur.
fn point_on(g: &MetricGraph, seg_pick: usize, num: i64) -> GraphPoint {
    let segs: Vec<Segment> = g.segments().collect();
    let seg = segs[seg_pick % segs.len()];
    let t = match g.segment_len(seg) {
        Some(len) => {
            let steps = (len * Scalar::from_int(24)).to_f64() as i64;
            Scalar::ratio(num.rem_euclid(steps + 1), 24)
        }
        None => Scalar::ratio(num.rem_euclid(24 * 6), 24),
    };
    g.point(seg, t).unwrap()
}

fn radius() -> impl Strategy<Value = Scalar> {
    (0i64..=24 * 6).prop_map(|n| Scalar::ratio(n, 24))
}

fn pt() -> impl Strategy<Value = (usize, i64)> {
    (0usize..16, 0i64..10_000)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_distance_is_a_metric(gi in graph_index(), a in pt(), b in pt(), c in pt()) {
        let g = &graphs()[gi];
        let (x, y, z) = (point_on(g, a.0, a.1), point_on(g, b.0, b.1), point_on(g, c.0, c.1));
        let dxy = g.distance(&x, &y).unwrap();
        prop_assert_eq!(&dxy, &g.distance(&y, &x).unwrap());
        prop_assert_eq!(dxy.is_zero(), x == y);
        prop_assert!(g.distance(&x, &z).unwrap() <= &dxy + &g.distance(&y, &z).unwrap());
    }

    #[test]
    fn balls_are_exactly_the_sublevel_sets(gi in graph_index(), a in pt(), b in pt(), r in radius()) {
        let g = &graphs()[gi];
        let (x, p) = (point_on(g, a.0, a.1), point_on(g, b.0, b.1));
        let ball = g.ball(&x, &r).unwrap();
        prop_assert_eq!(ball.contains(&p).unwrap(), g.distance(&x, &p).unwrap() <= r);
    }

    #[test]
    fn ball_hausdorff_is_a_lipschitz_pseudometric(
        gi in graph_index(), a in pt(), b in pt(), c in pt(), t in radius(), s in radius(), u in radius()
    ) {
        let g = &graphs()[gi];
        let (x, y, z) = (point_on(g, a.0, a.1), point_on(g, b.0, b.1), point_on(g, c.0, c.1));
        let (bx, by, bz) = (g.ball(&x, &t).unwrap(), g.ball(&y, &s).unwrap(), g.ball(&z, &u).unwrap());
        let dxy = hausdorff_pl(&bx, &by).unwrap();
        prop_assert_eq!(&dxy, &hausdorff_pl(&by, &bx).unwrap());
        prop_assert!(hausdorff_pl(&bx, &bx).unwrap().is_zero());
        prop_assert!(hausdorff_pl(&bx, &bz).unwrap() <= &dxy + &hausdorff_pl(&by, &bz).unwrap());
        prop_assert!(dxy <= g.distance(&x, &y).unwrap() + (&t - &s).abs());
    }

    #[test]
    fn shooting_centers_give_taxicab_distances(
        a in prop::sample::select(vec!["E", "W", "re", "rw"]), na in 0i64..200,
        b in prop::sample::select(vec!["E", "W", "re", "rw"]), nb in 0i64..200,
        t in radius(), s in radius()
    ) {
        let g = catalog::diamond();
        let at = |name: &str, n: i64| match name {
            "E" | "W" => g.vertex(name).unwrap(),
            ray => g.ray_point(ray, Scalar::ratio(n, 24)).unwrap(),
        };
        let (x, y) = (at(a, na), at(b, nb));
        prop_assume!(decide_point(&g, &x).unwrap().holds() && decide_point(&g, &y).unwrap().holds());
        let dh = hausdorff_pl(&g.ball(&x, &t).unwrap(), &g.ball(&y, &s).unwrap()).unwrap();
        prop_assert_eq!(dh, g.distance(&x, &y).unwrap() + (&t - &s).abs());
    }

    #[test]
    fn interval_hausdorff_closed_form(x in -200i64..200, y in -200i64..200, t in 0i64..100, s in 0i64..100) {
        let f = |n: i64| Scalar::ratio(n, 8);
        let d = hausdorff_intervals(&f(x - t), &f(x + t), &f(y - s), &f(y + s)).unwrap();
        prop_assert_eq!(d, f((x - y).abs() + (t - s).abs()));
    }

    #[test]
    fn scalar_text_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..10_000) {
        let x = Scalar::ratio(n, d);
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x.clone());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), x);
    }

    #[test]
    fn model_distances_are_metrics(
        which in 0usize..4,
        c in prop::collection::vec(-5.0f64..5.0, 6),
    ) {
        let (m, pts) = match which {
            0 => (ModelSpace::Euclidean { dim: 2 }, [0, 2, 4].map(|i| ModelPoint::Coords(vec![c[i], c[i + 1]]))),
            1 => (ModelSpace::Hyperbolic2, [0, 2, 4].map(|i| ModelPoint::hyperbolic(c[i], c[i + 1]))),
            2 => (ModelSpace::HalfPlane, [0, 2, 4].map(|i| ModelPoint::Coords(vec![c[i], c[i + 1].abs()]))),
            _ => (ModelSpace::Circle { radius: 1.5 }, [0, 2, 4].map(|i| ModelPoint::angle(c[i]))),
        };
        let d = |a: &ModelPoint, b: &ModelPoint| m.distance(a, b).unwrap().to_f64();
        let (x, y, z) = (&pts[0], &pts[1], &pts[2]);
        prop_assert!((d(x, y) - d(y, x)).abs() <= FLOAT_TOL);
        prop_assert!(d(x, x) <= FLOAT_TOL);
        prop_assert!(d(x, z) <= d(x, y) + d(y, z) + FLOAT_TOL);
    }

    #[test]
    fn model_witnesses_satisfy_both_equations(
        hyperbolic in any::<bool>(),
        c in prop::collection::vec(-4.0f64..4.0, 4),
        r in 0.01f64..6.0,
    ) {
        let (m, x, y) = if hyperbolic {
            (ModelSpace::Hyperbolic2, ModelPoint::hyperbolic(c[0], c[1]), ModelPoint::hyperbolic(c[2], c[3]))
        } else {
            (ModelSpace::Euclidean { dim: 2 }, ModelPoint::Coords(vec![c[0], c[1]]), ModelPoint::Coords(vec![c[2], c[3]]))
        };
        prop_assume!(m.distance(&x, &y).unwrap().to_f64() > 1e-6);
        let r = Length::Approx(r);
        let p = m.shooting_witness(&x, &y, &r).unwrap().expect("witness exists");
        let (a, b) = m.witness_residuals(&x, &y, &r, &p);
        prop_assert!(a <= FLOAT_TOL && b <= FLOAT_TOL, "residuals {} {}", a, b);
        prop_assert!(m.shooting_gap(&x, &y, &r).unwrap().to_f64().abs() <= FLOAT_TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn net_distances_are_within_eps(gi in graph_index(), a in pt(), b in pt()) {
        let g = &graphs()[gi];
        let eps = Scalar::ratio(1, 8);
        let net = EpsilonNet::build(g, &eps, &Scalar::from_int(8)).unwrap();
        let (x, y) = (point_on(g, a.0, a.1), point_on(g, b.0, b.1));
        let exact = g.distance(&x, &y).unwrap();
        let approx = net.distance(&x, &y).unwrap();
        prop_assert!((&approx - &exact).abs() <= eps, "net {} vs exact {}", approx, exact);
    }
}
