//! Worked examples for each operation, with independent cross-checks for
//! every value that is derived rather than quoted.

use std::collections::HashMap;

use ballspace::constructors::{
    product_hausdorff_infty, FamilyStep, Norm, PerturbedFamily, ProductSpace, QuotientSpace, Split,
};
use ballspace::graph::{catalog, Automorphism};
use ballspace::hausdorff::{hausdorff_intervals, hausdorff_pl};
use ballspace::length::FLOAT_TOL;
use ballspace::oracle::EpsilonNet;
use ballspace::sample::Sampler;
use ballspace::shooting::FailReason;
use ballspace::sigma::{f_injectivity_check, taxicab_deviation};
use ballspace::{
    decide_point, Ball, Error, GraphPoint, Length, MetricGraph, ModelPoint, ModelSpace, Point, Scalar, ShootingVerdict,
    Space,
};
use rand::Rng;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn names(pairs: &[(&str, &str)]) -> HashMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn diamond_swap(g: &MetricGraph) -> Automorphism {
    Automorphism::from_names(
        g,
        &names(&[("E", "W"), ("W", "E")]),
        &names(&[("re", "rw"), ("rw", "re")]),
        &HashMap::new(),
    )
    .unwrap()
}

/// `sup_{a in I} inf_{b in J} |a - b|` and back, on a grid of step `1/k`.
fn grid_interval_hausdorff(i: (i64, i64), j: (i64, i64), k: i64) -> Scalar {
    let grid = |(lo, hi): (i64, i64)| (lo * k..=hi * k).collect::<Vec<_>>();
    let (a, b) = (grid(i), grid(j));
    let directed = |from: &[i64], to: &[i64]| {
        from.iter()
            .map(|x| to.iter().map(|y| (x - y).abs()).min().unwrap())
            .max()
            .unwrap()
    };
    Scalar::ratio(directed(&a, &b).max(directed(&b, &a)), k)
}

#[test]
fn interval_hausdorff_values() {
    let d = hausdorff_intervals(&int(0), &int(2), &int(1), &int(5)).unwrap();
    assert_eq!(d, int(3));
    assert_eq!(grid_interval_hausdorff((0, 2), (1, 5), 64), d);
    assert_eq!(hausdorff_intervals(&int(1), &int(4), &int(1), &int(4)).unwrap(), int(0));
    assert!(hausdorff_intervals(&int(2), &int(1), &int(0), &int(1)).is_err());
}

#[test]
fn line_balls_follow_the_interval_formula() {
    let line = Space::Model(ModelSpace::Line);
    let b = |x: i64, r: i64| Ball::new(ModelPoint::Line(int(x)), Length::Exact(int(r)));
    assert_eq!(line.hausdorff_balls(&b(0, 1), &b(2, 3)).unwrap(), Length::Exact(int(4)));
    assert_eq!(grid_interval_hausdorff((-1, 1), (-1, 5), 16), int(4));
}

#[test]
fn diamond_ball_membership_matches_distance() {
    let g = catalog::diamond();
    let x0 = g.edge_point("WN", int(1)).unwrap();
    let p = g.ray_point("re", int(3)).unwrap();
    let ball = g.ball(&x0, &int(5)).unwrap();
    assert!(!ball.contains(&p).unwrap());
    assert_eq!(g.distance(&x0, &p).unwrap(), int(6));
    let net = EpsilonNet::build(&g, &q(1, 8), &int(12)).unwrap();
    assert_eq!(net.distance(&x0, &p).unwrap(), int(6));
    assert_eq!(
        g.distance(&g.vertex("S").unwrap(), &g.ray_point("rw", int(4)).unwrap())
            .unwrap(),
        int(6)
    );
}

#[test]
fn diamond_gap_at_the_north_vertex() {
    let g = catalog::diamond();
    let (n, s) = (g.vertex("N").unwrap(), g.vertex("S").unwrap());
    let gap = ballspace::shooting_gap(&g, &n, &s, &int(3)).unwrap();
    assert_eq!(gap, int(3));
    let net = EpsilonNet::build(&g, &q(1, 32), &int(12)).unwrap();
    let est = net.gap(&n, &s, &int(3)).unwrap();
    assert!(est.agrees_with(&gap), "oracle {} vs exact {gap}", est.value);
}

#[test]
fn line_gap_is_zero() {
    let g = catalog::line();
    let x = catalog::line_point(&g, &int(0));
    let y = catalog::line_point(&g, &int(1));
    assert_eq!(ballspace::shooting_gap(&g, &x, &y, &int(5)).unwrap(), int(0));
}

#[test]
fn compact_graphs_fail_with_empty_spheres() {
    let g = catalog::segment(int(1));
    match decide_point(&g, &g.vertex("u").unwrap()).unwrap() {
        ShootingVerdict::Fails(w) => assert_eq!(w.reason, FailReason::EmptySphere),
        ShootingVerdict::Holds => panic!("a compact graph cannot have the shooting property"),
    }
    let square = catalog::square();
    let report = ballspace::decide_space(&square, &square.default_probe()).unwrap();
    assert!(report.holding_points().is_empty());
}

#[test]
fn diamond_taxicab_deviation_from_the_figure() {
    let g = catalog::diamond();
    let space = Space::Graph(g.clone());
    let x0 = g.edge_point("WN", int(1)).unwrap();
    let s = g.vertex("S").unwrap();
    let sample = ballspace::sample::Sample {
        x: Point::Graph(x0.clone()),
        t: Length::Exact(int(5)),
        y: Point::Graph(s.clone()),
        s: Length::Exact(int(0)),
    };
    let report = taxicab_deviation(&space, &[sample]).unwrap();
    assert_eq!(report.rows[0].hausdorff, Length::Exact(int(6)));
    assert_eq!(report.rows[0].taxicab, Length::Exact(int(8)));
    assert_eq!(*report.max_deviation(), Length::Exact(int(2)));
    // d_H(B̄_5(x0), {S}) is the farthest point of the ball from S.
    let far = g
        .sphere(&x0, &int(5))
        .unwrap()
        .iter()
        .map(|p| g.distance(&s, p).unwrap())
        .max()
        .unwrap();
    assert_eq!(far, int(6));
}

#[test]
fn injectivity_collisions() {
    let bent = catalog::bent_line();
    let space = Space::Graph(bent.clone());
    let balls = [
        Ball::new(bent.vertex("P").unwrap(), int(2)),
        Ball::new(bent.vertex("Q").unwrap(), int(2)),
    ];
    assert_eq!(f_injectivity_check(&space, &balls).unwrap(), vec![(0, 1)]);

    let line = Space::Model(ModelSpace::Line);
    let mut sampler = Sampler::new(3);
    let balls: Vec<Ball> = (0..40)
        .map(|_| Ball {
            center: sampler.point(&line),
            radius: sampler.radius(&line),
        })
        .collect();
    let distinct: Vec<Ball> = balls
        .iter()
        .enumerate()
        .filter(|(i, b)| !balls[..*i].contains(b))
        .map(|(_, b)| b.clone())
        .collect();
    assert!(f_injectivity_check(&line, &distinct).unwrap().is_empty());
}

fn line_pt(x: f64) -> Point {
    Point::Model(ModelPoint::Line(Scalar::from_f64(x).unwrap()))
}

fn line_coords(p: &Point) -> (f64, f64) {
    let (a, b) = p.as_pair().unwrap();
    let c = |p: &Point| match p.as_model().unwrap() {
        ModelPoint::Line(x) => x.to_f64(),
        other => panic!("not a line point: {other:?}"),
    };
    (c(a), c(b))
}

#[test]
fn l2_product_witnesses() {
    let ll = ProductSpace::new(Space::Model(ModelSpace::Line), Space::Model(ModelSpace::Line), Norm::L2);
    let origin = Point::pair(line_pt(0.0), line_pt(0.0));

    let w = ll
        .shooting_witness(
            &origin,
            &Point::pair(line_pt(1.0), line_pt(1.0)),
            2f64.sqrt(),
            Split::Equal,
        )
        .unwrap();
    assert!(w.within(FLOAT_TOL));
    let (p, qq) = line_coords(w.point.as_ref().unwrap());
    assert!((p + 1.0).abs() < 1e-9 && (qq + 1.0).abs() < 1e-9);

    let a = Point::pair(line_pt(3.0), line_pt(4.0));
    let w = ll.shooting_witness(&origin, &a, 5.0, Split::Proportional).unwrap();
    assert!(w.within(FLOAT_TOL));
    let pt = w.point.unwrap();
    let (p, qq) = line_coords(&pt);
    assert!((p + 3.0).abs() < 1e-9 && (qq + 4.0).abs() < 1e-9);
    assert!((ll.distance(&origin, &pt).unwrap().to_f64() - 5.0).abs() < 1e-9);
    assert!((ll.distance(&a, &pt).unwrap().to_f64() - 10.0).abs() < 1e-9);

    let w = ll
        .shooting_witness(
            &origin,
            &Point::pair(line_pt(1.0), line_pt(0.0)),
            2.0,
            Split::Proportional,
        )
        .unwrap();
    assert!(w.within(FLOAT_TOL));
    let (p, qq) = line_coords(w.point.as_ref().unwrap());
    assert!((p + 2.0).abs() < 1e-9 && qq.abs() < 1e-9);

    // The equal split misses on unequal component distances.
    let w = ll.shooting_witness(&origin, &a, 5.0, Split::Equal).unwrap();
    assert!(!w.within(FLOAT_TOL));
}

#[test]
fn linf_product_of_lines_matches_the_closed_form() {
    let ll = ProductSpace::new(
        Space::Model(ModelSpace::Line),
        Space::Model(ModelSpace::Line),
        Norm::Linf,
    );
    let mut rng = Sampler::new(11);
    for _ in 0..100 {
        let mut r = || int(rng.rng().gen_range(-20..20));
        let (x, y, a, b) = (r(), r(), r(), r());
        let (t, s) = (r().abs(), r().abs());
        let pt = |u: &Scalar, v: &Scalar| {
            Point::pair(
                Point::Model(ModelPoint::Line(u.clone())),
                Point::Model(ModelPoint::Line(v.clone())),
            )
        };
        let b1 = Ball::new(pt(&x, &y), Length::Exact(t.clone()));
        let b2 = Ball::new(pt(&a, &b), Length::Exact(s.clone()));
        let got = product_hausdorff_infty(&ll, &b1, &b2).unwrap();
        let dts = (&t - &s).abs();
        let expected = Scalar::max_of(&((&x - &a).abs() + &dts), &((&y - &b).abs() + &dts)).clone();
        assert_eq!(got, Length::Exact(expected));
    }
    let equal = Ball::new(Point::pair(line_pt(1.0), line_pt(2.0)), int(3));
    assert_eq!(product_hausdorff_infty(&ll, &equal, &equal).unwrap(), Length::zero());
    let l2 = ProductSpace::new(Space::Model(ModelSpace::Line), Space::Model(ModelSpace::Line), Norm::L2);
    assert!(product_hausdorff_infty(&l2, &equal, &equal).is_err());
}

#[test]
fn orbit_distances_on_the_mirrored_diamond() {
    let g = catalog::diamond();
    let swap = diamond_swap(&g);
    let quotient = QuotientSpace::new(g.clone(), vec![Automorphism::identity(&g), swap.clone()]).unwrap();
    let n = g.vertex("N").unwrap();
    assert_eq!(quotient.orbit_distance(&n, &n).unwrap(), int(0));

    let (a, b) = (g.ray_point("rw", int(1)).unwrap(), g.ray_point("re", int(2)).unwrap());
    let direct = g.distance(&a, &b).unwrap();
    let mirrored = g.distance(&a, &swap.apply(&g, &b)).unwrap();
    assert_eq!((direct.clone(), mirrored.clone()), (int(7), int(1)));
    assert_eq!(
        quotient.orbit_distance(&a, &b).unwrap(),
        Scalar::min_of(&direct, &mirrored).clone()
    );

    let trivial = QuotientSpace::trivial(g.clone());
    let space = Space::Graph(g.clone());
    let mut sampler = Sampler::new(5);
    for _ in 0..50 {
        let (x, y) = (sampler.graph_point(&g), sampler.graph_point(&g));
        assert_eq!(
            trivial.orbit_distance(&x, &y).unwrap(),
            space
                .distance(&Point::Graph(x), &Point::Graph(y))
                .unwrap()
                .as_exact()
                .unwrap()
                .clone()
        );
    }
}

#[test]
fn quotient_of_the_line_by_negation() {
    let g = catalog::line();
    let neg = Automorphism::from_names(
        &g,
        &HashMap::new(),
        &names(&[("pos", "neg"), ("neg", "pos")]),
        &HashMap::new(),
    )
    .unwrap();
    let quotient = QuotientSpace::new(g.clone(), vec![Automorphism::identity(&g), neg]).unwrap();
    let mut sampler = Sampler::new(9);
    let mut samples = Vec::new();
    let mut expected = Vec::new();
    for _ in 0..100 {
        let mut coord = || q(sampler.rng().gen_range(-40..=40), 4);
        let (x, y) = (coord(), coord());
        let (t, s) = (coord().abs(), coord().abs());
        let orbit = Scalar::min_of(&(&x - &y).abs(), &(&x + &y).abs()).clone();
        expected.push(orbit + (&t - &s).abs());
        samples.push((catalog::line_point(&g, &x), t, catalog::line_point(&g, &y), s));
    }
    let report = quotient.sigma_check(&samples).unwrap();
    assert!(report.max_deviation.is_zero());
    for (row, e) in report.rows.iter().zip(&expected) {
        assert_eq!(&row.taxicab, e);
        assert_eq!(&row.hausdorff, e);
    }
}

#[test]
fn quotient_check_requires_shooting_centers() {
    // Every point of the bent line fails the shooting property, so the
    // theorem's hypothesis is never met there.
    let g = catalog::bent_line();
    let trivial = QuotientSpace::trivial(g.clone());
    let sample = (g.vertex("O").unwrap(), int(1), g.vertex("P").unwrap(), int(2));
    assert!(matches!(trivial.sigma_check(&[sample]), Err(Error::Hypothesis(_))));
}

#[test]
fn zero_perturbation_changes_nothing() {
    let g = catalog::diamond();
    let lengths: Vec<Scalar> = g.edge_ids().map(|e| g.edge_len(e).clone()).collect();
    let family = PerturbedFamily::new(
        g.clone(),
        vec![FamilyStep {
            label: "0".into(),
            lengths,
        }],
    )
    .unwrap();
    let samples: Vec<_> = Sampler::new(2)
        .quadruples(&Space::Graph(g.clone()), 30)
        .into_iter()
        .map(|s| {
            (
                s.x.as_graph().unwrap().clone(),
                s.t.as_exact().unwrap().clone(),
                s.y.as_graph().unwrap().clone(),
                s.s.as_exact().unwrap().clone(),
            )
        })
        .collect();
    let report = family.check(&samples, &g.default_probe()).unwrap();
    assert!(report.steps[0].delta.is_zero() && report.steps[0].max_change.is_zero());
    assert!(report.verdicts_stable());
}

#[test]
fn bent_line_family_verdicts_are_stable() {
    let g = catalog::bent_line();
    let steps = [1i64, 2, 4, 8]
        .iter()
        .map(|&n| FamilyStep {
            label: n.to_string(),
            lengths: vec![int(1) + q(1, n), int(1)],
        })
        .collect();
    let family = PerturbedFamily::new(g.clone(), steps).unwrap();
    let probe = family.probe_points();
    let report = family
        .check(
            &[(g.vertex("O").unwrap(), int(1), g.vertex("P").unwrap(), int(2))],
            &probe,
        )
        .unwrap();
    assert!(report.bound_holds());
    assert!(report.verdicts_stable());
    // No probe point has the property, at any step or in the limit.
    assert!(report.base_verdicts.iter().all(|h| !h));
    assert!(PerturbedFamily::new(
        g.clone(),
        vec![FamilyStep {
            label: "bad".into(),
            lengths: vec![int(0), int(1)]
        }]
    )
    .is_err());
}

#[test]
fn oracle_hausdorff_examples() {
    let bent = catalog::bent_line();
    let net = EpsilonNet::build(&bent, &q(1, 4), &int(8)).unwrap();
    let a = bent.ball(&bent.vertex("P").unwrap(), &int(2)).unwrap();
    let b = bent.ball(&bent.vertex("Q").unwrap(), &int(2)).unwrap();
    assert_eq!(net.hausdorff(&a, &b).unwrap().value, int(0));
    assert_eq!(net.hausdorff(&a, &a).unwrap().value, int(0));

    let g = catalog::diamond();
    let net = EpsilonNet::build(&g, &q(1, 8), &int(12)).unwrap();
    let w = g.ball(&g.vertex("W").unwrap(), &int(1)).unwrap();
    let e = g.ball(&g.vertex("E").unwrap(), &int(1)).unwrap();
    let exact = hausdorff_pl(&w, &e).unwrap();
    assert_eq!(exact, int(4));
    let est = net.hausdorff(&w, &e).unwrap();
    assert!((&est.value - &exact).abs() <= q(1, 4));
    assert!(EpsilonNet::build(&g, &int(0), &int(12)).is_err());
}

/// Off-grid inputs: thirds never land on a dyadic net, so these exercise
/// the error bound rather than exact node hits.
#[test]
fn oracle_tracks_off_grid_values_as_eps_halves() {
    let g = catalog::diamond_chain();
    let points = [
        g.edge_point("J0T1", q(1, 3)).unwrap(),
        g.edge_point("B1J1", q(2, 3)).unwrap(),
        g.edge_point("T2J2", q(1, 3)).unwrap(),
        g.ray_point("rl", q(4, 3)).unwrap(),
        g.vertex("J1").unwrap(),
    ];
    let radii = [q(1, 3), q(4, 3), q(7, 3)];
    let mut worst = Vec::new();
    for eps in [q(1, 8), q(1, 16), q(1, 32)] {
        let net = EpsilonNet::build(&g, &eps, &int(14)).unwrap();
        let mut dev = Scalar::zero();
        for x in &points {
            for y in &points {
                for t in &radii {
                    let (a, b) = (g.ball(x, t).unwrap(), g.ball(y, &radii[0]).unwrap());
                    let exact = hausdorff_pl(&a, &b).unwrap();
                    let est = net.hausdorff(&a, &b).unwrap();
                    assert!(
                        est.agrees_with(&exact),
                        "eps {eps}: oracle {} vs exact {exact}",
                        est.value
                    );
                    dev = Scalar::max_of(&dev, &(&est.value - &exact).abs()).clone();
                    if x != y {
                        let gap = ballspace::shooting_gap(&g, x, y, t).unwrap();
                        let est = net.gap(x, y, t).unwrap();
                        assert!(
                            est.agrees_with(&gap),
                            "eps {eps}: gap oracle {} vs exact {gap}",
                            est.value
                        );
                    }
                }
            }
        }
        assert!(dev <= eps.clone() + eps.clone());
        worst.push(dev);
    }
    assert!(worst.windows(2).all(|w| w[1] <= w[0]), "deviations {worst:?}");
}

#[test]
fn sigma_geodesics_on_the_line_graph() {
    let g = catalog::line();
    let space = Space::Graph(g.clone());
    let mut sampler = Sampler::new(17);
    for _ in 0..40 {
        let s = sampler.quadruple(&space);
        if s.x == s.y {
            continue;
        }
        let ell = space.distance(&s.x, &s.y).unwrap();
        let total = space
            .hausdorff_balls(
                &Ball {
                    center: s.x.clone(),
                    radius: s.t.clone(),
                },
                &Ball {
                    center: s.y.clone(),
                    radius: s.s.clone(),
                },
            )
            .unwrap();
        let curve = |u: &Scalar| -> Ball {
            let a = Length::Exact(ell.as_exact().unwrap() * u);
            let center = space.geodesic_points(&s.x, &s.y, &a).unwrap().remove(0);
            let radius = (int(1) - u) * s.t.as_exact().unwrap() + u * s.s.as_exact().unwrap();
            Ball::new(center, Length::Exact(radius))
        };
        for (u, v) in [(q(0, 1), q(1, 2)), (q(1, 4), q(3, 4)), (q(1, 3), int(1))] {
            let d = space.hausdorff_balls(&curve(&u), &curve(&v)).unwrap();
            assert_eq!(d, Length::Exact((&u - &v).abs() * total.as_exact().unwrap()));
        }
    }
}

#[test]
fn spheres_and_points_reject_bad_input() {
    let g = catalog::diamond();
    assert!(g.edge_point("NE", int(3)).is_err());
    assert!(g.vertex("Z").is_err());
    assert!(g.ball(&g.vertex("N").unwrap(), &int(-1)).is_err());
    let other = catalog::square();
    let a = g.ball(&g.vertex("N").unwrap(), &int(1)).unwrap();
    let b = other.ball(&other.vertex("N").unwrap(), &int(1)).unwrap();
    assert!(hausdorff_pl(&a, &b).is_err());
    let x = GraphPoint::Vertex(g.vertex_id("N").unwrap());
    assert!(ballspace::shooting_gap(&g, &x, &x, &int(1)).is_err());
}
