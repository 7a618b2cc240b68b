//! Acceptance criteria 1 to 12, one pass/fail line each.
//!
//! The report goes straight to stderr, so it shows without `--nocapture`.
//! The test fails if any criterion outside [`KNOWN_UNATTAINABLE`]
//! fails, or if a listed one unexpectedly starts passing.

use ballspace::constructors::{product_hausdorff_infty, Norm, PerturbedFamily, ProductSpace, QuotientSpace, Split};
use ballspace::graph::catalog;
use ballspace::graph::Automorphism;
use ballspace::hausdorff::hausdorff_pl;
use ballspace::length::FLOAT_TOL;
use ballspace::oracle::{compare, default_depth};
use ballspace::sample::Sampler;
use ballspace::shooting::closedness_harness;
use ballspace::sigma::taxicab_deviation;
use ballspace::{
    decide_point, decide_space, shooting_gap, Ball, GraphPoint, Length, MetricGraph, ModelPoint, ModelSpace, Point,
    Scalar, Space,
};
use rand::Rng;
use std::collections::HashMap;
use std::io::Write;

/// Criteria that cannot pass as stated. Criterion 3 asks for zero taxicab
/// deviation on the bent-line graph, whose balls `B̄_2(P)` and `B̄_2(Q)`
/// coincide (criterion 2), so the deviation there is at least 2.
const KNOWN_UNATTAINABLE: &[u32] = &[3];

const SEED: u64 = 20_240_601;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

type Outcome = (bool, String);

fn criterion_1() -> Outcome {
    let g = catalog::diamond();
    let s = g.vertex("S").unwrap();
    let x0 = g.edge_point("WN", int(1)).unwrap();
    let sphere = g.sphere(&x0, &int(5)).unwrap();
    let mut dists: Vec<Scalar> = sphere.iter().map(|p| g.distance(&s, p).unwrap()).collect();
    dists.sort();
    let gap = shooting_gap(&g, &x0, &s, &int(5)).unwrap();

    let holding = [
        g.vertex("E").unwrap(),
        g.vertex("W").unwrap(),
        g.ray_point("re", q(1, 2)).unwrap(),
        g.ray_point("rw", int(3)).unwrap(),
        g.ray_point("re", int(10)).unwrap(),
    ];
    let failing = ["N", "S"]
        .iter()
        .map(|v| g.vertex(v).unwrap())
        .chain(g.edge_ids().map(|e| g.edge_midpoint(e)));
    let holds_ok = holding.iter().all(|p| decide_point(&g, p).unwrap().holds());
    let fails_ok = failing.into_iter().all(|p| !decide_point(&g, &p).unwrap().holds());

    let ok = dists == vec![int(4), int(6)] && gap == int(2) && holds_ok && fails_ok;
    (
        ok,
        format!(
            "sphere distances {dists:?}, gap {gap}, holds on E,W,rays: {holds_ok}, fails on N,S,midpoints: {fails_ok}"
        ),
    )
}

fn criterion_2() -> Outcome {
    let g = catalog::bent_line();
    let a = g.ball(&g.vertex("P").unwrap(), &int(2)).unwrap();
    let b = g.ball(&g.vertex("Q").unwrap(), &int(2)).unwrap();
    let equal = a.same_set(&b).unwrap();
    let d = hausdorff_pl(&a, &b).unwrap();
    (equal && d.is_zero(), format!("balls equal: {equal}, hausdorff {d}"))
}

fn criterion_3() -> Outcome {
    let line = Space::Model(ModelSpace::Line);
    let line_graph = Space::Graph(catalog::line());
    let bent = Space::Graph(catalog::bent_line());
    let dev = |space: &Space| {
        let samples = Sampler::new(SEED).quadruples(space, 100);
        taxicab_deviation(space, &samples).unwrap().max_deviation().clone()
    };
    let (d_line, d_line_graph, d_bent) = (dev(&line), dev(&line_graph), dev(&bent));
    let a_ok = d_line == Length::zero() && d_line_graph == Length::zero() && d_bent == Length::zero();

    let diamond = catalog::diamond();
    let space = Space::Graph(diamond.clone());
    let samples = Sampler::new(SEED).quadruples(&space, 100);
    let report = taxicab_deviation(&space, &samples).unwrap();
    let w = &samples[report.worst];
    let (x, y) = (w.x.as_graph().unwrap(), w.y.as_graph().unwrap());
    let (t, s) = (w.t.as_exact().unwrap(), w.s.as_exact().unwrap());
    let dh = hausdorff_pl(&diamond.ball(x, t).unwrap(), &diamond.ball(y, s).unwrap()).unwrap();
    let taxicab = diamond.distance(x, y).unwrap() + (t - s).abs();
    let reverified = Length::Exact((&taxicab - &dh).abs()) == *report.max_deviation();
    let b_ok = report.max_deviation().as_exact().is_some_and(Scalar::is_positive) && reverified;

    (
        a_ok && b_ok,
        format!(
            "(a) line {d_line}, line graph {d_line_graph}, bent line {d_bent}; (b) diamond {} at ({}, {t}, {}, {s}) re-verified: {reverified}",
            report.max_deviation(),
            diamond.describe_point(x),
            diamond.describe_point(y)
        ),
    )
}

fn criterion_4() -> Outcome {
    let g = catalog::diamond_chain();
    let report = decide_space(&g, &g.default_probe()).unwrap();
    let holding: Vec<String> = report
        .holding_points()
        .into_iter()
        .map(|p| g.describe_point(p))
        .collect();
    let expected: Vec<GraphPoint> = ["J0", "J1", "J2"].iter().map(|v| g.vertex(v).unwrap()).collect();
    let ok = report.holding_points().into_iter().cloned().collect::<Vec<_>>() == expected;
    (ok, format!("holds at {holding:?}"))
}

fn criterion_5() -> Outcome {
    let spaces = [
        ("diamond", Space::Graph(catalog::diamond())),
        ("bent line", Space::Graph(catalog::bent_line())),
        ("chain", Space::Graph(catalog::diamond_chain())),
        ("square", Space::Graph(catalog::square())),
        ("circle", Space::Model(ModelSpace::Circle { radius: 1.0 })),
        ("half-plane", Space::Model(ModelSpace::HalfPlane)),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, space) in &spaces {
        let samples = Sampler::new(SEED).quadruples(space, 100);
        let report = taxicab_deviation(space, &samples).unwrap();
        // Worst excess of d_H over the taxicab distance, exact on graphs.
        let excess = report.rows.iter().map(|r| r.hausdorff.minus(&r.taxicab)).fold(
            Length::Approx(f64::NEG_INFINITY),
            |a, b| {
                if b.to_f64() > a.to_f64() {
                    b
                } else {
                    a
                }
            },
        );
        let good = if space.is_exact() {
            !excess.as_exact().unwrap().is_positive()
        } else {
            excess.to_f64() <= FLOAT_TOL
        };
        ok &= good && report.lipschitz_holds();
        parts.push(format!("{name} {excess}"));
    }
    (ok, format!("max d_H - d_T: {}", parts.join(", ")))
}

fn graph_pair(a: GraphPoint, b: GraphPoint) -> Point {
    Point::pair(Point::Graph(a), Point::Graph(b))
}

fn criterion_6() -> Outcome {
    let ps = ProductSpace::new(
        Space::Graph(catalog::diamond()),
        Space::Graph(catalog::bent_line()),
        Norm::Linf,
    );
    let space = ps.clone().into_space();
    let mut sampler = Sampler::new(SEED);
    let mut max_dev = Scalar::zero();
    for sample in sampler.quadruples(&space, 50) {
        let (b1, b2) = sample.balls();
        let formula = product_hausdorff_infty(&ps, &b1, &b2).unwrap();
        let inclusion = space.hausdorff_inclusion(&b1, &b2).unwrap();
        let dev = formula.abs_diff(&inclusion);
        max_dev = Scalar::max_of(&max_dev, dev.as_exact().unwrap()).clone();
    }
    let mut mismatches = 0;
    for _ in 0..500 {
        let ball = Ball {
            center: sampler.point(&space),
            radius: sampler.radius(&space),
        };
        let p = sampler.point(&space);
        mismatches += usize::from(ps.ball_contains(&ball, &p).unwrap() != ps.factor_ball_contains(&ball, &p).unwrap());
    }
    // A fixed pair from the bent-line square: the two factor values agree.
    let bent = catalog::bent_line();
    let bb = ProductSpace::new(Space::Graph(bent.clone()), Space::Graph(bent.clone()), Norm::Linf);
    let (p, qq) = (bent.vertex("P").unwrap(), bent.vertex("Q").unwrap());
    let fixed = product_hausdorff_infty(
        &bb,
        &Ball::new(graph_pair(p.clone(), p.clone()), int(1)),
        &Ball::new(graph_pair(qq.clone(), qq.clone()), int(1)),
    )
    .unwrap();
    let component = hausdorff_pl(&bent.ball(&p, &int(1)).unwrap(), &bent.ball(&qq, &int(1)).unwrap()).unwrap();
    let ok = max_dev.is_zero() && mismatches == 0 && fixed == Length::Exact(component.clone());
    (ok, format!("formula vs inclusion max deviation {max_dev} over 50, membership mismatches {mismatches}/500, bent x bent {fixed} = {component}"))
}

fn line_pt(x: f64) -> Point {
    Point::Model(ModelPoint::Line(Scalar::from_f64(x).unwrap()))
}

fn criterion_7() -> Outcome {
    let ps = ProductSpace::new(
        Space::Model(ModelSpace::Euclidean { dim: 2 }),
        Space::Model(ModelSpace::Hyperbolic2),
        Norm::L2,
    );
    let space = ps.clone().into_space();
    let mut sampler = Sampler::new(SEED);
    let (mut prop_ok, mut prop_worst, mut equal_unequal_worst) = (0usize, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < 100 {
        let (x, a) = (sampler.point(&space), sampler.point(&space));
        if space.distance(&x, &a).unwrap().to_f64() <= FLOAT_TOL {
            continue;
        }
        let r: f64 = sampler.rng().gen_range(0.1..4.0);
        let w = ps.shooting_witness(&x, &a, r, Split::Proportional).unwrap();
        prop_ok += usize::from(w.within(FLOAT_TOL));
        prop_worst = prop_worst.max(w.sphere_residual.max(w.extension_residual));
        let e = ps.shooting_witness(&x, &a, r, Split::Equal).unwrap();
        equal_unequal_worst = equal_unequal_worst.max(e.sphere_residual.max(e.extension_residual));
        n += 1;
    }
    // Equal component distances: line x line with a = x + (u, ±u).
    let ll = ProductSpace::new(Space::Model(ModelSpace::Line), Space::Model(ModelSpace::Line), Norm::L2);
    let (mut equal_ok, mut equal_worst) = (0usize, 0.0f64);
    for _ in 0..100 {
        let rng = sampler.rng();
        let (x1, x2) = (
            f64::from(rng.gen_range(-40..40)) / 8.0,
            f64::from(rng.gen_range(-40..40)) / 8.0,
        );
        let u = f64::from(rng.gen_range(1..40)) / 8.0;
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let r = f64::from(rng.gen_range(1..32)) / 8.0;
        let w = ll
            .shooting_witness(
                &Point::pair(line_pt(x1), line_pt(x2)),
                &Point::pair(line_pt(x1 + u), line_pt(x2 + sign * u)),
                r,
                Split::Equal,
            )
            .unwrap();
        equal_ok += usize::from(w.within(FLOAT_TOL));
        equal_worst = equal_worst.max(w.sphere_residual.max(w.extension_residual));
    }
    let ok = prop_ok == 100 && equal_ok == 100;
    (
        ok,
        format!(
            "proportional {prop_ok}/100 (worst {prop_worst:.2e}); equal split on equal distances {equal_ok}/100 (worst {equal_worst:.2e}); equal split on general inputs worst residual {equal_unequal_worst:.3} (reported)"
        ),
    )
}

fn exact_samples(space: &Space, n: usize, seed: u64) -> Vec<(GraphPoint, Scalar, GraphPoint, Scalar)> {
    Sampler::new(seed)
        .quadruples(space, n)
        .into_iter()
        .map(|s| {
            (
                s.x.as_graph().unwrap().clone(),
                s.t.as_exact().unwrap().clone(),
                s.y.as_graph().unwrap().clone(),
                s.s.as_exact().unwrap().clone(),
            )
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let family = PerturbedFamily::additive(catalog::diamond(), &[1, 2, 4, 8]).unwrap();
    let samples = exact_samples(&Space::Graph(catalog::diamond()), 100, SEED);
    let probe = family.probe_points();
    let report = family.check(&samples, &probe).unwrap();
    let changes: Vec<String> = report
        .steps
        .iter()
        .map(|s| format!("n={}: {} <= 2*{}", s.label, s.max_change, s.delta))
        .collect();
    let ok = report.bound_holds() && report.verdicts_stable();
    (
        ok,
        format!(
            "{}; verdicts stable at {} probe points: {}",
            changes.join(", "),
            probe.len(),
            report.verdicts_stable()
        ),
    )
}

fn mirrored_chain() -> QuotientSpace {
    let g = catalog::diamond_chain();
    let names = |pairs: &[(&str, &str)]| -> HashMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    let mirror = Automorphism::from_names(
        &g,
        &names(&[
            ("J0", "J2"),
            ("J2", "J0"),
            ("T1", "T2"),
            ("T2", "T1"),
            ("B1", "B2"),
            ("B2", "B1"),
        ]),
        &names(&[("rl", "rr"), ("rr", "rl")]),
        &HashMap::new(),
    )
    .unwrap();
    QuotientSpace::new(g.clone(), vec![Automorphism::identity(&g), mirror]).unwrap()
}

fn criterion_9() -> Outcome {
    let quotient = mirrored_chain();
    let g = quotient.base.clone();
    let junctions: Vec<GraphPoint> = ["J0", "J1", "J2"].iter().map(|v| g.vertex(v).unwrap()).collect();
    let mut sampler = Sampler::new(SEED);
    let space = Space::Graph(g.clone());
    let samples: Vec<_> = (0..60)
        .map(|_| {
            let mut pick = || junctions[sampler.rng().gen_range(0..3)].clone();
            let (x, y) = (pick(), pick());
            let t = sampler.radius(&space).as_exact().unwrap().clone();
            let s = sampler.radius(&space).as_exact().unwrap().clone();
            (x, t, y, s)
        })
        .collect();
    let report = quotient.sigma_check(&samples).unwrap();
    (
        report.max_deviation.is_zero(),
        format!(
            "max deviation {} over {} junction-centered samples",
            report.max_deviation,
            samples.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let graphs = [
        ("diamond", catalog::diamond()),
        ("bent line", catalog::bent_line()),
        ("chain", catalog::diamond_chain()),
        ("square", catalog::square()),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, g) in &graphs {
        let depth = default_depth(g) + int(8);
        let coarse = compare(g, &q(1, 8), &depth, SEED, 40).unwrap();
        let fine = compare(g, &q(1, 16), &depth, SEED, 40).unwrap();
        let monotone = fine.max_deviation() <= coarse.max_deviation();
        ok &= coarse.pass() && fine.pass() && monotone;
        parts.push(format!(
            "{name} ({} checks, skipped {}+{}) max dev {} -> {}",
            coarse.rows.len() + fine.rows.len(),
            coarse.skipped,
            fine.skipped,
            coarse.max_deviation(),
            fine.max_deviation()
        ));
    }
    (ok, parts.join("; "))
}

fn criterion_11() -> Outcome {
    let seq = |g: &MetricGraph, ray: &str| -> Vec<GraphPoint> {
        (0..8).map(|k| g.ray_point(ray, q(1, 1 << k)).unwrap()).collect()
    };
    let diamond = catalog::diamond();
    let chain = catalog::diamond_chain();
    let cases = [
        (
            "diamond rw -> W",
            closedness_harness(&diamond, &seq(&diamond, "rw"), &diamond.vertex("W").unwrap()),
        ),
        (
            "diamond re -> E",
            closedness_harness(&diamond, &seq(&diamond, "re"), &diamond.vertex("E").unwrap()),
        ),
        (
            "chain rl -> J0",
            closedness_harness(&chain, &seq(&chain, "rl"), &chain.vertex("J0").unwrap()),
        ),
        (
            "chain rr -> J2",
            closedness_harness(&chain, &seq(&chain, "rr"), &chain.vertex("J2").unwrap()),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, report) in cases {
        let holds = report.as_ref().is_ok_and(|r| r.limit_holds());
        ok &= holds;
        parts.push(format!("{name}: {}", if holds { "holds" } else { "fails" }));
    }
    (ok, parts.join(", "))
}

fn criterion_12() -> Outcome {
    let mut sampler = Sampler::new(SEED);
    let mut parts = Vec::new();
    let mut ok = true;
    for m in [ModelSpace::Euclidean { dim: 2 }, ModelSpace::Hyperbolic2] {
        let (mut good, mut worst, mut n) = (0usize, 0.0f64, 0usize);
        while n < 500 {
            let (x, y) = (sampler.model_point(&m), sampler.model_point(&m));
            if m.distance(&x, &y).unwrap().to_f64() <= FLOAT_TOL {
                continue;
            }
            let r = Length::Approx(sampler.rng().gen_range(0.01..5.0));
            if let Some(p) = m.shooting_witness(&x, &y, &r).unwrap() {
                let (a, b) = m.witness_residuals(&x, &y, &r, &p);
                worst = worst.max(a).max(b);
                good += usize::from(a <= FLOAT_TOL && b <= FLOAT_TOL);
            }
            n += 1;
        }
        ok &= good == 500;
        parts.push(format!("{} {good}/500 (worst {worst:.1e})", m.kind()));
    }
    let hp = ModelSpace::HalfPlane;
    let (x, y) = (ModelPoint::Coords(vec![0.0, 1.0]), ModelPoint::Coords(vec![0.0, 3.0]));
    let r = Length::Approx(2.0);
    let none = hp.shooting_witness(&x, &y, &r).unwrap().is_none();
    let gap = hp.shooting_gap(&x, &y, &r).unwrap().to_f64();
    ok &= none && gap > FLOAT_TOL;
    parts.push(format!("half-plane (0,1),(0,3),2: no witness {none}, gap {gap:.6}"));
    let circle = ModelSpace::Circle { radius: 1.0 };
    let antipodal = [0.1, 0.5, 1.0, 2.0, 3.0].iter().all(|&r| {
        circle
            .shooting_witness(
                &ModelPoint::angle(0.0),
                &ModelPoint::angle(std::f64::consts::PI),
                &Length::Approx(r),
            )
            .unwrap()
            .is_none()
    });
    ok &= antipodal;
    parts.push(format!("circle antipodes never extend: {antipodal}"));
    (ok, parts.join("; "))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(u32, fn() -> Outcome); 12] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
        (12, criterion_12),
    ];
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        let (pass, detail) = run();
        let known = KNOWN_UNATTAINABLE.contains(&id);
        let note = if known && !pass { " (known unattainable)" } else { "" };
        // Direct handle writes bypass the test harness output capture.
        let _ = writeln!(
            std::io::stderr().lock(),
            "criterion {id:>2}: {}{note}  {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
        if pass == known {
            unexpected.push(id);
        }
    }
    assert!(
        unexpected.is_empty(),
        "criteria with unexpected outcome: {unexpected:?}"
    );
}
