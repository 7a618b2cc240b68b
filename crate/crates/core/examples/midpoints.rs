//! Midpoints of points and of balls, and isometries acting on balls.

use ballspace::graph::catalog;
use ballspace::isometry::{Isometry, Motion};
use ballspace::sample::Sampler;
use ballspace::sigma::{lift_isometry, midpoint_census, sigma_midpoints};
use ballspace::{Ball, Length, ModelPoint, ModelSpace, Point, Result, Scalar, Space};

fn main() -> Result<()> {
    let g = catalog::diamond();
    let space = Space::Graph(g.clone());
    let (w, e) = (Point::Graph(g.vertex("W")?), Point::Graph(g.vertex("E")?));
    let mids: Vec<String> = midpoint_census(&space, &w, &e)?
        .iter()
        .map(|p| space.describe(p))
        .collect();
    println!("midpoints of W and E on the diamond: {mids:?}");

    let line = Space::Model(ModelSpace::Line);
    let b1 = Ball::new(ModelPoint::Line(Scalar::zero()), Length::Exact(Scalar::zero()));
    let b2 = Ball::new(
        ModelPoint::Line(Scalar::from_int(2)),
        Length::Exact(Scalar::from_int(2)),
    );
    println!("midpoint balls of B(0,0) and B(2,2) on the line:");
    for m in sigma_midpoints(&line, &b1, &b2, 4)? {
        println!(
            "  B({}, {})  distances {} and {}  verified {}",
            line.describe(&m.ball.center),
            m.ball.radius,
            m.to_first,
            m.to_second,
            m.verified
        );
    }

    let plane = Space::Model(ModelSpace::Euclidean { dim: 2 });
    let samples = Sampler::new(8).quadruples(&plane, 50);
    let rotation = Isometry::Motion(Motion::rotation(std::f64::consts::FRAC_PI_3));
    let report = lift_isometry(&plane, &rotation, &samples)?;
    println!("rotation by pi/3 on balls: max change {}", report.max_deviation);
    Ok(())
}
