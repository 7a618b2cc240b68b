//! A single handle over every supported length space.
//!
//! Graphs and the line are exact; the other model spaces are floating point.
//! Products and quotients are built from the others by
//! [`crate::constructors`].

use std::fmt;

use crate::constructors::{Norm, ProductSpace, QuotientSpace};
use crate::error::{Error, Result};
use crate::graph::{DistanceField, GraphPoint, MetricGraph};
use crate::hausdorff::{hausdorff_intervals, hausdorff_pl};
use crate::length::Length;
use crate::model::{ModelPoint, ModelSpace};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Space {
    Graph(MetricGraph),
    Model(ModelSpace),
    Product(Box<ProductSpace>),
    Quotient(Box<QuotientSpace>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Graph(GraphPoint),
    Model(ModelPoint),
    Pair(Box<Point>, Box<Point>),
}

impl Point {
    pub fn pair(a: Point, b: Point) -> Point {
        Point::Pair(Box::new(a), Box::new(b))
    }

    pub fn as_graph(&self) -> Result<&GraphPoint> {
        match self {
            Point::Graph(p) => Ok(p),
            _ => Err(Error::input("expected a graph point")),
        }
    }

    pub fn as_model(&self) -> Result<&ModelPoint> {
        match self {
            Point::Model(p) => Ok(p),
            _ => Err(Error::input("expected a model-space point")),
        }
    }

    pub fn as_pair(&self) -> Result<(&Point, &Point)> {
        match self {
            Point::Pair(a, b) => Ok((a, b)),
            _ => Err(Error::input("expected a pair of points")),
        }
    }
}

impl From<GraphPoint> for Point {
    fn from(p: GraphPoint) -> Self {
        Point::Graph(p)
    }
}

impl From<ModelPoint> for Point {
    fn from(p: ModelPoint) -> Self {
        Point::Model(p)
    }
}

/// A closed ball `B̄_radius(center)`: an element of the ball hyperspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: Length,
}

impl Ball {
    pub fn new(center: impl Into<Point>, radius: impl Into<Length>) -> Self {
        Ball {
            center: center.into(),
            radius: radius.into(),
        }
    }
}

impl Space {
    pub fn kind(&self) -> &'static str {
        match self {
            Space::Graph(_) => "graph",
            Space::Model(m) => m.kind(),
            Space::Product(_) => "product",
            Space::Quotient(_) => "quotient",
        }
    }

    /// Whether distances on this space are exact rationals.
    pub fn is_exact(&self) -> bool {
        match self {
            Space::Graph(_) | Space::Quotient(_) | Space::Model(ModelSpace::Line) => true,
            Space::Model(_) => false,
            Space::Product(p) => p.norm == Norm::Linf && p.left.is_exact() && p.right.is_exact(),
        }
    }

    pub fn as_graph(&self) -> Result<&MetricGraph> {
        match self {
            Space::Graph(g) => Ok(g),
            _ => Err(Error::input(format!("expected a graph space, got {}", self.kind()))),
        }
    }

    pub fn validate(&self, p: &Point) -> Result<()> {
        match (self, p) {
            (Space::Graph(g), Point::Graph(q)) => g.validate(q),
            (Space::Quotient(qs), Point::Graph(q)) => qs.base.validate(q),
            (Space::Model(m), Point::Model(q)) => m.validate(q),
            (Space::Product(ps), Point::Pair(a, b)) => {
                ps.left.validate(a)?;
                ps.right.validate(b)
            }
            _ => Err(Error::input(format!(
                "point {p:?} does not belong to a {} space",
                self.kind()
            ))),
        }
    }

    fn radius_ok(&self, r: &Length) -> Result<()> {
        if r.is_negative() {
            return Err(Error::input(format!("negative radius {r}")));
        }
        if self.is_exact() {
            r.require_exact("radius")?;
        }
        Ok(())
    }

    pub fn validate_ball(&self, b: &Ball) -> Result<()> {
        self.validate(&b.center)?;
        self.radius_ok(&b.radius)
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<Length> {
        match self {
            Space::Graph(g) => Ok(Length::Exact(g.distance(p.as_graph()?, q.as_graph()?)?)),
            Space::Model(m) => m.distance(p.as_model()?, q.as_model()?),
            Space::Product(ps) => ps.distance(p, q),
            Space::Quotient(qs) => Ok(Length::Exact(qs.orbit_distance(p.as_graph()?, q.as_graph()?)?)),
        }
    }

    /// `max_{p ∈ B̄_r(x)} d(y, p)`.
    pub fn ball_far(&self, x: &Point, r: &Length, y: &Point) -> Result<Length> {
        self.radius_ok(r)?;
        match self {
            Space::Graph(g) => Ok(Length::Exact(graph_ball_far(
                g,
                x.as_graph()?,
                r.require_exact("radius")?,
                y.as_graph()?,
            )?)),
            Space::Model(m) => m.ball_far(x.as_model()?, r, y.as_model()?),
            Space::Product(ps) => ps.ball_far(x, r, y),
            Space::Quotient(_) => Err(Error::Unsupported("ball extents on a quotient".into())),
        }
    }

    /// `d_H(B̄_t(x), B̄_s(y))`, dispatched to the exact or closed-form method
    /// appropriate for the space.
    pub fn hausdorff_balls(&self, b1: &Ball, b2: &Ball) -> Result<Length> {
        self.validate_ball(b1)?;
        self.validate_ball(b2)?;
        match self {
            Space::Graph(g) => {
                let a = g.ball(b1.center.as_graph()?, b1.radius.require_exact("radius")?)?;
                let b = g.ball(b2.center.as_graph()?, b2.radius.require_exact("radius")?)?;
                Ok(Length::Exact(hausdorff_pl(&a, &b)?))
            }
            Space::Model(ModelSpace::Line) => {
                let (x, t) = (line_coord(&b1.center)?, b1.radius.require_exact("radius")?);
                let (y, s) = (line_coord(&b2.center)?, b2.radius.require_exact("radius")?);
                Ok(Length::Exact(hausdorff_intervals(
                    &(x - t),
                    &(x + t),
                    &(y - s),
                    &(y + s),
                )?))
            }
            Space::Model(m) => m.ball_hausdorff(b1.center.as_model()?, &b1.radius, b2.center.as_model()?, &b2.radius),
            Space::Product(ps) => ps.hausdorff_balls(b1, b2),
            Space::Quotient(qs) => Ok(Length::Exact(qs.ball_distance(b1, b2)?)),
        }
    }

    /// The inclusion form `max(0, far(x,t;y) - s, far(y,s;x) - t)`, valid in
    /// every length space. Used as an independent cross-check.
    pub fn hausdorff_inclusion(&self, b1: &Ball, b2: &Ball) -> Result<Length> {
        let one = self.ball_far(&b1.center, &b1.radius, &b2.center)?.minus(&b2.radius);
        let two = self.ball_far(&b2.center, &b2.radius, &b1.center)?.minus(&b1.radius);
        Ok(one.max(&two).max(&Length::zero()))
    }

    /// Shooting gap `d(y,x) + r - max_{p ∈ B̄_r(x)} d(y,p)`.
    pub fn shooting_gap(&self, x: &Point, y: &Point, r: &Length) -> Result<Length> {
        match self {
            Space::Graph(g) => Ok(Length::Exact(crate::shooting::shooting_gap(
                g,
                x.as_graph()?,
                y.as_graph()?,
                r.require_exact("radius")?,
            )?)),
            Space::Model(m) => m.shooting_gap(x.as_model()?, y.as_model()?, r),
            _ => {
                self.validate(x)?;
                self.validate(y)?;
                if r.is_negative() || r.is_zero_within(0.0) {
                    return Err(Error::input(format!("shooting radius must be positive, got {r}")));
                }
                let d = self.distance(x, y)?;
                if d.is_zero_within(0.0) {
                    return Err(Error::input("shooting needs y != x"));
                }
                Ok(d.plus(r).minus(&self.ball_far(x, r, y)?))
            }
        }
    }

    /// Every point `z` with `d(x,z) = a` and `d(z,y) = d(x,y) - a`, i.e. the
    /// points at distance `a` from `x` on some geodesic to `y`.
    pub fn geodesic_points(&self, x: &Point, y: &Point, a: &Length) -> Result<Vec<Point>> {
        let d = self.distance(x, y)?;
        if a.is_negative() || a.compare(&d).is_gt() {
            return Err(Error::input(format!("geodesic parameter {a} outside [0, {d}]")));
        }
        match self {
            Space::Graph(g) => {
                let (xg, yg) = (x.as_graph()?, y.as_graph()?);
                let a = a.require_exact("geodesic parameter")?;
                let rest = d.require_exact("distance")? - a;
                if a.is_zero() {
                    return Ok(vec![x.clone()]);
                }
                if rest.is_zero() {
                    return Ok(vec![y.clone()]);
                }
                let from_y = DistanceField::new(g, std::slice::from_ref(yg));
                Ok(g.sphere(xg, a)?
                    .into_iter()
                    .filter(|z| from_y.at(z) == rest)
                    .map(Point::Graph)
                    .collect())
            }
            Space::Model(m) => Ok(m
                .geodesic_points(x.as_model()?, y.as_model()?, a)?
                .into_iter()
                .map(Point::Model)
                .collect()),
            Space::Product(ps) => ps.geodesic_points(x, y, a),
            Space::Quotient(_) => Err(Error::Unsupported("geodesics on a quotient".into())),
        }
    }

    pub fn describe(&self, p: &Point) -> String {
        match (self, p) {
            (Space::Graph(g), Point::Graph(q)) => g.describe_point(q),
            (Space::Quotient(qs), Point::Graph(q)) => qs.base.describe_point(q),
            (Space::Product(ps), Point::Pair(a, b)) => format!("({}, {})", ps.left.describe(a), ps.right.describe(b)),
            (_, Point::Model(m)) => describe_model(m),
            _ => format!("{p:?}"),
        }
    }
}

fn describe_model(p: &ModelPoint) -> String {
    use crate::length::format_float;
    match p {
        ModelPoint::Line(x) => x.to_string(),
        ModelPoint::Angle(a) => format_float(*a),
        ModelPoint::Coords(c) => format!(
            "({})",
            c.iter().map(|x| format_float(*x)).collect::<Vec<_>>().join(", ")
        ),
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Graph(g) => write!(
                f,
                "graph ({} vertices, {} edges, {} rays)",
                g.vertex_count(),
                g.edge_count(),
                g.ray_count()
            ),
            Space::Model(m) => f.write_str(m.kind()),
            Space::Product(p) => write!(f, "{} x {} ({})", p.left, p.right, p.norm),
            Space::Quotient(q) => write!(f, "quotient of graph by {} automorphisms", q.group().len()),
        }
    }
}

fn line_coord(p: &Point) -> Result<&Scalar> {
    match p.as_model()? {
        ModelPoint::Line(x) => Ok(x),
        other => Err(Error::input(format!("expected a line coordinate, got {other:?}"))),
    }
}

/// Farthest distance from `y` inside the exact ball `B̄_r(x)`.
pub fn graph_ball_far(g: &MetricGraph, x: &GraphPoint, r: &Scalar, y: &GraphPoint) -> Result<Scalar> {
    g.validate(y)?;
    let ball = g.ball(x, r)?;
    let field = DistanceField::new(g, std::slice::from_ref(y));
    Ok(field.sup_over(&ball).expect("balls contain their center").1)
}
