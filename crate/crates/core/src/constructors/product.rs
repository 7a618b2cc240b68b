//! Products of two spaces under the ℓ2 or ℓ∞ combination of their metrics.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::DistanceField;
use crate::length::Length;
use crate::scalar::Scalar;
use crate::space::{Ball, Point, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L2,
    Linf,
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        })
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l2" => Ok(Norm::L2),
            "linf" => Ok(Norm::Linf),
            other => Err(Error::input(format!(
                "unknown product norm {other:?} (expected l2 or linf)"
            ))),
        }
    }
}

/// `X × Y` with the ℓ2 or ℓ∞ combination of the factor metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductSpace {
    pub left: Space,
    pub right: Space,
    pub norm: Norm,
}

/// How the extra length `r` is shared between the two factors when
/// extending a geodesic of the ℓ2 product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Split {
    /// `r · d_X(a,x) / ℓ` and `r · d_Y(b,y) / ℓ`.
    Proportional,
    /// `r / √2` in each factor.
    Equal,
}

/// Outcome of an ℓ2 product extension. The residuals are
/// `|d((x,y),(p,q)) - r|` and `|d((a,b),(p,q)) - (ℓ + r)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductWitness {
    pub split: Split,
    pub point: Option<Point>,
    pub sphere_residual: f64,
    pub extension_residual: f64,
    /// `"left"` or `"right"` when a factor could not be extended.
    pub failed_component: Option<&'static str>,
}

impl ProductWitness {
    pub fn within(&self, tol: f64) -> bool {
        self.point.is_some() && self.sphere_residual <= tol && self.extension_residual <= tol
    }
}

/// Whether every point of the space is known to have the shooting property.
fn shooting_everywhere(space: &Space) -> bool {
    match space {
        Space::Model(m) => m.has_shooting(),
        Space::Product(p) => shooting_everywhere(&p.left) && shooting_everywhere(&p.right),
        _ => false,
    }
}

impl ProductSpace {
    pub fn new(left: Space, right: Space, norm: Norm) -> Self {
        ProductSpace { left, right, norm }
    }

    pub fn into_space(self) -> Space {
        Space::Product(Box::new(self))
    }

    fn combine(&self, a: Length, b: Length) -> Length {
        match self.norm {
            Norm::Linf => a.max(&b),
            Norm::L2 => Length::Approx(a.to_f64().hypot(b.to_f64())),
        }
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<Length> {
        let (p1, p2) = p.as_pair()?;
        let (q1, q2) = q.as_pair()?;
        Ok(self.combine(self.left.distance(p1, q1)?, self.right.distance(p2, q2)?))
    }

    /// Membership in the product ball, computed from the product distance.
    pub fn ball_contains(&self, ball: &Ball, p: &Point) -> Result<bool> {
        let d = self.distance(&ball.center, p)?;
        Ok(!d.compare(&ball.radius).is_gt())
    }

    /// Membership in `B̄_r(x) × B̄_r(y)`, each factor tested on its own.
    pub fn factor_ball_contains(&self, ball: &Ball, p: &Point) -> Result<bool> {
        let (c1, c2) = ball.center.as_pair()?;
        let (p1, p2) = p.as_pair()?;
        Ok(factor_contains(&self.left, c1, &ball.radius, p1)? && factor_contains(&self.right, c2, &ball.radius, p2)?)
    }

    pub fn ball_far(&self, x: &Point, r: &Length, y: &Point) -> Result<Length> {
        let (x1, x2) = x.as_pair()?;
        let (y1, y2) = y.as_pair()?;
        match self.norm {
            // The ℓ∞ ball is the product of the factor balls.
            Norm::Linf => Ok(self.left.ball_far(x1, r, y1)?.max(&self.right.ball_far(x2, r, y2)?)),
            Norm::L2 if shooting_everywhere(&self.left) && shooting_everywhere(&self.right) => {
                Ok(self.distance(x, y)?.plus(r))
            }
            Norm::L2 => Err(Error::Unsupported(
                "ball extents of an l2 product of non-shooting factors".into(),
            )),
        }
    }

    pub fn hausdorff_balls(&self, b1: &Ball, b2: &Ball) -> Result<Length> {
        match self.norm {
            Norm::Linf => product_hausdorff_infty(self, b1, b2),
            Norm::L2 if shooting_everywhere(&self.left) && shooting_everywhere(&self.right) => Ok(self
                .distance(&b1.center, &b2.center)?
                .plus(&b1.radius.abs_diff(&b2.radius))),
            Norm::L2 => Err(Error::Unsupported(
                "Hausdorff distance of balls in an l2 product of non-shooting factors".into(),
            )),
        }
    }

    /// Points at distance `a` from `x` along the product of factor geodesics
    /// traversed at proportional speeds.
    pub fn geodesic_points(&self, x: &Point, y: &Point, a: &Length) -> Result<Vec<Point>> {
        let (x1, x2) = x.as_pair()?;
        let (y1, y2) = y.as_pair()?;
        let d = self.distance(x, y)?;
        let (d1, d2) = (self.left.distance(x1, y1)?, self.right.distance(x2, y2)?);
        let part = |di: &Length| -> Result<Length> {
            match (a, di, &d) {
                (Length::Exact(a), Length::Exact(di), Length::Exact(d)) if !d.is_zero() => {
                    Ok(Length::Exact(a * di / d))
                }
                _ if d.is_zero_within(0.0) => Ok(Length::zero()),
                _ => Ok(Length::Approx(a.to_f64() * di.to_f64() / d.to_f64())),
            }
        };
        let lefts = self.left.geodesic_points(x1, y1, &part(&d1)?)?;
        let rights = self.right.geodesic_points(x2, y2, &part(&d2)?)?;
        Ok(lefts
            .iter()
            .flat_map(|l| rights.iter().map(move |r| Point::pair(l.clone(), r.clone())))
            .collect())
    }

    /// Extends the geodesic from `(a,b)` through `(x,y)` by `r` in an ℓ2
    /// product, sharing the extension between factors according to `split`.
    pub fn shooting_witness(&self, x: &Point, a: &Point, r: f64, split: Split) -> Result<ProductWitness> {
        if self.norm != Norm::L2 {
            return Err(Error::input("the product extension applies to l2 products"));
        }
        if r.is_nan() || r <= 0.0 {
            return Err(Error::input(format!("shooting radius must be positive, got {r}")));
        }
        let (x1, x2) = x.as_pair()?;
        let (a1, a2) = a.as_pair()?;
        let d1 = self.left.distance(a1, x1)?.to_f64();
        let d2 = self.right.distance(a2, x2)?.to_f64();
        let ell = d1.hypot(d2);
        if ell == 0.0 {
            return Err(Error::input("shooting needs (a,b) != (x,y)"));
        }
        let (r1, r2) = match split {
            Split::Proportional => (r * d1 / ell, r * d2 / ell),
            Split::Equal => (r / 2f64.sqrt(), r / 2f64.sqrt()),
        };
        let p1 = extend(&self.left, x1, a1, d1, r1)?;
        let p2 = extend(&self.right, x2, a2, d2, r2)?;
        let (p1, p2) = match (p1, p2) {
            (Some(p1), Some(p2)) => (p1, p2),
            (p1, _) => {
                return Ok(ProductWitness {
                    split,
                    point: None,
                    sphere_residual: f64::INFINITY,
                    extension_residual: f64::INFINITY,
                    failed_component: Some(if p1.is_none() { "left" } else { "right" }),
                });
            }
        };
        let p = Point::pair(p1, p2);
        let dxp = self.distance(x, &p)?.to_f64();
        let dap = self.distance(a, &p)?.to_f64();
        Ok(ProductWitness {
            split,
            point: Some(p),
            sphere_residual: (dxp - r).abs(),
            extension_residual: (dap - ell - r).abs(),
            failed_component: None,
        })
    }
}

/// A point `p` of the factor with `d(x,p) = r` and `d(a,p) = d(a,x) + r`,
/// or `x` itself when `r = 0`.
fn extend(space: &Space, x: &Point, a: &Point, d: f64, r: f64) -> Result<Option<Point>> {
    if r == 0.0 {
        return Ok(Some(x.clone()));
    }
    if d == 0.0 {
        // Any point at distance r extends the constant geodesic.
        return any_point_at(space, x, r);
    }
    match space {
        Space::Model(m) => Ok(m
            .shooting_witness(x.as_model()?, a.as_model()?, &Length::Approx(r))?
            .map(Point::Model)),
        Space::Graph(g) => {
            let (xg, ag) = (x.as_graph()?, a.as_graph()?);
            let rs = Scalar::from_f64(r)?;
            let want = g.distance(ag, xg)? + &rs;
            let from_a = DistanceField::new(g, std::slice::from_ref(ag));
            Ok(g.sphere(xg, &rs)?
                .into_iter()
                .find(|p| from_a.at(p) == want)
                .map(Point::Graph))
        }
        Space::Product(ps) if ps.norm == Norm::L2 => Ok(ps.shooting_witness(x, a, r, Split::Proportional)?.point),
        _ => Err(Error::Unsupported(format!(
            "geodesic extension in a {} factor",
            space.kind()
        ))),
    }
}

/// Some point at distance exactly `r` from `x`, if one exists.
fn any_point_at(space: &Space, x: &Point, r: f64) -> Result<Option<Point>> {
    use crate::model::{ModelPoint, ModelSpace};
    match space {
        Space::Graph(g) => Ok(g
            .sphere(x.as_graph()?, &Scalar::from_f64(r)?)?
            .into_iter()
            .next()
            .map(Point::Graph)),
        Space::Model(m) => {
            let p = match (m, x.as_model()?) {
                (ModelSpace::Line, ModelPoint::Line(c)) => ModelPoint::Line(c + &Scalar::from_f64(r)?),
                (ModelSpace::Euclidean { .. }, ModelPoint::Coords(c))
                | (ModelSpace::HalfPlane, ModelPoint::Coords(c)) => {
                    let mut c = c.clone();
                    c[0] += r;
                    ModelPoint::Coords(c)
                }
                (ModelSpace::Circle { radius }, ModelPoint::Angle(t)) => {
                    if r > std::f64::consts::PI * radius {
                        return Ok(None);
                    }
                    ModelPoint::angle(t + r / radius)
                }
                (ModelSpace::Hyperbolic2, ModelPoint::Coords(c)) => {
                    // Unit tangent at x, Minkowski-orthogonal to x.
                    let n = (1.0 + c[2] * c[2]).sqrt();
                    let u = [c[1] / n, c[0] / n, 0.0];
                    ModelPoint::Coords(c.iter().zip(u).map(|(p, u)| r.cosh() * p + r.sinh() * u).collect())
                }
                _ => return Err(Error::input("point does not match its factor")),
            };
            Ok(Some(Point::Model(p)))
        }
        Space::Product(ps) => {
            let (x1, x2) = x.as_pair()?;
            Ok(any_point_at(&ps.left, x1, r)?.map(|p| Point::pair(p, x2.clone())))
        }
        Space::Quotient(_) => Err(Error::Unsupported("points of a quotient factor".into())),
    }
}

fn factor_contains(space: &Space, c: &Point, r: &Length, p: &Point) -> Result<bool> {
    match space {
        Space::Graph(g) => g
            .ball(c.as_graph()?, r.require_exact("radius")?)?
            .contains(p.as_graph()?),
        _ => Ok(!space.distance(c, p)?.compare(r).is_gt()),
    }
}

/// `d_H(B̄_t(x,y), B̄_s(a,b)) = max(d_H^X(B̄_t(x), B̄_s(a)), d_H^Y(B̄_t(y), B̄_s(b)))`
/// for ℓ∞ products, where balls are products of factor balls.
pub fn product_hausdorff_infty(p: &ProductSpace, b1: &Ball, b2: &Ball) -> Result<Length> {
    if p.norm != Norm::Linf {
        return Err(Error::input(
            "the product Hausdorff formula applies to linf products only",
        ));
    }
    let (x1, x2) = b1.center.as_pair()?;
    let (y1, y2) = b2.center.as_pair()?;
    let left = p.left.hausdorff_balls(
        &Ball {
            center: x1.clone(),
            radius: b1.radius.clone(),
        },
        &Ball {
            center: y1.clone(),
            radius: b2.radius.clone(),
        },
    )?;
    let right = p.right.hausdorff_balls(
        &Ball {
            center: x2.clone(),
            radius: b1.radius.clone(),
        },
        &Ball {
            center: y2.clone(),
            radius: b2.radius.clone(),
        },
    )?;
    Ok(left.max(&right))
}
