//! Closed-form length spaces: the line, Euclidean space, the hyperbolic
//! plane, circles and the closed Euclidean half-plane.
//!
//! The line works in exact rationals. Everything else is floating point and
//! every verdict carries the measured residual.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::length::{Length, FLOAT_TOL};
use crate::scalar::Scalar;

const HYPERBOLOID_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSpace {
    /// The real line with exact coordinates.
    Line,
    /// `R^dim` with `1 <= dim <= 3`.
    Euclidean { dim: usize },
    /// Hyperbolic plane of curvature -1 in hyperboloid coordinates
    /// `(x0, x1, x2)` with `x0^2 - x1^2 - x2^2 = 1`, `x0 > 0`.
    Hyperbolic2,
    /// Circle of the given radius, points as angles.
    Circle { radius: f64 },
    /// `{(u, v) : v >= 0}` with the restricted Euclidean metric.
    HalfPlane,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelPoint {
    Line(Scalar),
    Coords(Vec<f64>),
    Angle(f64),
}

impl ModelPoint {
    /// Hyperboloid point above `(x1, x2)`.
    pub fn hyperbolic(x1: f64, x2: f64) -> Self {
        ModelPoint::Coords(vec![(1.0 + x1 * x1 + x2 * x2).sqrt(), x1, x2])
    }

    /// Angle reduced into `[0, 2π)`.
    pub fn angle(theta: f64) -> Self {
        ModelPoint::Angle(theta.rem_euclid(2.0 * PI))
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            ModelPoint::Coords(c) => Some(c),
            _ => None,
        }
    }
}

fn minkowski(p: &[f64], q: &[f64]) -> f64 {
    p[0] * q[0] - p[1] * q[1] - p[2] * q[2]
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn sub(p: &[f64], q: &[f64]) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a - b).collect()
}

/// Shortest angular separation in `[0, π]`.
fn angular(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

impl ModelSpace {
    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpace::Line => "line",
            ModelSpace::Euclidean { .. } => "euclidean",
            ModelSpace::Hyperbolic2 => "hyperbolic2",
            ModelSpace::Circle { .. } => "circle",
            ModelSpace::HalfPlane => "halfplane",
        }
    }

    /// Whether every point of the space has the shooting property.
    pub fn has_shooting(&self) -> bool {
        matches!(
            self,
            ModelSpace::Line | ModelSpace::Euclidean { .. } | ModelSpace::Hyperbolic2
        )
    }

    pub fn validate(&self, p: &ModelPoint) -> Result<()> {
        let bad = |why: String| Err(Error::input(format!("invalid {} point {p:?}: {why}", self.kind())));
        match (self, p) {
            (ModelSpace::Line, ModelPoint::Line(_)) => Ok(()),
            (ModelSpace::Euclidean { dim }, ModelPoint::Coords(c)) => {
                if c.len() != *dim {
                    bad(format!("expected {dim} coordinates"))
                } else if c.iter().any(|x| !x.is_finite()) {
                    bad("non-finite coordinate".into())
                } else {
                    Ok(())
                }
            }
            (ModelSpace::Hyperbolic2, ModelPoint::Coords(c)) => {
                if c.len() != 3 || c.iter().any(|x| !x.is_finite()) {
                    return bad("expected 3 finite hyperboloid coordinates".into());
                }
                let residual = (minkowski(c, c) - 1.0).abs();
                if c[0] <= 0.0 || residual > HYPERBOLOID_TOL * (1.0 + c[0] * c[0]) {
                    bad(format!("off the upper hyperboloid sheet (residual {residual:e})"))
                } else {
                    Ok(())
                }
            }
            (ModelSpace::Circle { radius }, ModelPoint::Angle(a)) => {
                if !(radius.is_finite() && *radius > 0.0) {
                    bad(format!("circle radius {radius} must be positive"))
                } else if !a.is_finite() {
                    bad("non-finite angle".into())
                } else {
                    Ok(())
                }
            }
            (ModelSpace::HalfPlane, ModelPoint::Coords(c)) => {
                if c.len() != 2 || c.iter().any(|x| !x.is_finite()) {
                    bad("expected 2 finite coordinates".into())
                } else if c[1] < 0.0 {
                    bad("v must be nonnegative".into())
                } else {
                    Ok(())
                }
            }
            _ => bad("wrong point kind for this space".into()),
        }
    }

    fn line_coord(p: &ModelPoint) -> &Scalar {
        match p {
            ModelPoint::Line(x) => x,
            _ => unreachable!("validated line point"),
        }
    }

    fn coords(p: &ModelPoint) -> &[f64] {
        p.coords().expect("validated coordinate point")
    }

    fn angle_of(p: &ModelPoint) -> f64 {
        match p {
            ModelPoint::Angle(a) => *a,
            _ => unreachable!("validated circle point"),
        }
    }

    pub fn distance(&self, p: &ModelPoint, q: &ModelPoint) -> Result<Length> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(self.distance_unchecked(p, q))
    }

    fn distance_unchecked(&self, p: &ModelPoint, q: &ModelPoint) -> Length {
        match self {
            ModelSpace::Line => Length::Exact((Self::line_coord(p) - Self::line_coord(q)).abs()),
            ModelSpace::Euclidean { .. } | ModelSpace::HalfPlane => {
                Length::Approx(norm(&sub(Self::coords(p), Self::coords(q))))
            }
            ModelSpace::Hyperbolic2 => {
                // Chord form: stays accurate for nearby points, where
                // acosh of the pairing loses half the digits.
                let diff = sub(Self::coords(p), Self::coords(q));
                let chord2 = (diff[1] * diff[1] + diff[2] * diff[2] - diff[0] * diff[0]).max(0.0);
                Length::Approx(2.0 * (chord2.sqrt() / 2.0).asinh())
            }
            ModelSpace::Circle { radius } => Length::Approx(radius * angular(Self::angle_of(p), Self::angle_of(q))),
        }
    }

    /// Farthest distance from `y` attained inside the closed ball `B̄_r(x)`.
    pub fn ball_far(&self, x: &ModelPoint, r: &Length, y: &ModelPoint) -> Result<Length> {
        self.validate(x)?;
        self.validate(y)?;
        if r.is_negative() {
            return Err(Error::input(format!("negative radius {r}")));
        }
        let d = self.distance_unchecked(x, y);
        Ok(match self {
            ModelSpace::Line | ModelSpace::Euclidean { .. } | ModelSpace::Hyperbolic2 => d.plus(r),
            ModelSpace::Circle { radius } => {
                let reach = angular(Self::angle_of(x), Self::angle_of(y)) + r.to_f64() / radius;
                Length::Approx(radius * reach.min(PI))
            }
            ModelSpace::HalfPlane => Length::Approx(half_plane_far(Self::coords(x), r.to_f64(), Self::coords(y))),
        })
    }

    /// `d_H(B̄_t(x), B̄_s(y))` via the inclusion form, valid in any length
    /// space: `max(0, far(x,t;y) - s, far(y,s;x) - t)`.
    pub fn ball_hausdorff(&self, x: &ModelPoint, t: &Length, y: &ModelPoint, s: &Length) -> Result<Length> {
        let one = self.ball_far(x, t, y)?.minus(s);
        let two = self.ball_far(y, s, x)?.minus(t);
        Ok(one.max(&two).max(&Length::zero()))
    }

    /// `d(y,x) + r - max_{p ∈ B̄_r(x)} d(y,p)`.
    pub fn shooting_gap(&self, x: &ModelPoint, y: &ModelPoint, r: &Length) -> Result<Length> {
        self.check_shooting_args(x, y, r)?;
        let d = self.distance_unchecked(x, y);
        Ok(d.plus(r).minus(&self.ball_far(x, r, y)?))
    }

    fn check_shooting_args(&self, x: &ModelPoint, y: &ModelPoint, r: &Length) -> Result<()> {
        self.validate(x)?;
        self.validate(y)?;
        if r.is_negative() || r.is_zero_within(0.0) {
            return Err(Error::input(format!("shooting radius must be positive, got {r}")));
        }
        if self.distance_unchecked(x, y).is_zero_within(0.0) {
            return Err(Error::input("shooting needs y != x"));
        }
        Ok(())
    }

    /// Endpoint of the geodesic from `y` through `x` extended by `r` past
    /// `x`, when that extension exists and stays distance realizing.
    pub fn shooting_witness(&self, x: &ModelPoint, y: &ModelPoint, r: &Length) -> Result<Option<ModelPoint>> {
        self.check_shooting_args(x, y, r)?;
        let rf = r.to_f64();
        let p = match self {
            ModelSpace::Line => {
                let (xc, yc) = (Self::line_coord(x), Self::line_coord(y));
                match r {
                    Length::Exact(rs) => Some(ModelPoint::Line(if xc > yc { xc + rs } else { xc - rs })),
                    Length::Approx(_) => {
                        let sign = if xc > yc { 1.0 } else { -1.0 };
                        Some(ModelPoint::Line(Scalar::from_f64(xc.to_f64() + sign * rf)?))
                    }
                }
            }
            ModelSpace::Euclidean { .. } | ModelSpace::HalfPlane => {
                let (xc, yc) = (Self::coords(x), Self::coords(y));
                let w = sub(xc, yc);
                let n = norm(&w);
                let mut p: Vec<f64> = xc.iter().zip(&w).map(|(a, b)| a + rf * b / n).collect();
                if *self == ModelSpace::HalfPlane {
                    if p[1] < -FLOAT_TOL {
                        return Ok(None);
                    }
                    p[1] = p[1].max(0.0);
                }
                Some(ModelPoint::Coords(p))
            }
            ModelSpace::Hyperbolic2 => {
                let (xc, yc) = (Self::coords(x), Self::coords(y));
                let c = minkowski(xc, yc);
                // tangent at x pointing towards y, then reversed
                let toward: Vec<f64> = yc.iter().zip(xc).map(|(b, a)| b - c * a).collect();
                let scale = (c * c - 1.0).sqrt();
                let p: Vec<f64> = xc
                    .iter()
                    .zip(&toward)
                    .map(|(a, u)| rf.cosh() * a - rf.sinh() * u / scale)
                    .collect();
                Some(ModelPoint::Coords(p))
            }
            ModelSpace::Circle { radius } => {
                let (xa, ya) = (Self::angle_of(x), Self::angle_of(y));
                let sep = angular(xa, ya);
                if sep + rf / radius > PI + FLOAT_TOL {
                    return Ok(None);
                }
                // walk away from y along the shorter arc through x
                let forward = (xa - ya).rem_euclid(2.0 * PI) <= PI;
                let step = if forward { rf / radius } else { -rf / radius };
                Some(ModelPoint::angle(xa + step))
            }
        };
        Ok(p)
    }

    /// Residuals `(|d(x,p) - r|, |d(y,p) - (d(y,x) + r)|)` of a witness.
    pub fn witness_residuals(&self, x: &ModelPoint, y: &ModelPoint, r: &Length, p: &ModelPoint) -> (f64, f64) {
        let dxp = self.distance_unchecked(x, p).to_f64();
        let dyp = self.distance_unchecked(y, p).to_f64();
        let dyx = self.distance_unchecked(y, x).to_f64();
        ((dxp - r.to_f64()).abs(), (dyp - dyx - r.to_f64()).abs())
    }

    /// All midpoints of `(p, q)`.
    pub fn midpoints(&self, p: &ModelPoint, q: &ModelPoint) -> Result<Vec<ModelPoint>> {
        self.validate(p)?;
        self.validate(q)?;
        if self.distance_unchecked(p, q).is_zero_within(0.0) {
            return Err(Error::input("midpoints need p != q"));
        }
        Ok(match self {
            ModelSpace::Line => vec![ModelPoint::Line((Self::line_coord(p) + Self::line_coord(q)).half())],
            ModelSpace::Euclidean { .. } | ModelSpace::HalfPlane => {
                let m = Self::coords(p)
                    .iter()
                    .zip(Self::coords(q))
                    .map(|(a, b)| 0.5 * (a + b))
                    .collect();
                vec![ModelPoint::Coords(m)]
            }
            ModelSpace::Hyperbolic2 => {
                let s: Vec<f64> = Self::coords(p)
                    .iter()
                    .zip(Self::coords(q))
                    .map(|(a, b)| a + b)
                    .collect();
                let n = minkowski(&s, &s).sqrt();
                vec![ModelPoint::Coords(s.iter().map(|x| x / n).collect())]
            }
            ModelSpace::Circle { .. } => {
                let (a, b) = (Self::angle_of(p), Self::angle_of(q));
                let sep = angular(a, b);
                if (sep - PI).abs() <= FLOAT_TOL {
                    vec![ModelPoint::angle(a + PI / 2.0), ModelPoint::angle(a - PI / 2.0)]
                } else {
                    let forward = (b - a).rem_euclid(2.0 * PI) <= PI;
                    let half = if forward { sep / 2.0 } else { -sep / 2.0 };
                    vec![ModelPoint::angle(a + half)]
                }
            }
        })
    }

    /// Points at distance `a` from `x` on a geodesic to `y`; two on the
    /// circle when `x` and `y` are antipodal.
    pub fn geodesic_points(&self, x: &ModelPoint, y: &ModelPoint, a: &Length) -> Result<Vec<ModelPoint>> {
        self.validate(x)?;
        self.validate(y)?;
        let d = self.distance_unchecked(x, y);
        let af = a.to_f64();
        if d.is_zero_within(0.0) {
            return Ok(vec![x.clone()]);
        }
        let df = d.to_f64();
        let u = af / df;
        Ok(match self {
            ModelSpace::Line => {
                let (xc, yc) = (Self::line_coord(x), Self::line_coord(y));
                let step = match a {
                    Length::Exact(s) => s.clone(),
                    Length::Approx(v) => Scalar::from_f64(*v)?,
                };
                vec![ModelPoint::Line(if yc > xc { xc + &step } else { xc - &step })]
            }
            ModelSpace::Euclidean { .. } | ModelSpace::HalfPlane => {
                let p = Self::coords(x)
                    .iter()
                    .zip(Self::coords(y))
                    .map(|(p, q)| p + u * (q - p))
                    .collect();
                vec![ModelPoint::Coords(p)]
            }
            ModelSpace::Hyperbolic2 => {
                let (wx, wy) = ((df - af).sinh() / df.sinh(), af.sinh() / df.sinh());
                let p = Self::coords(x)
                    .iter()
                    .zip(Self::coords(y))
                    .map(|(p, q)| wx * p + wy * q)
                    .collect();
                vec![ModelPoint::Coords(p)]
            }
            ModelSpace::Circle { radius } => {
                let (xa, ya) = (Self::angle_of(x), Self::angle_of(y));
                let step = af / radius;
                if (angular(xa, ya) - PI).abs() <= FLOAT_TOL {
                    vec![ModelPoint::angle(xa + step), ModelPoint::angle(xa - step)]
                } else if (ya - xa).rem_euclid(2.0 * PI) <= PI {
                    vec![ModelPoint::angle(xa + step)]
                } else {
                    vec![ModelPoint::angle(xa - step)]
                }
            }
        })
    }
}

/// Farthest distance from `y` over the truncated disc `D(x, t) ∩ {v >= 0}`.
///
/// The maximum of a convex function over that set is attained at an extreme
/// point: either the boundary point of the circle in the direction away from
/// `y`, or one of the two corners where the circle meets `v = 0`.
fn half_plane_far(x: &[f64], t: f64, y: &[f64]) -> f64 {
    let w = sub(x, y);
    let n = norm(&w);
    if t == 0.0 {
        return n;
    }
    if n == 0.0 {
        return t;
    }
    let apex_v = x[1] + t * w[1] / n;
    if apex_v >= 0.0 {
        return n + t;
    }
    let half_chord = (t * t - x[1] * x[1]).max(0.0).sqrt();
    let corner = |u: f64| ((u - y[0]).powi(2) + y[1] * y[1]).sqrt();
    corner(x[0] - half_chord).max(corner(x[0] + half_chord))
}
