//! Point isometries: graph automorphisms and rigid motions of model spaces.

use crate::error::{Error, Result};
use crate::graph::Automorphism;
use crate::length::FLOAT_TOL;
use crate::model::{ModelPoint, ModelSpace};
use crate::scalar::Scalar;
use crate::space::{Point, Space};

/// A distance-preserving map of a model space.
#[derive(Clone, Debug, PartialEq)]
pub enum Motion {
    /// `x ↦ ±x + shift` on the line.
    Line { flip: bool, shift: Scalar },
    /// `x ↦ A x + b` with `A` orthogonal, on Euclidean space or (with `A`
    /// fixing the vertical axis and `b_v = 0`) the half-plane.
    Affine { linear: Vec<Vec<f64>>, shift: Vec<f64> },
    /// A matrix preserving the Minkowski form and the upper sheet, acting
    /// on hyperboloid coordinates.
    Lorentz { matrix: [[f64; 3]; 3] },
    /// `θ ↦ ±θ + rotate` on a circle.
    Circle { reflect: bool, rotate: f64 },
}

impl Motion {
    /// Rotation of the Euclidean plane by `angle` about the origin.
    pub fn rotation(angle: f64) -> Motion {
        let (s, c) = angle.sin_cos();
        Motion::Affine {
            linear: vec![vec![c, -s], vec![s, c]],
            shift: vec![0.0, 0.0],
        }
    }

    /// Hyperbolic translation along the `x1` axis by `len`.
    pub fn boost(len: f64) -> Motion {
        let (ch, sh) = (len.cosh(), len.sinh());
        Motion::Lorentz {
            matrix: [[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn check(&self, m: &ModelSpace) -> Result<()> {
        let bad = |why: &str| Err(Error::input(format!("not an isometry of the {}: {why}", m.kind())));
        match (self, m) {
            (Motion::Line { .. }, ModelSpace::Line) => Ok(()),
            (Motion::Circle { rotate, .. }, ModelSpace::Circle { .. }) => {
                if rotate.is_finite() {
                    Ok(())
                } else {
                    bad("non-finite rotation")
                }
            }
            (Motion::Affine { linear, shift }, ModelSpace::Euclidean { .. } | ModelSpace::HalfPlane) => {
                let n = if let ModelSpace::Euclidean { dim } = m { *dim } else { 2 };
                if linear.len() != n || linear.iter().any(|row| row.len() != n) || shift.len() != n {
                    return bad("dimension mismatch");
                }
                for i in 0..n {
                    for j in 0..n {
                        let dot: f64 = (0..n).map(|k| linear[k][i] * linear[k][j]).sum();
                        let want = if i == j { 1.0 } else { 0.0 };
                        if (dot - want).abs() > FLOAT_TOL {
                            return bad("linear part is not orthogonal");
                        }
                    }
                }
                if *m == ModelSpace::HalfPlane
                    && ((linear[1][1] - 1.0).abs() > FLOAT_TOL || linear[1][0].abs() > FLOAT_TOL || shift[1] != 0.0)
                {
                    return bad("must fix the boundary line and the vertical direction");
                }
                Ok(())
            }
            (Motion::Lorentz { matrix }, ModelSpace::Hyperbolic2) => {
                let eta = [1.0, -1.0, -1.0];
                for i in 0..3 {
                    for j in 0..3 {
                        let form: f64 = (0..3).map(|k| eta[k] * matrix[k][i] * matrix[k][j]).sum();
                        let want = if i == j { eta[i] } else { 0.0 };
                        if (form - want).abs() > 1e-9 * (1.0 + want.abs()) {
                            return bad("does not preserve the Minkowski form");
                        }
                    }
                }
                if matrix[0][0] <= 0.0 {
                    return bad("swaps the hyperboloid sheets");
                }
                Ok(())
            }
            _ => bad("motion kind does not match the space"),
        }
    }

    pub fn apply(&self, p: &ModelPoint) -> Result<ModelPoint> {
        Ok(match (self, p) {
            (Motion::Line { flip, shift }, ModelPoint::Line(x)) => {
                ModelPoint::Line(if *flip { shift - x } else { x + shift })
            }
            (Motion::Circle { reflect, rotate }, ModelPoint::Angle(a)) => {
                ModelPoint::angle(if *reflect { rotate - a } else { a + rotate })
            }
            (Motion::Affine { linear, shift }, ModelPoint::Coords(c)) => ModelPoint::Coords(
                linear
                    .iter()
                    .zip(shift)
                    .map(|(row, b)| row.iter().zip(c).map(|(a, x)| a * x).sum::<f64>() + b)
                    .collect(),
            ),
            (Motion::Lorentz { matrix }, ModelPoint::Coords(c)) => {
                let mut out: Vec<f64> = matrix
                    .iter()
                    .map(|row| row.iter().zip(c).map(|(a, x)| a * x).sum())
                    .collect();
                // Re-project onto the sheet to keep rounding from accumulating.
                out[0] = (1.0 + out[1] * out[1] + out[2] * out[2]).sqrt();
                ModelPoint::Coords(out)
            }
            _ => return Err(Error::input("motion does not act on this kind of point")),
        })
    }
}

/// An isometry of a graph or model space.
#[derive(Clone, Debug, PartialEq)]
pub enum Isometry {
    Graph(Automorphism),
    Motion(Motion),
}

impl Isometry {
    pub fn check(&self, space: &Space) -> Result<()> {
        match (self, space) {
            (Isometry::Graph(a), Space::Graph(g)) => a.check(g),
            (Isometry::Motion(m), Space::Model(ms)) => m.check(ms),
            _ => Err(Error::input(format!(
                "isometry does not act on a {} space",
                space.kind()
            ))),
        }
    }

    pub fn apply(&self, space: &Space, p: &Point) -> Result<Point> {
        match (self, space) {
            (Isometry::Graph(a), Space::Graph(g)) => Ok(Point::Graph(a.apply(g, p.as_graph()?))),
            (Isometry::Motion(m), Space::Model(_)) => Ok(Point::Model(m.apply(p.as_model()?)?)),
            _ => Err(Error::input(format!(
                "isometry does not act on a {} space",
                space.kind()
            ))),
        }
    }
}
