//! Quotients of a graph by a finite group of automorphisms.

use crate::error::{Error, Result};
use crate::graph::{Automorphism, GraphPoint, MetricGraph};
use crate::hausdorff::hausdorff_pl;
use crate::length::Length;
use crate::scalar::Scalar;
use crate::shooting::{decide_point, ShootingVerdict};
use crate::space::{Ball, Space};

/// A metric graph modulo a finite group of automorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSpace {
    pub base: MetricGraph,
    group: Vec<Automorphism>,
}

/// One sample of the quotient check: `min_g d_H(B̄_t(x), B̄_s(g·y))` against
/// `d_G(x, y) + |t - s|`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRow {
    pub x: GraphPoint,
    pub t: Scalar,
    pub y: GraphPoint,
    pub s: Scalar,
    pub hausdorff: Scalar,
    pub taxicab: Scalar,
    pub deviation: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuotientReport {
    pub rows: Vec<QuotientRow>,
    pub max_deviation: Scalar,
}

/// Group elements whose image of a ball meets the ball, counted in the
/// graph (balls `B̄_r(x)`) and in the ball hyperspace (`d_H`-balls of
/// radius `r` about `B̄_t(x)`).
#[derive(Clone, Debug, PartialEq)]
pub struct ProperRow {
    pub x: GraphPoint,
    pub t: Scalar,
    pub r: Scalar,
    pub point_returners: usize,
    pub ball_returners: usize,
}

impl QuotientSpace {
    /// Checks every element and closure under composition and inverses
    /// (so the identity is present).
    pub fn new(base: MetricGraph, group: Vec<Automorphism>) -> Result<Self> {
        if group.is_empty() {
            return Err(Error::input("the group must contain at least the identity"));
        }
        for g in &group {
            g.check(&base)?;
        }
        for g in &group {
            if !group.contains(&g.inverse()) {
                return Err(Error::input("the group is not closed under inverses"));
            }
            for h in &group {
                if !group.contains(&g.compose(h)) {
                    return Err(Error::input("the group is not closed under composition"));
                }
            }
        }
        debug_assert!(group.iter().any(Automorphism::is_identity));
        Ok(QuotientSpace { base, group })
    }

    pub fn trivial(base: MetricGraph) -> Self {
        let id = Automorphism::identity(&base);
        QuotientSpace { base, group: vec![id] }
    }

    pub fn into_space(self) -> Space {
        Space::Quotient(Box::new(self))
    }

    pub fn group(&self) -> &[Automorphism] {
        &self.group
    }

    pub fn orbit(&self, p: &GraphPoint) -> Vec<GraphPoint> {
        let mut out: Vec<GraphPoint> = self.group.iter().map(|g| g.apply(&self.base, p)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// `d_G(x, y) = min_g d(x, g·y)`.
    pub fn orbit_distance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Scalar> {
        self.base.validate(x)?;
        self.base.validate(y)?;
        let mut best: Option<Scalar> = None;
        for image in self.orbit(y) {
            let d = self.base.distance(x, &image)?;
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        Ok(best.expect("nonempty group"))
    }

    /// `min_g d_H(B̄_t(x), B̄_s(g·y))`: the distance between the orbits of
    /// two balls.
    pub fn ball_distance(&self, b1: &Ball, b2: &Ball) -> Result<Scalar> {
        let x = b1.center.as_graph()?;
        let y = b2.center.as_graph()?;
        let a = self.base.ball(x, b1.radius.require_exact("radius")?)?;
        let s = b2.radius.require_exact("radius")?;
        let mut best: Option<Scalar> = None;
        for image in self.orbit(y) {
            let d = hausdorff_pl(&a, &self.base.ball(&image, s)?)?;
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
        Ok(best.expect("nonempty group"))
    }

    /// Checks the quotient identity on each sample; every center must have
    /// the shooting property in the base graph.
    pub fn sigma_check(&self, samples: &[(GraphPoint, Scalar, GraphPoint, Scalar)]) -> Result<QuotientReport> {
        if samples.is_empty() {
            return Err(Error::input("no samples"));
        }
        let mut checked: Vec<GraphPoint> = Vec::new();
        let mut require = |p: &GraphPoint| -> Result<()> {
            if checked.contains(p) {
                return Ok(());
            }
            if let ShootingVerdict::Fails(w) = decide_point(&self.base, p)? {
                return Err(Error::Hypothesis(format!(
                    "center {} does not have the shooting property ({})",
                    self.base.describe_point(p),
                    w.reason
                )));
            }
            checked.push(p.clone());
            Ok(())
        };
        for (x, _, y, _) in samples {
            require(x)?;
            require(y)?;
        }
        let mut rows = Vec::with_capacity(samples.len());
        let mut max_deviation = Scalar::zero();
        for (x, t, y, s) in samples {
            let hausdorff = self.ball_distance(
                &Ball::new(x.clone(), Length::Exact(t.clone())),
                &Ball::new(y.clone(), Length::Exact(s.clone())),
            )?;
            let taxicab = self.orbit_distance(x, y)? + (t - s).abs();
            let deviation = (&taxicab - &hausdorff).abs();
            if deviation > max_deviation {
                max_deviation = deviation.clone();
            }
            rows.push(QuotientRow {
                x: x.clone(),
                t: t.clone(),
                y: y.clone(),
                s: s.clone(),
                hausdorff,
                taxicab,
                deviation,
            });
        }
        Ok(QuotientReport { rows, max_deviation })
    }

    /// Counts, for each sample `(x, t, r)`, the group elements with
    /// `g(B̄_r(x)) ∩ B̄_r(x) ≠ ∅` (equivalently `d(x, g·x) <= 2r`) and those
    /// moving the hyperspace ball of radius `r` about `B̄_t(x)` onto itself
    /// in part (`d_H(B̄_t(x), B̄_t(g·x)) <= 2r`).
    pub fn properness(&self, samples: &[(GraphPoint, Scalar, Scalar)]) -> Result<Vec<ProperRow>> {
        let mut rows = Vec::new();
        for (x, t, r) in samples {
            let twice = r + r;
            let ball = self.base.ball(x, t)?;
            let mut point_returners = 0;
            let mut ball_returners = 0;
            for g in &self.group {
                let gx = g.apply(&self.base, x);
                if self.base.distance(x, &gx)? <= twice {
                    point_returners += 1;
                }
                if hausdorff_pl(&ball, &self.base.ball(&gx, t)?)? <= twice {
                    ball_returners += 1;
                }
            }
            rows.push(ProperRow {
                x: x.clone(),
                t: t.clone(),
                r: r.clone(),
                point_returners,
                ball_returners,
            });
        }
        Ok(rows)
    }
}
