//! The ball hyperspace `Σ(X)` with the Hausdorff metric.
//!
//! `Σ(X)` is never materialized; balls are values and `d_H` is computed on
//! demand. The map `f(x, t) = B̄_t(x)` is compared with the taxicab metric
//! `d_T((x,t),(y,s)) = d(x,y) + |t - s|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isometry::Isometry;
use crate::length::{Length, FLOAT_TOL};
use crate::sample::Sample;
use crate::scalar::Scalar;
use crate::space::{Ball, Point, Space};

#[derive(Clone, Debug, PartialEq)]
pub struct TaxicabRow {
    pub hausdorff: Length,
    pub taxicab: Length,
    /// `|d_H - d_T|`.
    pub deviation: Length,
    /// `d_H <= d_T` (within [`FLOAT_TOL`] on float spaces).
    pub lipschitz: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaxicabReport {
    pub rows: Vec<TaxicabRow>,
    /// Index of the first sample attaining the largest deviation.
    pub worst: usize,
}

impl TaxicabReport {
    pub fn max_deviation(&self) -> &Length {
        &self.rows[self.worst].deviation
    }

    pub fn lipschitz_holds(&self) -> bool {
        self.rows.iter().all(|r| r.lipschitz)
    }
}

/// `d_T((x,t),(y,s))`.
pub fn taxicab(space: &Space, sample: &Sample) -> Result<Length> {
    Ok(space
        .distance(&sample.x, &sample.y)?
        .plus(&sample.t.abs_diff(&sample.s)))
}

pub fn taxicab_row(space: &Space, sample: &Sample) -> Result<TaxicabRow> {
    let (b1, b2) = sample.balls();
    let hausdorff = space.hausdorff_balls(&b1, &b2)?;
    let taxicab = taxicab(space, sample)?;
    let slack = taxicab.minus(&hausdorff);
    let lipschitz = match &slack {
        Length::Exact(v) => !v.is_negative(),
        Length::Approx(v) => *v >= -FLOAT_TOL,
    };
    Ok(TaxicabRow {
        deviation: slack.abs(),
        hausdorff,
        taxicab,
        lipschitz,
    })
}

/// Per-sample `|d_H(B̄_t(x), B̄_s(y)) - (d(x,y) + |t - s|)|`, evaluated in
/// parallel; rows are in sample order.
pub fn taxicab_deviation(space: &Space, samples: &[Sample]) -> Result<TaxicabReport> {
    if samples.is_empty() {
        return Err(Error::input("no samples"));
    }
    let rows = samples
        .par_iter()
        .map(|s| taxicab_row(space, s))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0;
    for (i, row) in rows.iter().enumerate() {
        if row.deviation.compare(&rows[worst].deviation).is_gt() {
            worst = i;
        }
    }
    Ok(TaxicabReport { rows, worst })
}

/// Whether two balls are the same set: exact set equality on graphs,
/// `d_H <= tol` elsewhere.
pub fn same_ball(space: &Space, b1: &Ball, b2: &Ball) -> Result<bool> {
    match space {
        Space::Graph(g) => {
            let a = g.ball(b1.center.as_graph()?, b1.radius.require_exact("radius")?)?;
            let b = g.ball(b2.center.as_graph()?, b2.radius.require_exact("radius")?)?;
            a.same_set(&b)
        }
        _ => Ok(space.hausdorff_balls(b1, b2)?.is_zero_within(FLOAT_TOL)),
    }
}

/// Pairs `(i, j)`, `i < j`, of samples `(x_i, t_i) ≠ (x_j, t_j)` whose balls
/// coincide: collisions of `f`.
pub fn f_injectivity_check(space: &Space, balls: &[Ball]) -> Result<Vec<(usize, usize)>> {
    for b in balls {
        space.validate_ball(b)?;
    }
    let pairs: Vec<(usize, usize)> = (0..balls.len())
        .flat_map(|i| (i + 1..balls.len()).map(move |j| (i, j)))
        .collect();
    let hits = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&balls[i], &balls[j]);
            let same_params = space.distance(&a.center, &b.center)?.is_zero_within(0.0)
                && a.radius.abs_diff(&b.radius).is_zero_within(0.0);
            Ok((!same_params && same_ball(space, a, b)?).then_some((i, j)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// All midpoints `m` of `(p, q)`: `d(p,m) = d(q,m) = d(p,q)/2`.
pub fn midpoint_census(space: &Space, p: &Point, q: &Point) -> Result<Vec<Point>> {
    let d = space.distance(p, q)?;
    if d.is_zero_within(0.0) {
        return Err(Error::input("midpoints need p != q"));
    }
    space.geodesic_points(p, q, &halve(&d))
}

fn halve(x: &Length) -> Length {
    match x {
        Length::Exact(v) => Length::Exact(v.half()),
        Length::Approx(v) => Length::Approx(v / 2.0),
    }
}

fn fraction(x: &Length, i: usize, k: usize) -> Length {
    match x {
        Length::Exact(v) => Length::Exact(v * &Scalar::ratio(i as i64, k as i64)),
        Length::Approx(v) => Length::Approx(v * i as f64 / k as f64),
    }
}

/// A candidate midpoint ball with its distances to both ends.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaMidpoint {
    pub ball: Ball,
    pub to_first: Length,
    pub to_second: Length,
    /// `d_H(B1, B2) / 2`.
    pub target: Length,
    pub verified: bool,
}

/// Midpoints of `(B̄_r(x), B̄_s(y))` in `Σ(X)` drawn from the taxicab
/// midpoint set: `B̄_τ(z)` with `z` at distance `a` from `x` on a geodesic to
/// `y` and `|τ - r| + a = |τ - s| + d(x,y) - a = (d(x,y) + |r - s|) / 2`.
/// The parameter `a` runs over `k + 1` evenly spaced values in `[0, d]`
/// plus `d/2` (which gives `B̄_{(r+s)/2}` of the point midpoints). Every
/// candidate is checked directly with `d_H`.
pub fn sigma_midpoints(space: &Space, b1: &Ball, b2: &Ball, k: usize) -> Result<Vec<SigmaMidpoint>> {
    space.validate_ball(b1)?;
    space.validate_ball(b2)?;
    let d = space.distance(&b1.center, &b2.center)?;
    let (r, s) = (&b1.radius, &b2.radius);
    let half = halve(&d.plus(&r.abs_diff(s)));
    let target = halve(&space.hausdorff_balls(b1, b2)?);
    let tol = if space.is_exact() { 0.0 } else { FLOAT_TOL };
    let k = k.max(1);
    let mut params: Vec<Length> = (0..=k).map(|i| fraction(&d, i, k)).collect();
    params.push(halve(&d));

    let mut out: Vec<SigmaMidpoint> = Vec::new();
    for a in &params {
        let spare = half.minus(a);
        if spare.is_negative() && !spare.is_zero_within(tol) {
            continue;
        }
        let spare = spare.max(&Length::zero());
        for tau in [r.plus(&spare), r.minus(&spare)] {
            if tau.is_negative() {
                continue;
            }
            let other = tau.abs_diff(s).plus(&d.minus(a));
            if !other.minus(&half).is_zero_within(tol) {
                continue;
            }
            for z in space.geodesic_points(&b1.center, &b2.center, a)? {
                let ball = Ball {
                    center: z,
                    radius: tau.clone(),
                };
                if out.iter().any(|m| same_ball(space, &m.ball, &ball).unwrap_or(false)) {
                    continue;
                }
                let to_first = space.hausdorff_balls(b1, &ball)?;
                let to_second = space.hausdorff_balls(&ball, b2)?;
                let verified =
                    to_first.minus(&target).is_zero_within(tol) && to_second.minus(&target).is_zero_within(tol);
                out.push(SigmaMidpoint {
                    ball,
                    to_first,
                    to_second,
                    target: target.clone(),
                    verified,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftRow {
    pub before: Length,
    pub after: Length,
    pub deviation: Length,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftReport {
    pub rows: Vec<LiftRow>,
    pub max_deviation: Length,
}

impl LiftReport {
    pub fn preserved(&self, tol: f64) -> bool {
        self.max_deviation.is_zero_within(tol)
    }
}

/// Checks `d_H(F(B1), F(B2)) = d_H(B1, B2)` for `F(B̄_r(x)) = B̄_r(iso(x))`
/// on every sample.
pub fn lift_isometry(space: &Space, iso: &Isometry, samples: &[Sample]) -> Result<LiftReport> {
    iso.check(space)?;
    if samples.is_empty() {
        return Err(Error::input("no samples"));
    }
    let rows = samples
        .par_iter()
        .map(|sample| {
            let (b1, b2) = sample.balls();
            let before = space.hausdorff_balls(&b1, &b2)?;
            let f1 = Ball {
                center: iso.apply(space, &b1.center)?,
                radius: b1.radius.clone(),
            };
            let f2 = Ball {
                center: iso.apply(space, &b2.center)?,
                radius: b2.radius.clone(),
            };
            let after = space.hausdorff_balls(&f1, &f2)?;
            Ok(LiftRow {
                deviation: after.abs_diff(&before),
                before,
                after,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = rows
        .iter()
        .map(|r| r.deviation.clone())
        .reduce(|a, b| a.max(&b))
        .expect("nonempty samples");
    Ok(LiftReport { rows, max_deviation })
}
