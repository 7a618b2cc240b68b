//! Deciding the shooting property on metric graphs.
//!
//! The property at `x` asks that for every `y ≠ x` and `r > 0` some point of
//! `B̄_r(x)` lies at distance `d(y,x) + r` from `y`; equivalently the gap
//! `d(y,x) + r - max_{p ∈ B̄_r(x)} d(y,p)` vanishes.
//!
//! On a compact graph the property fails for radii beyond the eccentricity.
//! Otherwise only the rays reach far, and for a deep point `p_ρ` on each
//! ray the deficiency
//!
//! ```text
//! δ_ρ(y) = d(y,x) + d(x,p_ρ) - d(y,p_ρ) >= 0
//! ```
//!
//! vanishes exactly when `x` lies on a geodesic from `y` to `p_ρ`, in which
//! case the geodesic extends along `ρ` forever. The property holds at `x`
//! iff the zero sets of the `δ_ρ` cover the graph. Each `δ_ρ` is piecewise
//! linear on every segment, so the zero sets are finite unions of closed
//! intervals and the coverage test is exact. Beyond the probe depth every
//! `δ_ρ` is constant along each ray, so checking up to that depth suffices.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceField, GraphPoint, Intervals, MetricGraph, Segment};
use crate::scalar::Scalar;
use crate::space::graph_ball_far;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FailReason {
    /// The graph is compact: large spheres are empty.
    EmptySphere,
    /// Some open piece of a segment is not covered by any ray's zero set.
    UncoveredSegment,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::EmptySphere => "empty sphere",
            FailReason::UncoveredSegment => "uncovered segment",
        })
    }
}

impl std::str::FromStr for FailReason {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "empty sphere" => Ok(FailReason::EmptySphere),
            "uncovered segment" => Ok(FailReason::UncoveredSegment),
            other => Err(Error::input(format!("unknown failure reason {other:?}"))),
        }
    }
}

/// `(y, r)` with a positive shooting gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub y: GraphPoint,
    pub r: Scalar,
    pub gap: Scalar,
    pub reason: FailReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ShootingVerdict {
    Holds,
    Fails(Witness),
}

impl ShootingVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ShootingVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ShootingVerdict::Holds => None,
            ShootingVerdict::Fails(w) => Some(w),
        }
    }
}

fn check_args(g: &MetricGraph, x: &GraphPoint, y: &GraphPoint, r: &Scalar) -> Result<()> {
    g.validate(x)?;
    g.validate(y)?;
    if !r.is_positive() {
        return Err(Error::input(format!("shooting radius must be positive, got {r}")));
    }
    if x == y {
        return Err(Error::input("shooting needs y != x"));
    }
    Ok(())
}

/// `d(y,x) + r - max_{p ∈ B̄_r(x)} d(y,p)`, exact.
pub fn shooting_gap(g: &MetricGraph, x: &GraphPoint, y: &GraphPoint, r: &Scalar) -> Result<Scalar> {
    check_args(g, x, y, r)?;
    Ok(g.distance(y, x)? + r - graph_ball_far(g, x, r, y)?)
}

/// Points `p` with `d(x,p) = r` and `d(y,p) = d(y,x) + r`: the ends of the
/// extensions of geodesics from `y` through `x`.
pub fn shooting_witnesses(g: &MetricGraph, x: &GraphPoint, y: &GraphPoint, r: &Scalar) -> Result<Vec<GraphPoint>> {
    check_args(g, x, y, r)?;
    let want = g.distance(y, x)? + r;
    let from_y = DistanceField::new(g, std::slice::from_ref(y));
    Ok(g.sphere(x, r)?.into_iter().filter(|p| from_y.at(p) == want).collect())
}

/// Offset of the deep probe on each ray: beyond every breakpoint of the
/// deficiency functions.
pub fn probe_depth(g: &MetricGraph, x: &GraphPoint) -> Result<Scalar> {
    g.validate(x)?;
    let reach = g
        .ray_ids()
        .map(|r| g.vertex_to_point(g.ray_base(r), x))
        .max()
        .unwrap_or_else(Scalar::zero);
    Ok(Scalar::one() + g.total_length() + reach)
}

/// Exact decision of the shooting property at `x`, over all `y` and `r`.
pub fn decide_point(g: &MetricGraph, x: &GraphPoint) -> Result<ShootingVerdict> {
    g.validate(x)?;
    if g.ray_count() == 0 {
        return decide_compact(g, x);
    }
    let depth = probe_depth(g, x)?;
    let from_x = DistanceField::new(g, std::slice::from_ref(x));
    let probes: Vec<(DistanceField<'_>, Scalar)> = g
        .ray_ids()
        .map(|r| {
            let p = GraphPoint::Ray(r, depth.clone());
            let reach = from_x.at(&p);
            (DistanceField::new(g, &[p]), reach)
        })
        .collect();
    for seg in g.segments() {
        let hi = g.segment_len(seg).cloned().unwrap_or_else(|| depth.clone());
        let lo = Scalar::zero();
        let own = from_x.profile(seg, &lo, &hi);
        let mut covered = Intervals::empty();
        for (field, reach) in &probes {
            let deficiency = own.combine(&field.profile(seg, &lo, &hi), |dx, dp| dx + reach - dp);
            covered = covered.union(&deficiency.sublevel(&Scalar::zero()));
        }
        if let Some((a, b)) = covered.gaps_within(&lo, &hi).into_iter().next() {
            let y = g.point(seg, (a + b).half())?;
            return uncovered_witness(g, x, y, &depth).map(ShootingVerdict::Fails);
        }
    }
    Ok(ShootingVerdict::Holds)
}

/// For an uncovered `y` the gap is positive once the ball reaches past the
/// probes; `2T` is enough, and the loop only guards that argument.
fn uncovered_witness(g: &MetricGraph, x: &GraphPoint, y: GraphPoint, depth: &Scalar) -> Result<Witness> {
    let mut r = depth + depth;
    for _ in 0..16 {
        let gap = shooting_gap(g, x, &y, &r)?;
        if gap.is_positive() {
            return Ok(Witness {
                y,
                r,
                gap,
                reason: FailReason::UncoveredSegment,
            });
        }
        r = &r + &r;
    }
    unreachable!("uncovered point without a positive gap at {}", g.describe_point(&y))
}

fn decide_compact(g: &MetricGraph, x: &GraphPoint) -> Result<ShootingVerdict> {
    let from_x = DistanceField::new(g, std::slice::from_ref(x));
    let mut far: Option<(GraphPoint, Scalar)> = None;
    for e in g.edge_ids() {
        let seg = Segment::Edge(e);
        let (t, v) = from_x.profile(seg, &Scalar::zero(), g.edge_len(e)).max();
        if far.as_ref().is_none_or(|(_, best)| v > *best) {
            far = Some((g.point(seg, t)?, v));
        }
    }
    // A single point has no y != x to shoot from.
    let Some((y, ecc)) = far else {
        return Ok(ShootingVerdict::Holds);
    };
    let r = ecc + Scalar::one();
    let gap = shooting_gap(g, x, &y, &r)?;
    debug_assert!(gap.is_positive());
    Ok(ShootingVerdict::Fails(Witness {
        y,
        r,
        gap,
        reason: FailReason::EmptySphere,
    }))
}

/// Verdicts over a probe set, in probe order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub entries: Vec<(GraphPoint, ShootingVerdict)>,
}

impl SpaceReport {
    /// Whether every probe point holds. Says nothing about points off the
    /// probe.
    pub fn holds_on_probe(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.holds())
    }

    pub fn holding_points(&self) -> Vec<&GraphPoint> {
        self.entries.iter().filter(|(_, v)| v.holds()).map(|(p, _)| p).collect()
    }
}

/// [`decide_point`] over a probe set, evaluated in parallel.
pub fn decide_space(g: &MetricGraph, probe: &[GraphPoint]) -> Result<SpaceReport> {
    if probe.is_empty() {
        return Err(Error::input("empty probe set"));
    }
    let entries = probe
        .par_iter()
        .map(|p| Ok((p.clone(), decide_point(g, p)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceReport { entries })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosednessReport {
    pub limit: GraphPoint,
    /// `d(x_k, x)` for each member of the sequence.
    pub distances: Vec<Scalar>,
    pub limit_verdict: ShootingVerdict,
}

impl ClosednessReport {
    /// False would contradict closedness of the shooting set.
    pub fn limit_holds(&self) -> bool {
        self.limit_verdict.holds()
    }
}

/// Checks that the limit of a sequence of points with the shooting
/// property has it too.
pub fn closedness_harness(g: &MetricGraph, xs: &[GraphPoint], limit: &GraphPoint) -> Result<ClosednessReport> {
    if xs.is_empty() {
        return Err(Error::input("empty sequence"));
    }
    let mut distances = Vec::with_capacity(xs.len());
    for p in xs {
        if let ShootingVerdict::Fails(w) = decide_point(g, p)? {
            return Err(Error::input(format!(
                "sequence member {} does not have the shooting property ({})",
                g.describe_point(p),
                w.reason
            )));
        }
        distances.push(g.distance(p, limit)?);
    }
    Ok(ClosednessReport {
        limit: limit.clone(),
        distances,
        limit_verdict: decide_point(g, limit)?,
    })
}
