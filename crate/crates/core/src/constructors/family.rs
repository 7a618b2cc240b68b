//! Families of graphs with the same combinatorics and converging edge
//! lengths.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DistanceField, GraphPoint, MetricGraph, Segment};
use crate::hausdorff::hausdorff_pl;
use crate::scalar::Scalar;
use crate::shooting::decide_point;

/// One member of a family: a label (typically `n`) and its edge lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyStep {
    pub label: String,
    pub lengths: Vec<Scalar>,
}

/// A base graph together with graphs of the same combinatorics whose edge
/// lengths converge to the base lengths. Points are identified across
/// members by proportional offsets along each edge; ray offsets are kept.
#[derive(Clone, Debug)]
pub struct PerturbedFamily {
    base: MetricGraph,
    steps: Vec<(FamilyStep, MetricGraph)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub label: String,
    /// `max |d_n - d|` over probe pairs.
    pub delta: Scalar,
    /// `Σ_e |ℓ_n(e) - ℓ(e)|`, a bound on `sup |d_n - d|` over all pairs.
    pub length_bound: Scalar,
    /// `max |d_H^n - d_H|` over the samples.
    pub max_change: Scalar,
    /// Samples with `|d_H^n - d_H| > 2 Δ_n`.
    pub violations: Vec<usize>,
    /// Shooting verdict (holds?) at each probe point.
    pub verdicts: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub probe: Vec<GraphPoint>,
    pub base_verdicts: Vec<bool>,
    pub steps: Vec<StepReport>,
}

impl FamilyReport {
    pub fn bound_holds(&self) -> bool {
        self.steps.iter().all(|s| s.violations.is_empty())
    }

    pub fn verdicts_stable(&self) -> bool {
        self.steps.iter().all(|s| s.verdicts == self.base_verdicts)
    }
}

impl PerturbedFamily {
    pub fn new(base: MetricGraph, steps: Vec<FamilyStep>) -> Result<Self> {
        let mut built = Vec::with_capacity(steps.len());
        for step in steps {
            if let Some(bad) = step.lengths.iter().find(|l| !l.is_positive()) {
                return Err(Error::input(format!(
                    "step {:?} has nonpositive length {bad}",
                    step.label
                )));
            }
            let g = base.with_lengths(&step.lengths)?;
            built.push((step, g));
        }
        Ok(PerturbedFamily { base, steps: built })
    }

    /// Every edge scaled to `len + 1/n` for each `n` in `ns`.
    pub fn additive(base: MetricGraph, ns: &[i64]) -> Result<Self> {
        let steps = ns
            .iter()
            .map(|&n| FamilyStep {
                label: n.to_string(),
                lengths: base
                    .edge_ids()
                    .map(|e| base.edge_len(e) + Scalar::ratio(1, n))
                    .collect(),
            })
            .collect();
        PerturbedFamily::new(base, steps)
    }

    pub fn base(&self) -> &MetricGraph {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, i: usize) -> (&FamilyStep, &MetricGraph) {
        let (s, g) = &self.steps[i];
        (s, g)
    }

    /// The point of member `i` corresponding to `p` of the base.
    pub fn transfer(&self, i: usize, p: &GraphPoint) -> GraphPoint {
        let (_, g) = &self.steps[i];
        match p {
            GraphPoint::Edge(e, t) => GraphPoint::Edge(*e, t * g.edge_len(*e) / self.base.edge_len(*e)),
            other => other.clone(),
        }
    }

    fn transfer_back(&self, i: usize, p: &GraphPoint) -> GraphPoint {
        let (_, g) = &self.steps[i];
        match p {
            GraphPoint::Edge(e, t) => GraphPoint::Edge(*e, t * self.base.edge_len(*e) / g.edge_len(*e)),
            other => other.clone(),
        }
    }

    /// Vertices, edge midpoints, and the interior peaks of every vertex
    /// distance function on every edge, in the base and in each member.
    pub fn probe_points(&self) -> Vec<GraphPoint> {
        let mut out: BTreeSet<GraphPoint> = self.base.default_probe().into_iter().collect();
        let mut add_peaks = |g: &MetricGraph, back: &dyn Fn(&GraphPoint) -> GraphPoint| {
            for w in g.vertex_ids() {
                let field = DistanceField::new(g, &[GraphPoint::Vertex(w)]);
                for e in g.edge_ids() {
                    let (t, _) = field.profile(Segment::Edge(e), &Scalar::zero(), g.edge_len(e)).max();
                    if let Ok(p @ GraphPoint::Edge(..)) = g.point(Segment::Edge(e), t) {
                        out.insert(back(&p));
                    }
                }
            }
        };
        add_peaks(&self.base, &|p| p.clone());
        for i in 0..self.steps.len() {
            let (_, g) = &self.steps[i];
            add_peaks(g, &|p| self.transfer_back(i, p));
        }
        out.into_iter().collect()
    }

    /// `Δ_i = max |d_i(p', q') - d(p, q)|` over pairs of probe points.
    pub fn delta(&self, i: usize, probe: &[GraphPoint]) -> Scalar {
        let (_, g) = &self.steps[i];
        let moved: Vec<GraphPoint> = probe.iter().map(|p| self.transfer(i, p)).collect();
        probe
            .par_iter()
            .zip(&moved)
            .map(|(p, pm)| {
                let f0 = DistanceField::new(&self.base, std::slice::from_ref(p));
                let f1 = DistanceField::new(g, std::slice::from_ref(pm));
                probe
                    .iter()
                    .zip(&moved)
                    .map(|(q, qm)| (f1.at(qm) - f0.at(q)).abs())
                    .max()
                    .unwrap_or_else(Scalar::zero)
            })
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn length_bound(&self, i: usize) -> Scalar {
        let (step, _) = &self.steps[i];
        self.base
            .edge_ids()
            .zip(&step.lengths)
            .map(|(e, l)| (l - self.base.edge_len(e)).abs())
            .sum()
    }

    /// Verifies `|d_H^n(B̄_t(x), B̄_s(y)) - d_H(B̄_t(x), B̄_s(y))| <= 2 Δ_n` on
    /// every sample and every step, and records the shooting verdicts at the
    /// probe points along the family.
    pub fn check(
        &self,
        samples: &[(GraphPoint, Scalar, GraphPoint, Scalar)],
        probe: &[GraphPoint],
    ) -> Result<FamilyReport> {
        for (x, t, y, s) in samples {
            self.base.validate(x)?;
            self.base.validate(y)?;
            if t.is_negative() || s.is_negative() {
                return Err(Error::input("negative radius in sample"));
            }
        }
        let base_dh: Vec<Scalar> = samples
            .par_iter()
            .map(|(x, t, y, s)| hausdorff_pl(&self.base.ball(x, t)?, &self.base.ball(y, s)?))
            .collect::<Result<_>>()?;
        let verdicts_of = |g: &MetricGraph, pts: &[GraphPoint]| -> Result<Vec<bool>> {
            pts.par_iter().map(|p| Ok(decide_point(g, p)?.holds())).collect()
        };
        let base_verdicts = verdicts_of(&self.base, probe)?;
        let delta_probe = {
            let mut all: BTreeSet<GraphPoint> = self.probe_points().into_iter().collect();
            for (x, _, y, _) in samples {
                all.insert(x.clone());
                all.insert(y.clone());
            }
            all.into_iter().collect::<Vec<_>>()
        };
        let mut steps = Vec::with_capacity(self.steps.len());
        for i in 0..self.steps.len() {
            let (step, g) = &self.steps[i];
            let delta = self.delta(i, &delta_probe);
            let bound = &delta + &delta;
            let changes: Vec<Scalar> = samples
                .par_iter()
                .zip(&base_dh)
                .map(|((x, t, y, s), d0)| {
                    let d1 = hausdorff_pl(&g.ball(&self.transfer(i, x), t)?, &g.ball(&self.transfer(i, y), s)?)?;
                    Ok((d1 - d0).abs())
                })
                .collect::<Result<_>>()?;
            let violations = changes
                .iter()
                .enumerate()
                .filter(|(_, c)| **c > bound)
                .map(|(k, _)| k)
                .collect();
            let max_change = changes.into_iter().max().unwrap_or_else(Scalar::zero);
            let moved: Vec<GraphPoint> = probe.iter().map(|p| self.transfer(i, p)).collect();
            steps.push(StepReport {
                label: step.label.clone(),
                delta,
                length_bound: self.length_bound(i),
                max_change,
                violations,
                verdicts: verdicts_of(g, &moved)?,
            });
        }
        Ok(FamilyReport {
            probe: probe.to_vec(),
            base_verdicts,
            steps,
        })
    }
}
