//! Distance fields and their piecewise-linear restrictions to segments.
//!
//! For a finite source set `Z`, the function `y ↦ d(y, Z)` restricted to an
//! edge `u–v` of length `L` at offset `t` is
//!
//! ```text
//! min( t + D(u),  L - t + D(v),  min_{z on the edge} |t - t_z| )
//! ```
//!
//! where `D(w) = d(w, Z)` for vertices. Every term has slope ±1, so the
//! restriction is piecewise linear and its breakpoints lie in a small
//! candidate set (source offsets and pairwise crossings). A [`Profile`]
//! stores the values at those candidates; between consecutive knots the
//! function is affine, so maxima, sublevel sets and level sets are exact.

use std::collections::{BTreeSet, HashMap};

use super::{GraphPoint, Intervals, MetricGraph, PlSubset, Segment};
use crate::scalar::Scalar;

/// `y ↦ d(y, Z)` for a finite nonempty set of sources `Z`.
#[derive(Clone, Debug)]
pub struct DistanceField<'g> {
    graph: &'g MetricGraph,
    vertex: Vec<Scalar>,
    on_segment: HashMap<Segment, Vec<Scalar>>,
}

impl<'g> DistanceField<'g> {
    /// Panics if `sources` is empty; callers validate points beforehand.
    pub fn new(graph: &'g MetricGraph, sources: &[GraphPoint]) -> Self {
        assert!(!sources.is_empty(), "distance field needs at least one source");
        let vertex = graph
            .vertex_ids()
            .map(|w| {
                sources
                    .iter()
                    .map(|z| graph.vertex_to_point(w, z))
                    .min()
                    .expect("nonempty sources")
            })
            .collect();
        let mut on_segment: HashMap<Segment, Vec<Scalar>> = HashMap::new();
        for z in sources {
            match z {
                GraphPoint::Vertex(_) => {}
                GraphPoint::Edge(e, t) => on_segment.entry(Segment::Edge(*e)).or_default().push(t.clone()),
                GraphPoint::Ray(r, t) => on_segment.entry(Segment::Ray(*r)).or_default().push(t.clone()),
            }
        }
        for offsets in on_segment.values_mut() {
            offsets.sort();
            offsets.dedup();
        }
        DistanceField {
            graph,
            vertex,
            on_segment,
        }
    }

    pub fn graph(&self) -> &'g MetricGraph {
        self.graph
    }

    pub fn at_vertex(&self, v: super::VertexId) -> &Scalar {
        &self.vertex[v.0]
    }

    pub fn at(&self, p: &GraphPoint) -> Scalar {
        match p {
            GraphPoint::Vertex(v) => self.vertex[v.0].clone(),
            GraphPoint::Edge(e, t) => self.eval(Segment::Edge(*e), t),
            GraphPoint::Ray(r, t) => self.eval(Segment::Ray(*r), t),
        }
    }

    fn sources_on(&self, seg: Segment) -> &[Scalar] {
        self.on_segment.get(&seg).map_or(&[], Vec::as_slice)
    }

    /// Field value at offset `t` of `seg` (no canonicalization needed).
    pub fn eval(&self, seg: Segment, t: &Scalar) -> Scalar {
        let start = self.graph.segment_start(seg);
        let mut best = t + &self.vertex[start.0];
        if let Segment::Edge(e) = seg {
            let (_, v) = self.graph.edge_ends(e);
            let back = (self.graph.edge_len(e) - t) + &self.vertex[v.0];
            if back < best {
                best = back;
            }
        }
        for tz in self.sources_on(seg) {
            let direct = (t - tz).abs();
            if direct < best {
                best = direct;
            }
        }
        best
    }

    /// Candidate breakpoints of the restriction to `seg` inside `[lo, hi]`.
    fn breakpoints(&self, seg: Segment, lo: &Scalar, hi: &Scalar) -> Vec<Scalar> {
        let start = self.graph.segment_start(seg);
        let du = &self.vertex[start.0];
        // Up-sloping terms t + a and down-sloping terms b - t.
        let mut ups = vec![du.clone()];
        let mut downs = Vec::new();
        if let Segment::Edge(e) = seg {
            let (_, v) = self.graph.edge_ends(e);
            downs.push(self.graph.edge_len(e) + &self.vertex[v.0]);
        }
        let zs = self.sources_on(seg);
        for tz in zs {
            ups.push(-tz);
            downs.push(tz.clone());
        }
        let mut cands: BTreeSet<Scalar> = BTreeSet::new();
        cands.insert(lo.clone());
        cands.insert(hi.clone());
        cands.extend(zs.iter().cloned());
        for a in &ups {
            for b in &downs {
                cands.insert((b - a).half());
            }
        }
        cands.into_iter().filter(|t| t >= lo && t <= hi).collect()
    }

    /// Exact piecewise-linear restriction of the field to `[lo, hi]` on `seg`.
    pub fn profile(&self, seg: Segment, lo: &Scalar, hi: &Scalar) -> Profile {
        debug_assert!(lo <= hi);
        let knots = self
            .breakpoints(seg, lo, hi)
            .into_iter()
            .map(|t| {
                let v = self.eval(seg, &t);
                (t, v)
            })
            .collect();
        Profile { knots }
    }

    /// Largest offset of a source on `seg`, or 0.
    fn deepest_source(&self, seg: Segment) -> Scalar {
        self.sources_on(seg).last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Offset beyond which the field exceeds `r` everywhere on a ray.
    fn ray_cutoff(&self, seg: Segment, r: &Scalar) -> Scalar {
        r + self.deepest_source(seg) + Scalar::one()
    }

    fn full_range(&self, seg: Segment, r: &Scalar) -> (Scalar, Scalar) {
        match self.graph.segment_len(seg) {
            Some(len) => (Scalar::zero(), len.clone()),
            None => (Scalar::zero(), self.ray_cutoff(seg, r)),
        }
    }

    /// `{y : d(y, Z) <= r}` as an exact PL subset.
    pub fn sublevel(&self, r: &Scalar) -> PlSubset {
        let mut edges = Vec::with_capacity(self.graph.edge_count());
        let mut rays = Vec::with_capacity(self.graph.ray_count());
        for seg in self.graph.segments() {
            let (lo, hi) = self.full_range(seg, r);
            let set = self.profile(seg, &lo, &hi).sublevel(r);
            match seg {
                Segment::Edge(_) => edges.push(set),
                Segment::Ray(_) => rays.push(set),
            }
        }
        let vertices = self
            .graph
            .vertex_ids()
            .filter(|v| self.vertex[v.0] <= *r)
            .collect::<Vec<_>>();
        PlSubset::from_parts(self.graph, edges, rays, &vertices).expect("sublevel sets are compact and in range")
    }

    /// `{y : d(y, Z) = r}`, sorted and canonical.
    pub fn level(&self, r: &Scalar) -> Vec<GraphPoint> {
        let mut out = BTreeSet::new();
        for v in self.graph.vertex_ids() {
            if self.vertex[v.0] == *r {
                out.insert(GraphPoint::Vertex(v));
            }
        }
        for seg in self.graph.segments() {
            let (lo, hi) = self.full_range(seg, r);
            for t in self.profile(seg, &lo, &hi).level(r) {
                out.insert(self.graph.point(seg, t).expect("level offsets lie on the segment"));
            }
        }
        out.into_iter().collect()
    }

    /// Maximum of the field over a compact subset, with a maximizer.
    /// `None` for the empty set.
    pub fn sup_over(&self, set: &PlSubset) -> Option<(GraphPoint, Scalar)> {
        let mut best: Option<(GraphPoint, Scalar)> = None;
        let mut offer = |p: GraphPoint, val: Scalar| {
            if best.as_ref().is_none_or(|(_, b)| val > *b) {
                best = Some((p, val));
            }
        };
        for v in set.isolated_vertices() {
            offer(GraphPoint::Vertex(v), self.vertex[v.0].clone());
        }
        for (seg, lo, hi) in set.pieces() {
            let (t, val) = self.profile(seg, lo, hi).max();
            let p = self.graph.point(seg, t).expect("piece offsets lie on the segment");
            offer(p, val);
        }
        best
    }
}

/// A continuous piecewise-linear function on a closed interval, given by its
/// values at a sorted set of knots; affine between consecutive knots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    knots: Vec<(Scalar, Scalar)>,
}

impl Profile {
    /// Knots must be sorted by offset and nonempty.
    pub fn from_knots(knots: Vec<(Scalar, Scalar)>) -> Self {
        assert!(!knots.is_empty(), "profile needs at least one knot");
        debug_assert!(knots.windows(2).all(|w| w[0].0 < w[1].0));
        Profile { knots }
    }

    pub fn knots(&self) -> &[(Scalar, Scalar)] {
        &self.knots
    }

    pub fn domain(&self) -> (&Scalar, &Scalar) {
        (&self.knots[0].0, &self.knots[self.knots.len() - 1].0)
    }

    /// Linear interpolation; `t` must lie in the domain.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let idx = self.knots.partition_point(|(k, _)| k < t);
        if idx < self.knots.len() && self.knots[idx].0 == *t {
            return self.knots[idx].1.clone();
        }
        assert!(idx > 0 && idx < self.knots.len(), "offset {t} outside profile domain");
        let (t0, v0) = &self.knots[idx - 1];
        let (t1, v1) = &self.knots[idx];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Maximum value and its first maximizer.
    pub fn max(&self) -> (Scalar, Scalar) {
        let mut best = &self.knots[0];
        for k in &self.knots[1..] {
            if k.1 > best.1 {
                best = k;
            }
        }
        best.clone()
    }

    pub fn min(&self) -> (Scalar, Scalar) {
        let mut best = &self.knots[0];
        for k in &self.knots[1..] {
            if k.1 < best.1 {
                best = k;
            }
        }
        best.clone()
    }

    /// Pointwise `op(self, other)` on the common domain. The result is exact
    /// when `op` is affine in each argument (sums, differences, scalings).
    pub fn combine(&self, other: &Profile, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Profile {
        assert_eq!(self.domain(), other.domain(), "profiles must share a domain");
        let ts: BTreeSet<&Scalar> = self.knots.iter().chain(&other.knots).map(|(t, _)| t).collect();
        let knots = ts
            .into_iter()
            .map(|t| {
                let v = op(&self.eval(t), &other.eval(t));
                (t.clone(), v)
            })
            .collect();
        Profile { knots }
    }

    /// `{t : f(t) <= r}`.
    pub fn sublevel(&self, r: &Scalar) -> Intervals {
        let mut out = Vec::new();
        if self.knots.len() == 1 {
            let (t, v) = &self.knots[0];
            if v <= r {
                out.push((t.clone(), t.clone()));
            }
            return Intervals::new(out);
        }
        for w in self.knots.windows(2) {
            let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
            match (v0 <= r, v1 <= r) {
                (true, true) => out.push((t0.clone(), t1.clone())),
                (true, false) => out.push((t0.clone(), crossing(t0, v0, t1, v1, r))),
                (false, true) => out.push((crossing(t0, v0, t1, v1, r), t1.clone())),
                (false, false) => {}
            }
        }
        Intervals::new(out)
    }

    /// `{t : f(t) = r}` for a function with no flat piece at level `r`.
    /// A flat piece at level `r` contributes its two ends only.
    pub fn level(&self, r: &Scalar) -> Vec<Scalar> {
        let mut out = BTreeSet::new();
        for (t, v) in &self.knots {
            if v == r {
                out.insert(t.clone());
            }
        }
        for w in self.knots.windows(2) {
            let ((t0, v0), (t1, v1)) = (&w[0], &w[1]);
            if (v0 < r && v1 > r) || (v0 > r && v1 < r) {
                out.insert(crossing(t0, v0, t1, v1, r));
            }
        }
        out.into_iter().collect()
    }
}

/// Offset in `[t0, t1]` where the affine interpolant reaches `r`.
fn crossing(t0: &Scalar, v0: &Scalar, t1: &Scalar, v1: &Scalar, r: &Scalar) -> Scalar {
    t0 + (r - v0) * (t1 - t0) / (v1 - v0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn profile_interpolates_and_cuts() {
        let p = Profile::from_knots(vec![(q(0, 1), q(0, 1)), (q(2, 1), q(2, 1)), (q(4, 1), q(0, 1))]);
        assert_eq!(p.eval(&q(1, 1)), q(1, 1));
        assert_eq!(p.eval(&q(3, 1)), q(1, 1));
        assert_eq!(p.max(), (q(2, 1), q(2, 1)));
        let sub = p.sublevel(&q(1, 2));
        assert_eq!(sub.as_slice(), &[(q(0, 1), q(1, 2)), (q(7, 2), q(4, 1))]);
        assert_eq!(p.level(&q(1, 1)), vec![q(1, 1), q(3, 1)]);
        assert_eq!(p.level(&q(2, 1)), vec![q(2, 1)]);
    }

    #[test]
    fn field_peaks_inside_an_edge() {
        // On the square, the distance from N along the opposite edges peaks at S.
        let g = catalog::square();
        let n = g.vertex("N").unwrap();
        let f = DistanceField::new(&g, std::slice::from_ref(&n));
        let es = Segment::Edge(g.edge_id("ES").unwrap());
        let prof = f.profile(es, &q(0, 1), &q(2, 1));
        assert_eq!(prof.max(), (q(2, 1), q(4, 1)));
        // distance from the midpoint of NE to points of SW: peak at the far midpoint
        let m = g.edge_point("NE", q(1, 1)).unwrap();
        let f = DistanceField::new(&g, std::slice::from_ref(&m));
        let sw = Segment::Edge(g.edge_id("SW").unwrap());
        assert_eq!(f.profile(sw, &q(0, 1), &q(2, 1)).max(), (q(1, 1), q(4, 1)));
    }

    #[test]
    fn multi_source_field() {
        let g = catalog::line();
        let a = catalog::line_point(&g, &q(-3, 1));
        let b = catalog::line_point(&g, &q(5, 1));
        let f = DistanceField::new(&g, &[a, b]);
        assert_eq!(f.at(&catalog::line_point(&g, &q(1, 1))), q(4, 1));
        assert_eq!(f.at(&catalog::line_point(&g, &q(2, 1))), q(3, 1));
        assert_eq!(f.at(&catalog::line_point(&g, &q(-4, 1))), q(1, 1));
    }
}
