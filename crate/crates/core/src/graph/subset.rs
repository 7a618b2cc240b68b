//! Compact piecewise-linear subsets of a metric graph.

use std::collections::BTreeSet;

use super::{GraphPoint, MetricGraph, Segment, VertexId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite union of closed intervals, sorted, pairwise disjoint, with touching
/// intervals merged. Degenerate intervals `[a, a]` are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Intervals(Vec<(Scalar, Scalar)>);

impl Intervals {
    /// Normalizes an arbitrary list; intervals with `lo > hi` are dropped.
    pub fn new(mut raw: Vec<(Scalar, Scalar)>) -> Self {
        raw.retain(|(lo, hi)| lo <= hi);
        raw.sort();
        let mut out: Vec<(Scalar, Scalar)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        Intervals(out)
    }

    pub fn empty() -> Self {
        Intervals(Vec::new())
    }

    pub fn single(lo: Scalar, hi: Scalar) -> Self {
        Intervals::new(vec![(lo, hi)])
    }

    pub fn as_slice(&self) -> &[(Scalar, Scalar)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Scalar, Scalar)> {
        self.0.iter()
    }

    pub fn contains(&self, t: &Scalar) -> bool {
        let idx = self.0.partition_point(|(_, hi)| hi < t);
        idx < self.0.len() && self.0[idx].0 <= *t
    }

    pub fn union(&self, other: &Intervals) -> Intervals {
        Intervals::new(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn is_subset_of(&self, other: &Intervals) -> bool {
        self.0.iter().all(|(lo, hi)| {
            let idx = other.0.partition_point(|(_, ohi)| ohi < lo);
            idx < other.0.len() && other.0[idx].0 <= *lo && *hi <= other.0[idx].1
        })
    }

    /// Maximal open sub-intervals of `[lo, hi]` not covered by `self`, as
    /// `(a, b)` pairs with `a < b`. The pair's ends may be `lo`/`hi`
    /// themselves when those are uncovered.
    pub fn gaps_within(&self, lo: &Scalar, hi: &Scalar) -> Vec<(Scalar, Scalar)> {
        let mut gaps = Vec::new();
        let mut cur = lo.clone();
        for (a, b) in &self.0 {
            if b < lo || a > hi {
                continue;
            }
            if *a > cur {
                gaps.push((cur.clone(), a.clone()));
            }
            if *b > cur {
                cur = b.clone();
            }
        }
        if cur < *hi {
            gaps.push((cur, hi.clone()));
        }
        gaps
    }

    /// Closure of `self \ other`.
    pub fn minus_closure(&self, other: &Intervals) -> Intervals {
        let mut out = Vec::new();
        for (lo, hi) in &self.0 {
            if lo == hi {
                if !other.contains(lo) {
                    out.push((lo.clone(), hi.clone()));
                }
                continue;
            }
            out.extend(other.gaps_within(lo, hi));
        }
        Intervals::new(out)
    }
}

/// A compact subset of a graph stored as closed intervals per edge and per
/// ray.
///
/// Canonical form: if a vertex belongs to the set, every edge or ray incident
/// to it carries an interval reaching the corresponding end (possibly a
/// degenerate one). With that convention structural equality is set
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSubset {
    graph: MetricGraph,
    edges: Vec<Intervals>,
    rays: Vec<Intervals>,
    vertices: Vec<bool>,
}

impl PlSubset {
    pub fn empty(graph: &MetricGraph) -> Self {
        PlSubset {
            graph: graph.clone(),
            edges: vec![Intervals::empty(); graph.edge_count()],
            rays: vec![Intervals::empty(); graph.ray_count()],
            vertices: vec![false; graph.vertex_count()],
        }
    }

    /// Builds and canonicalizes a subset. `extra_vertices` lists vertices
    /// that belong to the set even if no interval reaches them.
    pub fn from_parts(
        graph: &MetricGraph,
        edges: Vec<Intervals>,
        rays: Vec<Intervals>,
        extra_vertices: &[VertexId],
    ) -> Result<Self> {
        if edges.len() != graph.edge_count() || rays.len() != graph.ray_count() {
            return Err(Error::Mismatch);
        }
        for (e, set) in graph.edge_ids().zip(&edges) {
            let len = graph.edge_len(e);
            if set.iter().any(|(lo, hi)| lo.is_negative() || hi > len) {
                return Err(Error::input(format!("interval outside edge {:?}", graph.edge_name(e))));
            }
        }
        for (r, set) in graph.ray_ids().zip(&rays) {
            if set.iter().any(|(lo, _)| lo.is_negative()) {
                return Err(Error::input(format!("interval outside ray {:?}", graph.ray_name(r))));
            }
        }
        let mut vertices = vec![false; graph.vertex_count()];
        for v in extra_vertices {
            if v.0 >= vertices.len() {
                return Err(Error::input(format!("unknown vertex index {}", v.0)));
            }
            vertices[v.0] = true;
        }
        let mut set = PlSubset {
            graph: graph.clone(),
            edges,
            rays,
            vertices,
        };
        set.canonicalize();
        Ok(set)
    }

    fn intervals_mut(&mut self, seg: Segment) -> &mut Intervals {
        match seg {
            Segment::Edge(e) => &mut self.edges[e.0],
            Segment::Ray(r) => &mut self.rays[r.0],
        }
    }

    fn canonicalize(&mut self) {
        let graph = self.graph.clone();
        for v in graph.vertex_ids() {
            if !self.vertices[v.0] {
                self.vertices[v.0] = graph
                    .incidence(v)
                    .iter()
                    .any(|(seg, at)| self.intervals(*seg).contains(at));
            }
        }
        for v in graph.vertex_ids() {
            if self.vertices[v.0] {
                for (seg, at) in graph.incidence(v) {
                    let set = self.intervals_mut(*seg);
                    if !set.contains(at) {
                        *set = set.union(&Intervals::single(at.clone(), at.clone()));
                    }
                }
            }
        }
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn intervals(&self, seg: Segment) -> &Intervals {
        match seg {
            Segment::Edge(e) => &self.edges[e.0],
            Segment::Ray(r) => &self.rays[r.0],
        }
    }

    pub fn edge_intervals(&self) -> &[Intervals] {
        &self.edges
    }

    pub fn ray_intervals(&self) -> &[Intervals] {
        &self.rays
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices[v.0]
    }

    pub fn is_empty(&self) -> bool {
        !self.vertices.iter().any(|&b| b)
            && self.edges.iter().all(Intervals::is_empty)
            && self.rays.iter().all(Intervals::is_empty)
    }

    /// Every `(segment, lo, hi)` interval of the set.
    pub fn pieces(&self) -> impl Iterator<Item = (Segment, &Scalar, &Scalar)> + '_ {
        self.graph
            .segments()
            .flat_map(move |seg| self.intervals(seg).iter().map(move |(lo, hi)| (seg, lo, hi)))
    }

    /// Member vertices with no incident segment (only in a one-vertex graph).
    pub fn isolated_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph
            .vertex_ids()
            .filter(move |v| self.vertices[v.0] && self.graph.incidence(*v).is_empty())
    }

    pub fn contains(&self, p: &GraphPoint) -> Result<bool> {
        self.graph.validate(p)?;
        Ok(match p {
            GraphPoint::Vertex(v) => self.vertices[v.0],
            GraphPoint::Edge(e, t) => self.edges[e.0].contains(t),
            GraphPoint::Ray(r, t) => self.rays[r.0].contains(t),
        })
    }

    fn check_same_graph(&self, other: &PlSubset) -> Result<()> {
        if self.graph == other.graph {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    /// Exact set equality.
    pub fn same_set(&self, other: &PlSubset) -> Result<bool> {
        self.check_same_graph(other)?;
        Ok(self.edges == other.edges && self.rays == other.rays && self.vertices == other.vertices)
    }

    pub fn is_subset_of(&self, other: &PlSubset) -> Result<bool> {
        self.check_same_graph(other)?;
        Ok(self.edges.iter().zip(&other.edges).all(|(a, b)| a.is_subset_of(b))
            && self.rays.iter().zip(&other.rays).all(|(a, b)| a.is_subset_of(b))
            && self.vertices.iter().zip(&other.vertices).all(|(&a, &b)| !a || b))
    }

    pub fn union(&self, other: &PlSubset) -> Result<PlSubset> {
        self.check_same_graph(other)?;
        let edges = self.edges.iter().zip(&other.edges).map(|(a, b)| a.union(b)).collect();
        let rays = self.rays.iter().zip(&other.rays).map(|(a, b)| a.union(b)).collect();
        let extra: Vec<VertexId> = self
            .graph
            .vertex_ids()
            .filter(|v| self.vertices[v.0] || other.vertices[v.0])
            .collect();
        PlSubset::from_parts(&self.graph, edges, rays, &extra)
    }

    /// Closure of `self \ other`.
    pub fn minus_closure(&self, other: &PlSubset) -> Result<PlSubset> {
        self.check_same_graph(other)?;
        let edges = self
            .edges
            .iter()
            .zip(&other.edges)
            .map(|(a, b)| a.minus_closure(b))
            .collect();
        let rays = self
            .rays
            .iter()
            .zip(&other.rays)
            .map(|(a, b)| a.minus_closure(b))
            .collect();
        let extra: Vec<VertexId> = self.isolated_vertices().filter(|v| !other.vertices[v.0]).collect();
        PlSubset::from_parts(&self.graph, edges, rays, &extra)
    }

    /// Topological boundary candidates: every interval end, canonicalized.
    /// Any shortest path from outside the set enters it through one of these.
    pub fn boundary_points(&self) -> Vec<GraphPoint> {
        let mut out = BTreeSet::new();
        for v in self.isolated_vertices() {
            out.insert(GraphPoint::Vertex(v));
        }
        for (seg, lo, hi) in self.pieces() {
            for t in [lo, hi] {
                out.insert(
                    self.graph
                        .point(seg, t.clone())
                        .expect("interval ends lie on the segment"),
                );
            }
        }
        out.into_iter().collect()
    }

    /// Largest ray offset covered, or 0.
    pub fn max_ray_offset(&self) -> Scalar {
        self.rays
            .iter()
            .filter_map(|set| set.as_slice().last().map(|(_, hi)| hi.clone()))
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn iv(pairs: &[(i64, i64)]) -> Intervals {
        Intervals::new(pairs.iter().map(|&(a, b)| (q(a, 1), q(b, 1))).collect())
    }

    #[test]
    fn intervals_normalize() {
        let set = iv(&[(3, 4), (0, 1), (1, 2), (5, 5)]);
        assert_eq!(set.as_slice(), iv(&[(0, 2), (3, 4), (5, 5)]).as_slice());
        assert!(set.contains(&q(5, 1)));
        assert!(!set.contains(&q(5, 2)));
        assert!(iv(&[(0, 1)]).is_subset_of(&set));
        assert!(!iv(&[(1, 3)]).is_subset_of(&set));
    }

    #[test]
    fn closure_of_difference() {
        let a = iv(&[(0, 10)]);
        let b = iv(&[(2, 3), (3, 3), (5, 5), (9, 12)]);
        assert_eq!(a.minus_closure(&b), iv(&[(0, 2), (3, 9)]));
        assert_eq!(iv(&[(4, 4)]).minus_closure(&b), iv(&[(4, 4)]));
        assert_eq!(iv(&[(5, 5)]).minus_closure(&b), Intervals::empty());
        assert!(a.gaps_within(&q(0, 1), &q(10, 1)).is_empty());
        assert_eq!(b.gaps_within(&q(0, 1), &q(10, 1)).len(), 3);
    }

    #[test]
    fn vertex_membership_is_canonical() {
        let g = catalog::diamond();
        let ne = g.edge_id("NE").unwrap();
        let mut edges = vec![Intervals::empty(); 4];
        edges[ne.0] = Intervals::single(q(0, 1), q(1, 1));
        let a = PlSubset::from_parts(&g, edges, vec![Intervals::empty(); 2], &[]).unwrap();
        // N is in the set, so WN must carry the degenerate interval at N.
        let wn = g.edge_id("WN").unwrap();
        assert!(a.intervals(Segment::Edge(wn)).contains(&q(2, 1)));
        let b = PlSubset::from_parts(
            &g,
            {
                let mut e = vec![Intervals::empty(); 4];
                e[ne.0] = Intervals::single(q(0, 1), q(1, 1));
                e[wn.0] = Intervals::single(q(2, 1), q(2, 1));
                e
            },
            vec![Intervals::empty(); 2],
            &[],
        )
        .unwrap();
        assert!(a.same_set(&b).unwrap());
        assert!(a.contains(&g.vertex("N").unwrap()).unwrap());
    }

    #[test]
    fn mismatched_graphs_are_rejected() {
        let a = PlSubset::empty(&catalog::diamond());
        let b = PlSubset::empty(&catalog::bent_line());
        assert!(matches!(a.same_set(&b), Err(Error::Mismatch)));
    }
}
