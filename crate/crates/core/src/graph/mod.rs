//! Metric graphs with exact rational edge lengths and optional rays.
//!
//! A [`MetricGraph`] is a finite connected graph whose edges are isometric
//! copies of closed intervals `[0, len]`, together with any number of rays
//! (isometric copies of `[0, ∞)`) glued at a base vertex. The distance is the
//! induced path metric. All-pairs vertex distances are computed once at
//! construction; every other distance is a closed-form combination of those
//! and the offsets along a single edge or ray.

mod automorphism;
mod field;
mod subset;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use automorphism::Automorphism;
pub use field::{DistanceField, Profile};
pub use subset::{Intervals, PlSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RayId(pub usize);

/// An edge or a ray: the one-dimensional pieces a graph is glued from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Segment {
    Edge(EdgeId),
    Ray(RayId),
}

/// A location on a graph.
///
/// Points are kept canonical: an offset at the extremity of an edge or at the
/// base of a ray is always stored as the corresponding [`GraphPoint::Vertex`],
/// so structural equality is geometric equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(VertexId),
    /// Strictly interior point of an edge, `0 < t < len`.
    Edge(EdgeId, Scalar),
    /// Point of a ray at positive offset `t` from its base.
    Ray(RayId, Scalar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Edge {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub len: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ray {
    pub name: String,
    pub base: VertexId,
}

#[derive(Debug)]
struct Inner {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    rays: Vec<Ray>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    ray_index: HashMap<String, RayId>,
    /// Segments touching each vertex, with the offset at which they touch it.
    incidence: Vec<Vec<(Segment, Scalar)>>,
    apsp: Vec<Vec<Scalar>>,
    total_length: Scalar,
}

/// Immutable metric graph. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct MetricGraph {
    inner: Arc<Inner>,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.vertices == other.inner.vertices
                && self.inner.edges == other.inner.edges
                && self.inner.rays == other.inner.rays)
    }
}

impl Eq for MetricGraph {}

impl fmt::Debug for MetricGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricGraph")
            .field("vertices", &self.inner.vertices)
            .field("edges", &self.inner.edges.len())
            .field("rays", &self.inner.rays.len())
            .finish()
    }
}

#[derive(Debug, Clone)]
struct RawEdge {
    name: String,
    u: String,
    v: String,
    len: Scalar,
}

#[derive(Default, Debug, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    rays: Vec<(String, String)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn vertices<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Self {
        self.vertices.extend(names.into_iter().map(str::to_string));
        self
    }

    /// Adds an edge between two named vertices. Endpoints are resolved at
    /// [`GraphBuilder::build`] time.
    pub fn edge(mut self, name: &str, u: &str, v: &str, len: Scalar) -> Self {
        self.edges.push(RawEdge {
            name: name.to_string(),
            u: u.to_string(),
            v: v.to_string(),
            len,
        });
        self
    }

    pub fn ray(mut self, name: &str, base: &str) -> Self {
        self.rays.push((name.to_string(), base.to_string()));
        self
    }

    pub fn build(self) -> Result<MetricGraph> {
        let mut vertex_index = HashMap::new();
        for (i, name) in self.vertices.iter().enumerate() {
            if vertex_index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::input(format!("duplicate vertex id {name:?}")));
            }
        }
        if self.vertices.is_empty() {
            return Err(Error::input("graph has no vertices"));
        }
        let lookup = |name: &str| {
            vertex_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
        };

        let mut edges = Vec::with_capacity(self.edges.len());
        let mut edge_index = HashMap::new();
        for raw in self.edges {
            let name = raw.name.as_str();
            if !raw.len.is_positive() {
                return Err(Error::input(format!(
                    "edge {name:?} has nonpositive length {}",
                    raw.len
                )));
            }
            let id = EdgeId(edges.len());
            if edge_index.insert(name.to_string(), id).is_some() {
                return Err(Error::input(format!("duplicate edge id {name:?}")));
            }
            edges.push(Edge {
                name: name.to_string(),
                u: lookup(&raw.u)?,
                v: lookup(&raw.v)?,
                len: raw.len,
            });
        }

        let mut rays = Vec::with_capacity(self.rays.len());
        let mut ray_index = HashMap::new();
        for (name, base) in &self.rays {
            let name = name.as_str();
            let id = RayId(rays.len());
            if ray_index.insert(name.to_string(), id).is_some() || edge_index.contains_key(name) {
                return Err(Error::input(format!("duplicate segment id {name:?}")));
            }
            rays.push(Ray {
                name: name.to_string(),
                base: lookup(base)?,
            });
        }

        let n = self.vertices.len();
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.u.0].push((Segment::Edge(EdgeId(i)), Scalar::zero()));
            incidence[e.v.0].push((Segment::Edge(EdgeId(i)), e.len.clone()));
        }
        for (i, r) in rays.iter().enumerate() {
            incidence[r.base.0].push((Segment::Ray(RayId(i)), Scalar::zero()));
        }

        let apsp = all_pairs(n, &edges);
        if let Some(far) = apsp[0].iter().position(Option::is_none) {
            return Err(Error::input(format!(
                "graph is disconnected: {:?} is unreachable from {:?}",
                self.vertices[far], self.vertices[0]
            )));
        }
        let apsp = apsp
            .into_iter()
            .map(|row| row.into_iter().map(Option::unwrap).collect())
            .collect();
        let total_length = edges.iter().map(|e| &e.len).sum();

        Ok(MetricGraph {
            inner: Arc::new(Inner {
                vertices: self.vertices,
                edges,
                rays,
                vertex_index,
                edge_index,
                ray_index,
                incidence,
                apsp,
                total_length,
            }),
        })
    }
}

/// Dijkstra from every vertex over the vertex skeleton.
fn all_pairs(n: usize, edges: &[Edge]) -> Vec<Vec<Option<Scalar>>> {
    let mut adj: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); n];
    for e in edges {
        if e.u != e.v {
            adj[e.u.0].push((e.v.0, &e.len));
            adj[e.v.0].push((e.u.0, &e.len));
        }
    }
    (0..n)
        .map(|src| {
            let mut dist: Vec<Option<Scalar>> = vec![None; n];
            let mut heap = BinaryHeap::new();
            dist[src] = Some(Scalar::zero());
            heap.push(Reverse((Scalar::zero(), src)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if dist[u].as_ref().is_some_and(|best| *best < d) {
                    continue;
                }
                for &(v, len) in &adj[u] {
                    let cand = &d + len;
                    if dist[v].as_ref().is_none_or(|cur| cand < *cur) {
                        dist[v] = Some(cand.clone());
                        heap.push(Reverse((cand, v)));
                    }
                }
            }
            dist
        })
        .collect()
}

impl MetricGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    pub fn ray_count(&self) -> usize {
        self.inner.rays.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count()).map(EdgeId)
    }

    pub fn ray_ids(&self) -> impl Iterator<Item = RayId> {
        (0..self.ray_count()).map(RayId)
    }

    /// Edges first, then rays.
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.edge_ids()
            .map(Segment::Edge)
            .chain(self.ray_ids().map(Segment::Ray))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.inner.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.inner.edges[e.0].name
    }

    pub fn ray_name(&self, r: RayId) -> &str {
        &self.inner.rays[r.0].name
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.inner
            .vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.inner
            .edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown edge {name:?}")))
    }

    pub fn ray_id(&self, name: &str) -> Result<RayId> {
        self.inner
            .ray_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown ray {name:?}")))
    }

    pub fn edge_ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = &self.inner.edges[e.0];
        (edge.u, edge.v)
    }

    pub fn edge_len(&self, e: EdgeId) -> &Scalar {
        &self.inner.edges[e.0].len
    }

    pub fn ray_base(&self, r: RayId) -> VertexId {
        self.inner.rays[r.0].base
    }

    /// `Some(len)` for an edge, `None` for a ray.
    pub fn segment_len(&self, seg: Segment) -> Option<&Scalar> {
        match seg {
            Segment::Edge(e) => Some(self.edge_len(e)),
            Segment::Ray(_) => None,
        }
    }

    /// Vertex at offset 0 of the segment.
    pub fn segment_start(&self, seg: Segment) -> VertexId {
        match seg {
            Segment::Edge(e) => self.inner.edges[e.0].u,
            Segment::Ray(r) => self.inner.rays[r.0].base,
        }
    }

    pub fn segment_name(&self, seg: Segment) -> &str {
        match seg {
            Segment::Edge(e) => self.edge_name(e),
            Segment::Ray(r) => self.ray_name(r),
        }
    }

    pub fn segment_id(&self, name: &str) -> Result<Segment> {
        if let Some(&e) = self.inner.edge_index.get(name) {
            return Ok(Segment::Edge(e));
        }
        if let Some(&r) = self.inner.ray_index.get(name) {
            return Ok(Segment::Ray(r));
        }
        Err(Error::input(format!("unknown edge or ray {name:?}")))
    }

    pub(crate) fn incidence(&self, v: VertexId) -> &[(Segment, Scalar)] {
        &self.inner.incidence[v.0]
    }

    /// Exact shortest-path distance between two vertices.
    pub fn vertex_distance(&self, a: VertexId, b: VertexId) -> &Scalar {
        &self.inner.apsp[a.0][b.0]
    }

    /// Sum of all finite edge lengths.
    pub fn total_length(&self) -> &Scalar {
        &self.inner.total_length
    }

    /// Canonical point at offset `t` along `seg`.
    pub fn point(&self, seg: Segment, t: Scalar) -> Result<GraphPoint> {
        if t.is_negative() {
            return Err(Error::input(format!(
                "negative offset {t} on {}",
                self.segment_name(seg)
            )));
        }
        match seg {
            Segment::Edge(e) => {
                let edge = &self.inner.edges[e.0];
                if t > edge.len {
                    Err(Error::input(format!(
                        "offset {t} exceeds length {} of edge {:?}",
                        edge.len, edge.name
                    )))
                } else if t.is_zero() {
                    Ok(GraphPoint::Vertex(edge.u))
                } else if t == edge.len {
                    Ok(GraphPoint::Vertex(edge.v))
                } else {
                    Ok(GraphPoint::Edge(e, t))
                }
            }
            Segment::Ray(r) => {
                if t.is_zero() {
                    Ok(GraphPoint::Vertex(self.ray_base(r)))
                } else {
                    Ok(GraphPoint::Ray(r, t))
                }
            }
        }
    }

    pub fn vertex(&self, name: &str) -> Result<GraphPoint> {
        self.vertex_id(name).map(GraphPoint::Vertex)
    }

    pub fn edge_point(&self, name: &str, t: Scalar) -> Result<GraphPoint> {
        self.point(Segment::Edge(self.edge_id(name)?), t)
    }

    pub fn ray_point(&self, name: &str, t: Scalar) -> Result<GraphPoint> {
        self.point(Segment::Ray(self.ray_id(name)?), t)
    }

    pub fn edge_midpoint(&self, e: EdgeId) -> GraphPoint {
        GraphPoint::Edge(e, self.edge_len(e).half())
    }

    /// Checks that a point refers to this graph and is canonical.
    pub fn validate(&self, p: &GraphPoint) -> Result<()> {
        match p {
            GraphPoint::Vertex(v) if v.0 < self.vertex_count() => Ok(()),
            GraphPoint::Edge(e, t) if e.0 < self.edge_count() => {
                if t.is_positive() && t < self.edge_len(*e) {
                    Ok(())
                } else {
                    Err(Error::input(format!(
                        "offset {t} is not interior to edge {:?}",
                        self.edge_name(*e)
                    )))
                }
            }
            GraphPoint::Ray(r, t) if r.0 < self.ray_count() => {
                if t.is_positive() {
                    Ok(())
                } else {
                    Err(Error::input(format!(
                        "offset {t} is not positive on ray {:?}",
                        self.ray_name(*r)
                    )))
                }
            }
            _ => Err(Error::input(format!("point {p:?} does not belong to this graph"))),
        }
    }

    /// Vertices and the midpoint of every edge.
    pub fn default_probe(&self) -> Vec<GraphPoint> {
        self.vertex_ids()
            .map(GraphPoint::Vertex)
            .chain(self.edge_ids().map(|e| self.edge_midpoint(e)))
            .collect()
    }

    /// Exact intrinsic distance.
    pub fn distance(&self, p: &GraphPoint, q: &GraphPoint) -> Result<Scalar> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(DistanceField::new(self, std::slice::from_ref(q)).at(p))
    }

    /// Distance from a vertex to an arbitrary point.
    pub(crate) fn vertex_to_point(&self, w: VertexId, p: &GraphPoint) -> Scalar {
        match p {
            GraphPoint::Vertex(v) => self.vertex_distance(w, *v).clone(),
            GraphPoint::Edge(e, t) => {
                let (u, v) = self.edge_ends(*e);
                let via_u = self.vertex_distance(w, u) + t;
                let via_v = self.vertex_distance(w, v) + (self.edge_len(*e) - t);
                Scalar::min_of(&via_u, &via_v).clone()
            }
            GraphPoint::Ray(r, t) => self.vertex_distance(w, self.ray_base(*r)) + t,
        }
    }

    /// The exact closed ball `{p : d(center, p) <= r}`.
    pub fn ball(&self, center: &GraphPoint, r: &Scalar) -> Result<PlSubset> {
        self.validate(center)?;
        if r.is_negative() {
            return Err(Error::input(format!("negative radius {r}")));
        }
        let field = DistanceField::new(self, std::slice::from_ref(center));
        Ok(field.sublevel(r))
    }

    /// The exact metric sphere `{p : d(center, p) = r}`; finite because the
    /// distance restricted to an edge has slopes ±1.
    pub fn sphere(&self, center: &GraphPoint, r: &Scalar) -> Result<Vec<GraphPoint>> {
        self.validate(center)?;
        if !r.is_positive() {
            return Err(Error::input(format!("sphere radius must be positive, got {r}")));
        }
        let field = DistanceField::new(self, std::slice::from_ref(center));
        Ok(field.level(r))
    }

    /// Largest distance from `x` to any point; `None` when the graph has rays.
    pub fn eccentricity(&self, x: &GraphPoint) -> Result<Option<Scalar>> {
        self.validate(x)?;
        if self.ray_count() > 0 {
            return Ok(None);
        }
        let field = DistanceField::new(self, std::slice::from_ref(x));
        let mut best = Scalar::zero();
        for e in self.edge_ids() {
            let (_, m) = field.profile(Segment::Edge(e), &Scalar::zero(), self.edge_len(e)).max();
            if m > best {
                best = m;
            }
        }
        Ok(Some(best))
    }

    /// Same combinatorics and names with new edge lengths (in edge order).
    pub fn with_lengths(&self, lengths: &[Scalar]) -> Result<MetricGraph> {
        if lengths.len() != self.edge_count() {
            return Err(Error::input(format!(
                "expected {} edge lengths, got {}",
                self.edge_count(),
                lengths.len()
            )));
        }
        let mut b = MetricGraph::builder().vertices(self.inner.vertices.iter().map(String::as_str));
        for (e, len) in self.inner.edges.iter().zip(lengths) {
            b = b.edge(
                &e.name,
                &self.inner.vertices[e.u.0],
                &self.inner.vertices[e.v.0],
                len.clone(),
            );
        }
        for r in &self.inner.rays {
            b = b.ray(&r.name, &self.inner.vertices[r.base.0]);
        }
        b.build()
    }

    pub fn describe_point(&self, p: &GraphPoint) -> String {
        match p {
            GraphPoint::Vertex(v) => self.vertex_name(*v).to_string(),
            GraphPoint::Edge(e, t) => format!("{}@{t}", self.edge_name(*e)),
            GraphPoint::Ray(r, t) => format!("{}@{t}", self.ray_name(*r)),
        }
    }
}

/// Ready-made graphs used throughout the examples and tests.
pub mod catalog {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    /// Square `N, E, S, W` with sides of length 2 and rays `re` at `E`, `rw`
    /// at `W`: the diamond with its two horizontal half-lines, rescaled so
    /// that every side is 2.
    pub fn diamond() -> MetricGraph {
        MetricGraph::builder()
            .vertices(["N", "E", "S", "W"])
            .edge("NE", "N", "E", int(2))
            .edge("ES", "E", "S", int(2))
            .edge("SW", "S", "W", int(2))
            .edge("WN", "W", "N", int(2))
            .ray("re", "E")
            .ray("rw", "W")
            .build()
            .expect("diamond is well formed")
    }

    /// `P–O` and `O–Q` of length 1 and a ray at `O`.
    pub fn bent_line() -> MetricGraph {
        MetricGraph::builder()
            .vertices(["P", "O", "Q"])
            .edge("PO", "P", "O", int(1))
            .edge("OQ", "O", "Q", int(1))
            .ray("ro", "O")
            .build()
            .expect("bent line is well formed")
    }

    /// Two unit-sided diamonds joined at `J1`, with rays at the end junctions
    /// `J0` and `J2`.
    pub fn diamond_chain() -> MetricGraph {
        MetricGraph::builder()
            .vertices(["J0", "T1", "B1", "J1", "T2", "B2", "J2"])
            .edge("J0T1", "J0", "T1", int(1))
            .edge("T1J1", "T1", "J1", int(1))
            .edge("J0B1", "J0", "B1", int(1))
            .edge("B1J1", "B1", "J1", int(1))
            .edge("J1T2", "J1", "T2", int(1))
            .edge("T2J2", "T2", "J2", int(1))
            .edge("J1B2", "J1", "B2", int(1))
            .edge("B2J2", "B2", "J2", int(1))
            .ray("rl", "J0")
            .ray("rr", "J2")
            .build()
            .expect("chain is well formed")
    }

    /// The diamond's square without rays: a compact circle of length 8.
    pub fn square() -> MetricGraph {
        MetricGraph::builder()
            .vertices(["N", "E", "S", "W"])
            .edge("NE", "N", "E", int(2))
            .edge("ES", "E", "S", int(2))
            .edge("SW", "S", "W", int(2))
            .edge("WN", "W", "N", int(2))
            .build()
            .expect("square is well formed")
    }

    /// The real line as a vertex `O` with rays `pos` and `neg`.
    pub fn line() -> MetricGraph {
        MetricGraph::builder()
            .vertex("O")
            .ray("pos", "O")
            .ray("neg", "O")
            .build()
            .expect("line is well formed")
    }

    /// A single edge `u–v` of the given length.
    pub fn segment(len: Scalar) -> MetricGraph {
        MetricGraph::builder()
            .vertices(["u", "v"])
            .edge("uv", "u", "v", len)
            .build()
            .expect("segment is well formed")
    }

    /// Point on [`line`] at signed coordinate `x`.
    pub fn line_point(g: &MetricGraph, x: &Scalar) -> GraphPoint {
        let name = if x.is_negative() { "neg" } else { "pos" };
        g.ray_point(name, x.abs()).expect("line has pos/neg rays")
    }
}
