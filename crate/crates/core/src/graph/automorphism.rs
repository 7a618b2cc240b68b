//! Length-preserving graph automorphisms.

use std::collections::HashMap;

use super::{EdgeId, GraphPoint, MetricGraph, RayId, VertexId};
use crate::error::{Error, Result};

/// A bijection of vertices, edges and rays that preserves incidence and
/// edge lengths, hence the path metric. An edge image may be traversed in
/// the opposite direction (`flip`), which maps offset `t` to `len - t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    vertices: Vec<VertexId>,
    edges: Vec<(EdgeId, bool)>,
    rays: Vec<RayId>,
}

impl Automorphism {
    pub fn identity(g: &MetricGraph) -> Self {
        Automorphism {
            vertices: g.vertex_ids().collect(),
            edges: g.edge_ids().map(|e| (e, false)).collect(),
            rays: g.ray_ids().collect(),
        }
    }

    /// Builds an automorphism from named maps. Edges missing from
    /// `edge_map` are matched automatically to an unused edge joining the
    /// image endpoints with the same length; rays missing from `ray_map` must
    /// be the only ray at the image base.
    pub fn from_names(
        g: &MetricGraph,
        vertex_map: &HashMap<String, String>,
        ray_map: &HashMap<String, String>,
        edge_map: &HashMap<String, String>,
    ) -> Result<Self> {
        let mut vertices = Vec::with_capacity(g.vertex_count());
        for v in g.vertex_ids() {
            let name = g.vertex_name(v);
            let image = vertex_map.get(name).map_or(name, String::as_str);
            vertices.push(g.vertex_id(image)?);
        }

        let mut used = vec![false; g.edge_count()];
        let mut edges: Vec<Option<(EdgeId, bool)>> = vec![None; g.edge_count()];
        for (from, to) in edge_map {
            let (e, f) = (g.edge_id(from)?, g.edge_id(to)?);
            let (u, v) = g.edge_ends(e);
            let (a, b) = g.edge_ends(f);
            let flip = if (vertices[u.0], vertices[v.0]) == (a, b) {
                false
            } else if (vertices[u.0], vertices[v.0]) == (b, a) {
                true
            } else {
                return Err(Error::input(format!(
                    "edge map {from:?} -> {to:?} does not respect endpoints"
                )));
            };
            if used[f.0] {
                return Err(Error::input(format!("edge {to:?} is the image of two edges")));
            }
            used[f.0] = true;
            edges[e.0] = Some((f, flip));
        }
        for e in g.edge_ids() {
            if edges[e.0].is_some() {
                continue;
            }
            let (u, v) = g.edge_ends(e);
            let (pu, pv) = (vertices[u.0], vertices[v.0]);
            let found = g.edge_ids().find_map(|f| {
                if used[f.0] || g.edge_len(f) != g.edge_len(e) {
                    return None;
                }
                match g.edge_ends(f) {
                    (a, b) if (a, b) == (pu, pv) => Some((f, false)),
                    (a, b) if (a, b) == (pv, pu) => Some((f, true)),
                    _ => None,
                }
            });
            let Some((f, flip)) = found else {
                return Err(Error::input(format!(
                    "no image for edge {:?} between {:?} and {:?}",
                    g.edge_name(e),
                    g.vertex_name(pu),
                    g.vertex_name(pv)
                )));
            };
            used[f.0] = true;
            edges[e.0] = Some((f, flip));
        }

        let mut rays = Vec::with_capacity(g.ray_count());
        for r in g.ray_ids() {
            let name = g.ray_name(r);
            let image = match ray_map.get(name) {
                Some(to) => g.ray_id(to)?,
                None => {
                    let base = vertices[g.ray_base(r).0];
                    let mut at_base = g.ray_ids().filter(|&s| g.ray_base(s) == base);
                    match (at_base.next(), at_base.next()) {
                        (Some(s), None) => s,
                        _ => return Err(Error::input(format!("ray {name:?} needs an explicit image"))),
                    }
                }
            };
            rays.push(image);
        }

        let auto = Automorphism {
            vertices,
            edges: edges.into_iter().map(Option::unwrap).collect(),
            rays,
        };
        auto.check(g)?;
        Ok(auto)
    }

    /// Verifies bijectivity, incidence and lengths.
    pub fn check(&self, g: &MetricGraph) -> Result<()> {
        if self.vertices.len() != g.vertex_count()
            || self.edges.len() != g.edge_count()
            || self.rays.len() != g.ray_count()
        {
            return Err(Error::Mismatch);
        }
        let bijective = |images: Vec<usize>, n: usize| {
            let mut seen = vec![false; n];
            images
                .into_iter()
                .all(|i| i < n && !std::mem::replace(&mut seen[i], true))
        };
        if !bijective(self.vertices.iter().map(|v| v.0).collect(), g.vertex_count())
            || !bijective(self.edges.iter().map(|(e, _)| e.0).collect(), g.edge_count())
            || !bijective(self.rays.iter().map(|r| r.0).collect(), g.ray_count())
        {
            return Err(Error::input("automorphism is not a bijection"));
        }
        for e in g.edge_ids() {
            let (f, flip) = self.edges[e.0];
            let (u, v) = g.edge_ends(e);
            let (a, b) = g.edge_ends(f);
            let image = (self.vertices[u.0], self.vertices[v.0]);
            if g.edge_len(e) != g.edge_len(f) || image != if flip { (b, a) } else { (a, b) } {
                return Err(Error::input(format!(
                    "edge {:?} is not mapped isometrically onto {:?}",
                    g.edge_name(e),
                    g.edge_name(f)
                )));
            }
        }
        for r in g.ray_ids() {
            if self.vertices[g.ray_base(r).0] != g.ray_base(self.rays[r.0]) {
                return Err(Error::input(format!(
                    "ray {:?} is not mapped to a ray at the image base",
                    g.ray_name(r)
                )));
            }
        }
        // Incidence-preserving bijections preserve the path metric; this is
        // the direct check on the vertex skeleton, reporting a violating pair.
        for a in g.vertex_ids() {
            for b in g.vertex_ids() {
                let (fa, fb) = (self.vertices[a.0], self.vertices[b.0]);
                if g.vertex_distance(a, b) != g.vertex_distance(fa, fb) {
                    return Err(Error::input(format!(
                        "distance not preserved for ({:?}, {:?})",
                        g.vertex_name(a),
                        g.vertex_name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, g: &MetricGraph, p: &GraphPoint) -> GraphPoint {
        match p {
            GraphPoint::Vertex(v) => GraphPoint::Vertex(self.vertices[v.0]),
            GraphPoint::Edge(e, t) => {
                let (f, flip) = self.edges[e.0];
                GraphPoint::Edge(f, if flip { g.edge_len(*e) - t } else { t.clone() })
            }
            GraphPoint::Ray(r, t) => GraphPoint::Ray(self.rays[r.0], t.clone()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            vertices: other.vertices.iter().map(|v| self.vertices[v.0]).collect(),
            edges: other
                .edges
                .iter()
                .map(|(e, flip)| {
                    let (f, flip2) = self.edges[e.0];
                    (f, flip ^ flip2)
                })
                .collect(),
            rays: other.rays.iter().map(|r| self.rays[r.0]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut vertices = self.vertices.clone();
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[v.0] = VertexId(i);
        }
        let mut edges = self.edges.clone();
        for (i, (f, flip)) in self.edges.iter().enumerate() {
            edges[f.0] = (EdgeId(i), *flip);
        }
        let mut rays = self.rays.clone();
        for (i, r) in self.rays.iter().enumerate() {
            rays[r.0] = RayId(i);
        }
        Automorphism { vertices, edges, rays }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, v)| v.0 == i)
            && self.edges.iter().enumerate().all(|(i, (e, flip))| e.0 == i && !flip)
            && self.rays.iter().enumerate().all(|(i, r)| r.0 == i)
    }

    /// Vertex images by name, for reports.
    pub fn vertex_names(&self, g: &MetricGraph) -> Vec<(String, String)> {
        g.vertex_ids()
            .map(|v| {
                (
                    g.vertex_name(v).to_string(),
                    g.vertex_name(self.vertices[v.0]).to_string(),
                )
            })
            .collect()
    }
}
