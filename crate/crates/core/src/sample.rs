//! Seeded random points, radii and sample quadruples.
//!
//! Graph samples use small dyadic offsets so that every computation stays
//! exact and cheap. The stream depends only on the seed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{GraphPoint, MetricGraph, Segment};
use crate::length::Length;
use crate::model::{ModelPoint, ModelSpace};
use crate::scalar::Scalar;
use crate::space::{Ball, Point, Space};

/// `(x, t, y, s)`: the pair of balls `B̄_t(x)`, `B̄_s(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub x: Point,
    pub t: Length,
    pub y: Point,
    pub s: Length,
}

impl Sample {
    pub fn balls(&self) -> (Ball, Ball) {
        (
            Ball {
                center: self.x.clone(),
                radius: self.t.clone(),
            },
            Ball {
                center: self.y.clone(),
                radius: self.s.clone(),
            },
        )
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn dyadic(&mut self, max_quarters: i64) -> Scalar {
        Scalar::ratio(self.rng.gen_range(0..=max_quarters), 4)
    }

    pub fn graph_point(&mut self, g: &MetricGraph) -> GraphPoint {
        let segments: Vec<Segment> = g.segments().collect();
        if segments.is_empty() || self.rng.gen_bool(0.25) {
            let v = self.rng.gen_range(0..g.vertex_count());
            return GraphPoint::Vertex(crate::graph::VertexId(v));
        }
        let seg = segments[self.rng.gen_range(0..segments.len())];
        let t = match g.segment_len(seg) {
            Some(len) => len * &Scalar::ratio(self.rng.gen_range(1..8), 8),
            None => Scalar::ratio(self.rng.gen_range(1..=16), 4),
        };
        g.point(seg, t).expect("sampled offsets are in range")
    }

    fn graph_radius(&mut self, g: &MetricGraph) -> Scalar {
        let reach = g.total_length().half().to_f64().ceil() as i64 + 2;
        self.dyadic(4 * reach)
    }

    pub fn model_point(&mut self, m: &ModelSpace) -> ModelPoint {
        let r = &mut self.rng;
        match m {
            ModelSpace::Line => ModelPoint::Line(Scalar::ratio(r.gen_range(-40..=40), 4)),
            ModelSpace::Euclidean { dim } => ModelPoint::Coords((0..*dim).map(|_| r.gen_range(-5.0..5.0)).collect()),
            ModelSpace::Hyperbolic2 => ModelPoint::hyperbolic(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)),
            ModelSpace::Circle { .. } => ModelPoint::angle(r.gen_range(0.0..2.0 * PI)),
            ModelSpace::HalfPlane => ModelPoint::Coords(vec![r.gen_range(-5.0..5.0), r.gen_range(0.0..5.0)]),
        }
    }

    fn model_radius(&mut self, m: &ModelSpace) -> Length {
        match m {
            ModelSpace::Line => Length::Exact(self.dyadic(40)),
            ModelSpace::Circle { radius } => Length::Approx(self.rng.gen_range(0.0..1.25 * PI * radius)),
            _ => Length::Approx(self.rng.gen_range(0.0..4.0)),
        }
    }

    pub fn point(&mut self, space: &Space) -> Point {
        match space {
            Space::Graph(g) => Point::Graph(self.graph_point(g)),
            Space::Quotient(q) => Point::Graph(self.graph_point(&q.base)),
            Space::Model(m) => Point::Model(self.model_point(m)),
            Space::Product(p) => {
                let a = self.point(&p.left);
                let b = self.point(&p.right);
                Point::pair(a, b)
            }
        }
    }

    pub fn radius(&mut self, space: &Space) -> Length {
        match space {
            Space::Graph(g) => Length::Exact(self.graph_radius(g)),
            Space::Quotient(q) => Length::Exact(self.graph_radius(&q.base)),
            Space::Model(m) => self.model_radius(m),
            Space::Product(p) => {
                // Exact factors get exact radii so that ℓ∞ checks stay exact.
                if space.is_exact() {
                    self.radius(&p.left)
                } else {
                    Length::Approx(self.radius(&p.left).to_f64())
                }
            }
        }
    }

    pub fn quadruple(&mut self, space: &Space) -> Sample {
        let x = self.point(space);
        let t = self.radius(space);
        let y = self.point(space);
        let s = self.radius(space);
        Sample { x, t, y, s }
    }

    pub fn quadruples(&mut self, space: &Space, n: usize) -> Vec<Sample> {
        (0..n).map(|_| self.quadruple(space)).collect()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
