//! Brute-force ε-net oracle.
//!
//! The graph is subdivided so that consecutive nodes along every edge and
//! ray are at most `ε` apart, rays are cut at a depth `T`, and node-to-node
//! shortest paths are computed by Dijkstra on the subdivided graph. Nothing
//! here uses the piecewise-linear machinery of the exact engine, so the two
//! fail independently.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricGraph, PlSubset, Segment, VertexId};
use crate::hausdorff::hausdorff_pl;
use crate::sample::Sampler;
use crate::scalar::Scalar;
use crate::shooting::{decide_point, shooting_gap};
use crate::space::Space;

/// An oracle estimate and the guaranteed bound on its error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub value: Scalar,
    pub bound: Scalar,
}

impl Estimate {
    pub fn agrees_with(&self, exact: &Scalar) -> bool {
        (exact - &self.value).abs() <= self.bound
    }
}

#[derive(Clone, Debug)]
pub struct EpsilonNet {
    graph: MetricGraph,
    eps: Scalar,
    depth: Scalar,
    /// Location of each node as (segment, offset); vertices use `None`.
    nodes: Vec<(Option<Segment>, Scalar, GraphPoint)>,
    /// Nodes along each segment, sorted by offset, ends included.
    along: HashMap<Segment, Vec<(Scalar, usize)>>,
    /// Last node of each ray (at the cut depth).
    ray_ends: Vec<usize>,
    /// Node-to-node distances as integer multiples of `1/scale`.
    table: Vec<Vec<i128>>,
    scale: BigInt,
}

/// Smallest `k >= 1` with `len / k <= eps`.
fn pieces(len: &Scalar, eps: &Scalar) -> i64 {
    let q = len / eps;
    let n = q.numer() / q.denom();
    let n: i64 = n.try_into().expect("subdivision count fits in i64");
    if Scalar::from_int(n) == q {
        n.max(1)
    } else {
        n + 1
    }
}

/// Rays are cut one unit beyond the deepest probe used by the exact
/// decision procedure at any vertex.
pub fn default_depth(g: &MetricGraph) -> Scalar {
    let reach = g
        .vertex_ids()
        .flat_map(|v| g.ray_ids().map(move |r| (v, r)))
        .map(|(v, r)| g.vertex_distance(v, g.ray_base(r)).clone())
        .max()
        .unwrap_or_else(Scalar::zero);
    Scalar::from_int(2) + g.total_length() + reach
}

impl EpsilonNet {
    pub fn build(g: &MetricGraph, eps: &Scalar, depth: &Scalar) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::input(format!("net resolution must be positive, got {eps}")));
        }
        if g.ray_count() > 0 && !depth.is_positive() {
            return Err(Error::input(format!("truncation depth must be positive, got {depth}")));
        }
        let mut nodes: Vec<(Option<Segment>, Scalar, GraphPoint)> = g
            .vertex_ids()
            .map(|v| (None, Scalar::zero(), GraphPoint::Vertex(v)))
            .collect();
        let mut along: HashMap<Segment, Vec<(Scalar, usize)>> = HashMap::new();
        let mut ray_ends = Vec::new();
        for seg in g.segments() {
            let start = g.segment_start(seg);
            let mut list = vec![(Scalar::zero(), start.0)];
            let (len, end) = match seg {
                Segment::Edge(e) => (g.edge_len(e).clone(), Some(g.edge_ends(e).1)),
                Segment::Ray(_) => (depth.clone(), None),
            };
            let k = pieces(&len, eps);
            let interior = if end.is_some() { k - 1 } else { k };
            for i in 1..=interior {
                let t = &len * &Scalar::ratio(i, k);
                let point = g.point(seg, t.clone())?;
                list.push((t.clone(), nodes.len()));
                nodes.push((Some(seg), t, point));
            }
            match end {
                Some(v) => list.push((len, v.0)),
                None => ray_ends.push(list.last().expect("ray has nodes").1),
            }
            along.insert(seg, list);
        }

        let mut adjacency: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nodes.len()];
        for list in along.values() {
            for w in list.windows(2) {
                let len = &w[1].0 - &w[0].0;
                adjacency[w[0].1].push((w[1].1, len.clone()));
                adjacency[w[1].1].push((w[0].1, len));
            }
        }
        // Shortest paths run on integers: every weight is a multiple of 1/scale.
        let scale = adjacency
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let too_fine = || Error::input(format!("net at resolution {eps} is too fine for integer path lengths"));
        let int_adjacency = adjacency
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(v, w)| {
                        let n = w.numer() * (&scale / w.denom());
                        n.to_i128()
                            .filter(|n| *n < i128::MAX / (nodes.len() as i128 + 1))
                            .map(|n| (*v, n))
                            .ok_or_else(too_fine)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let table = (0..nodes.len())
            .into_par_iter()
            .map(|s| dijkstra(&int_adjacency, s))
            .collect();
        Ok(EpsilonNet {
            graph: g.clone(),
            eps: eps.clone(),
            depth: depth.clone(),
            nodes,
            along,
            ray_ends,
            table,
            scale,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn eps(&self) -> &Scalar {
        &self.eps
    }

    pub fn depth(&self) -> &Scalar {
        &self.depth
    }

    pub fn node_point(&self, i: usize) -> &GraphPoint {
        &self.nodes[i].2
    }

    pub fn node_distance(&self, i: usize, j: usize) -> Scalar {
        self.unscale(self.table[i][j])
    }

    fn unscale(&self, n: i128) -> Scalar {
        Scalar::from_big(BigInt::from(n), self.scale.clone())
    }

    fn row(&self, i: usize) -> Vec<Scalar> {
        self.table[i].iter().map(|&n| self.unscale(n)).collect()
    }

    fn location(&self, p: &GraphPoint) -> Result<(Segment, Scalar)> {
        self.graph.validate(p)?;
        Ok(match p {
            GraphPoint::Vertex(_) => unreachable!("vertices are nodes"),
            GraphPoint::Edge(e, t) => (Segment::Edge(*e), t.clone()),
            GraphPoint::Ray(r, t) => {
                if *t > self.depth {
                    return Err(Error::input(format!(
                        "point beyond the truncation depth {}",
                        self.depth
                    )));
                }
                (Segment::Ray(*r), t.clone())
            }
        })
    }

    /// The nodes bracketing offset `t` on `seg`: `(offset, node)` pairs.
    fn bracket(&self, seg: Segment, t: &Scalar) -> ((Scalar, usize), (Scalar, usize)) {
        let list = &self.along[&seg];
        let i = list.partition_point(|(o, _)| o < t);
        if i < list.len() && list[i].0 == *t {
            return (list[i].clone(), list[i].clone());
        }
        (list[i - 1].clone(), list[i].clone())
    }

    /// Distances from an arbitrary point of the truncated graph to every node.
    pub fn distances_from(&self, p: &GraphPoint) -> Result<Vec<Scalar>> {
        if let GraphPoint::Vertex(v) = p {
            self.graph.validate(p)?;
            return Ok(self.row(v.0));
        }
        let (seg, t) = self.location(p)?;
        let ((ta, a), (tb, b)) = self.bracket(seg, &t);
        let (da, db) = (&t - &ta, &tb - &t);
        Ok(self
            .row(a)
            .iter()
            .zip(&self.row(b))
            .map(|(x, y)| Scalar::min_of(&(&da + x), &(&db + y)).clone())
            .collect())
    }

    /// Distance between two points computed through the net.
    pub fn distance(&self, p: &GraphPoint, q: &GraphPoint) -> Result<Scalar> {
        let from_p = self.distances_from(p)?;
        let via_nodes = match q {
            GraphPoint::Vertex(v) => from_p[v.0].clone(),
            _ => {
                let (seg, t) = self.location(q)?;
                let ((ta, a), (tb, b)) = self.bracket(seg, &t);
                let direct = match p {
                    GraphPoint::Edge(..) | GraphPoint::Ray(..) => {
                        let (sp, tp) = self.location(p)?;
                        let ((pa, _), (pb, _)) = self.bracket(sp, &tp);
                        (sp == seg && pa == ta && pb == tb).then(|| (&tp - &t).abs())
                    }
                    GraphPoint::Vertex(_) => None,
                };
                let through = Scalar::min_of(&(&t - &ta + &from_p[a]), &(&tb - &t + &from_p[b])).clone();
                match direct {
                    Some(d) if d < through => d,
                    _ => through,
                }
            }
        };
        Ok(via_nodes)
    }

    fn nearest_node(&self, seg: Segment, t: &Scalar) -> usize {
        let ((ta, a), (tb, b)) = self.bracket(seg, t);
        if t - &ta <= &tb - t {
            a
        } else {
            b
        }
    }

    /// Nodes inside the set, plus the nodes nearest to every interval end.
    fn sample_set(&self, set: &PlSubset) -> Result<Vec<usize>> {
        if set.graph() != &self.graph {
            return Err(Error::Mismatch);
        }
        if set.max_ray_offset() > self.depth {
            return Err(Error::input(format!(
                "set reaches beyond the truncation depth {}",
                self.depth
            )));
        }
        let mut out: Vec<usize> = set.isolated_vertices().map(|v| v.0).collect();
        for (seg, lo, hi) in set.pieces() {
            for (o, n) in &self.along[&seg] {
                if o >= lo && o <= hi {
                    out.push(*n);
                }
            }
            out.push(self.nearest_node(seg, lo));
            out.push(self.nearest_node(seg, hi));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Discrete Hausdorff distance of the node samples of `a` and `b`;
    /// within `ε` of the true value since each sample is within `ε/2` of
    /// its set in the Hausdorff sense and node distances are exact.
    pub fn hausdorff(&self, a: &PlSubset, b: &PlSubset) -> Result<Estimate> {
        let (na, nb) = (self.sample_set(a)?, self.sample_set(b)?);
        if na.is_empty() || nb.is_empty() {
            return Err(Error::input("Hausdorff distance needs nonempty sets"));
        }
        let directed = |xs: &[usize], ys: &[usize]| {
            xs.iter()
                .map(|&i| ys.iter().map(|&j| self.table[i][j]).min().expect("nonempty"))
                .max()
                .expect("nonempty")
        };
        let (ab, ba) = (self.unscale(directed(&na, &nb)), self.unscale(directed(&nb, &na)));
        Ok(Estimate {
            value: Scalar::max_of(&ab, &ba).clone(),
            bound: &self.eps + &self.eps,
        })
    }

    /// `d(y,x) + r - max{d(y,n) : d(x,n) <= r + ε/2}`, within `ε/2` of the
    /// exact gap.
    pub fn gap(&self, x: &GraphPoint, y: &GraphPoint, r: &Scalar) -> Result<Estimate> {
        if !r.is_positive() {
            return Err(Error::input(format!("shooting radius must be positive, got {r}")));
        }
        let from_x = self.distances_from(x)?;
        let from_y = self.distances_from(y)?;
        let reach = r + &self.eps.half();
        if self.ray_ends.iter().any(|&n| from_x[n] <= reach) {
            return Err(Error::input(format!(
                "ball of radius {r} reaches the truncation depth {}",
                self.depth
            )));
        }
        let far = from_x
            .iter()
            .zip(&from_y)
            .filter(|(dx, _)| **dx <= reach)
            .map(|(_, dy)| dy)
            .max()
            .expect("x has a node within eps/2")
            .clone();
        let value = self.distance(y, x)? + r - far;
        Ok(Estimate {
            value,
            bound: &self.eps + &self.eps,
        })
    }

    /// Sweeps `y` over the nodes (rays up to half the depth) and `r` over a
    /// fixed ladder, keeping radii whose balls stay inside the truncation.
    /// Returns the largest estimated gap with its `(y, r)`.
    pub fn gap_sweep(&self, x: &GraphPoint) -> Result<(Scalar, Option<(GraphPoint, Scalar)>)> {
        let half = self.depth.half();
        let from_x = self.distances_from(x)?;
        // For each admissible radius, the nodes within r + ε/2 of x.
        let mut radii: Vec<(Scalar, Vec<usize>)> = Vec::new();
        for k in [1, 2, 4, 6, 8, 12, 16, 24, 32, 48, 64] {
            let r = Scalar::ratio(k, 2);
            let reach = &r + &self.eps.half();
            if self.ray_ends.iter().any(|&n| from_x[n] <= reach) {
                break;
            }
            let inside = (0..self.nodes.len()).filter(|&n| from_x[n] <= reach).collect();
            radii.push((r, inside));
        }
        let ys: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| {
                self.nodes[i].2 != *x && !(matches!(self.nodes[i].0, Some(Segment::Ray(_))) && self.nodes[i].1 > half)
            })
            .collect();
        let candidates: Vec<(Scalar, usize, usize)> = ys
            .par_iter()
            .flat_map_iter(|&y| {
                let row = &self.table[y];
                let from_x = &from_x;
                radii.iter().enumerate().map(move |(k, (r, inside))| {
                    let far = inside.iter().map(|&n| row[n]).max().expect("x has a nearby node");
                    (&from_x[y] + r - self.unscale(far), y, k)
                })
            })
            .collect();
        let best = candidates
            .into_iter()
            .fold(None::<(Scalar, usize, usize)>, |acc, c| match acc {
                Some(a) if a.0 >= c.0 => Some(a),
                _ => Some(c),
            });
        Ok(match best {
            Some((gap, y, k)) if gap.is_positive() => (gap, Some((self.nodes[y].2.clone(), radii[k].0.clone()))),
            _ => (Scalar::zero(), None),
        })
    }

    /// Oracle verdict: the shooting property is judged to hold when no swept
    /// gap exceeds `2ε`.
    pub fn holds(&self, x: &GraphPoint) -> Result<bool> {
        let (gap, _) = self.gap_sweep(x)?;
        Ok(gap <= &self.eps + &self.eps)
    }

    pub fn vertex_node(&self, v: VertexId) -> usize {
        v.0
    }
}

/// One exact-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub operation: &'static str,
    /// Human-readable description of the inputs.
    pub input: String,
    pub exact: Scalar,
    pub oracle: Scalar,
    pub bound: Scalar,
}

impl ComparisonRow {
    pub fn deviation(&self) -> Scalar {
        (&self.exact - &self.oracle).abs()
    }

    pub fn pass(&self) -> bool {
        self.deviation() <= self.bound
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub eps: Scalar,
    pub depth: Scalar,
    pub nodes: usize,
    pub rows: Vec<ComparisonRow>,
    /// Probe points where the exact verdict and the oracle verdict differ.
    pub verdict_mismatches: Vec<GraphPoint>,
    /// Samples skipped because they reach past the truncation depth.
    pub skipped: usize,
}

impl Comparison {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(ComparisonRow::pass) && self.verdict_mismatches.is_empty()
    }

    pub fn max_deviation(&self) -> Scalar {
        self.rows
            .iter()
            .map(ComparisonRow::deviation)
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

/// Compares the exact engine with the oracle on `n` seeded ball pairs
/// (Hausdorff distance), `n` seeded shooting gaps, and the shooting
/// verdicts on the default probe set.
pub fn compare(g: &MetricGraph, eps: &Scalar, depth: &Scalar, seed: u64, n: usize) -> Result<Comparison> {
    let net = EpsilonNet::build(g, eps, depth)?;
    let space = Space::Graph(g.clone());
    let mut sampler = Sampler::new(seed);
    let samples: Vec<(GraphPoint, Scalar, GraphPoint, Scalar)> = sampler
        .quadruples(&space, n)
        .into_iter()
        .map(|s| {
            let exact = |l: &crate::length::Length| l.as_exact().expect("graph radii are exact").clone();
            (
                s.x.as_graph().expect("graph point").clone(),
                exact(&s.t),
                s.y.as_graph().expect("graph point").clone(),
                exact(&s.s),
            )
        })
        .collect();
    let outcomes = samples
        .par_iter()
        .map(|(x, t, y, s)| -> Result<Vec<Option<ComparisonRow>>> {
            let mut out = Vec::new();
            let (a, b) = (g.ball(x, t)?, g.ball(y, s)?);
            out.push(match net.hausdorff(&a, &b) {
                Ok(est) => Some(ComparisonRow {
                    operation: "hausdorff",
                    input: format!("x={} t={t} y={} s={s}", g.describe_point(x), g.describe_point(y)),
                    exact: hausdorff_pl(&a, &b)?,
                    oracle: est.value,
                    bound: est.bound,
                }),
                Err(Error::Input(_)) => None,
                Err(e) => return Err(e),
            });
            let r = if t.is_positive() { t.clone() } else { Scalar::one() };
            if x != y {
                out.push(match net.gap(x, y, &r) {
                    Ok(est) => Some(ComparisonRow {
                        operation: "gap",
                        input: format!("x={} y={} r={r}", g.describe_point(x), g.describe_point(y)),
                        exact: shooting_gap(g, x, y, &r)?,
                        oracle: est.value,
                        bound: est.bound,
                    }),
                    Err(Error::Input(_)) => None,
                    Err(e) => return Err(e),
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    let mut skipped = 0;
    for row in outcomes.into_iter().flatten() {
        match row {
            Some(r) => rows.push(r),
            None => skipped += 1,
        }
    }
    let mut verdict_mismatches = Vec::new();
    for p in g.default_probe() {
        if decide_point(g, &p)?.holds() != net.holds(&p)? {
            verdict_mismatches.push(p);
        }
    }
    Ok(Comparison {
        eps: eps.clone(),
        depth: depth.clone(),
        nodes: net.node_count(),
        rows,
        verdict_mismatches,
        skipped,
    })
}

fn dijkstra(adjacency: &[Vec<(usize, i128)>], source: usize) -> Vec<i128> {
    let mut dist = vec![i128::MAX; adjacency.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0i128, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adjacency[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    debug_assert!(dist.iter().all(|d| *d < i128::MAX), "net is connected");
    dist
}

/// Hausdorff distance of two arcs `B̄_t(x)`, `B̄_s(y)` of a circle, by
/// brute force over `n` equally spaced nodes; error at most one node
/// spacing. Angles in radians, radii as arc lengths.
pub fn circle_ball_hausdorff(radius: f64, n: usize, x: f64, t: f64, y: f64, s: f64) -> f64 {
    let step = 2.0 * PI / n as f64;
    let arc = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(2.0 * PI);
        radius * d.min(2.0 * PI - d)
    };
    let angles: Vec<f64> = (0..n).map(|i| i as f64 * step).collect();
    let slack = radius * step / 2.0;
    let inside = |c: f64, r: f64| -> Vec<f64> {
        let mut v: Vec<f64> = angles.iter().copied().filter(|&a| arc(a, c) <= r + slack).collect();
        if v.is_empty() {
            v.push(c);
        }
        v
    };
    let (a, b) = (inside(x, t), inside(y, s));
    let directed = |xs: &[f64], ys: &[f64]| {
        xs.iter()
            .map(|&p| ys.iter().map(|&q| arc(p, q)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(&a, &b).max(directed(&b, &a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn node_counts() {
        let seg = catalog::segment(int(1));
        assert_eq!(EpsilonNet::build(&seg, &q(1, 4), &int(0)).unwrap().node_count(), 5);
        let d = catalog::diamond();
        assert_eq!(
            EpsilonNet::build(&d, &q(1, 8), &int(12)).unwrap().node_count(),
            4 + 4 * 15 + 2 * 96
        );
        let b = catalog::bent_line();
        let net = EpsilonNet::build(&b, &q(1, 2), &int(2)).unwrap();
        assert_eq!(net.node_count(), 3 + 2 + 4);
        assert!(EpsilonNet::build(&b, &int(0), &int(2)).is_err());
    }

    #[test]
    fn table_is_a_metric_on_nodes() {
        let net = EpsilonNet::build(&catalog::diamond(), &q(1, 2), &int(4)).unwrap();
        for i in 0..net.node_count() {
            assert!(net.node_distance(i, i).is_zero());
            for j in 0..net.node_count() {
                assert_eq!(net.node_distance(i, j), net.node_distance(j, i));
            }
        }
    }

    #[test]
    fn diamond_values() {
        let g = catalog::diamond();
        let net = EpsilonNet::build(&g, &q(1, 32), &int(12)).unwrap();
        let x = g.edge_point("WN", int(1)).unwrap();
        let s = g.vertex("S").unwrap();
        assert_eq!(net.distance(&x, &s).unwrap(), int(3));
        assert_eq!(net.distance(&s, &g.ray_point("rw", int(4)).unwrap()).unwrap(), int(6));
        let gap = net.gap(&x, &s, &int(5)).unwrap();
        assert!(gap.agrees_with(&int(2)), "{gap:?}");
        let w1 = g.ball(&g.vertex("W").unwrap(), &int(1)).unwrap();
        let e1 = g.ball(&g.vertex("E").unwrap(), &int(1)).unwrap();
        assert!(net.hausdorff(&w1, &e1).unwrap().agrees_with(&int(4)));
    }

    #[test]
    fn truncation_is_enforced() {
        let g = catalog::diamond();
        let net = EpsilonNet::build(&g, &q(1, 4), &int(6)).unwrap();
        let w = g.vertex("W").unwrap();
        assert!(net.gap(&w, &g.vertex("E").unwrap(), &int(10)).is_err());
        assert!(net.distances_from(&g.ray_point("rw", int(7)).unwrap()).is_err());
    }

    #[test]
    fn comparison_on_diamond() {
        let g = catalog::diamond();
        let depth = default_depth(&g);
        let c = compare(&g, &q(1, 8), &depth, 11, 20).unwrap();
        assert!(
            c.pass(),
            "{:?}",
            c.rows.iter().filter(|r| !r.pass()).collect::<Vec<_>>()
        );
        assert!(c.rows.len() >= 30);
    }

    #[test]
    fn circle_half_turn_balls() {
        for (x, y) in [(0.0, 1.0), (0.5, 4.0), (2.0, 5.5)] {
            assert!(circle_ball_hausdorff(1.0, 512, x, PI, y, PI) <= 1e-12);
        }
    }
}
