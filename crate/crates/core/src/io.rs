//! File formats: space descriptions, points, subsets, verdicts, isometries
//! and sample CSVs.
//!
//! Rationals are written as `"a/b"` strings (integers as `"n"`); on input
//! decimal strings and JSON integers are accepted as well. Floats are
//! written with 12 significant digits.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::constructors::{FamilyStep, Norm, PerturbedFamily, ProductSpace, QuotientSpace};
use crate::error::{Error, Result};
use crate::graph::{Automorphism, GraphPoint, Intervals, MetricGraph, PlSubset, Segment};
use crate::isometry::{Isometry, Motion};
use crate::length::{format_float, Length, FLOAT_TOL};
use crate::model::{ModelPoint, ModelSpace};
use crate::sample::Sample;
use crate::scalar::Scalar;
use crate::shooting::ShootingVerdict;
use crate::sigma::TaxicabReport;
use crate::space::{Point, Space};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceFile {
    space: SpaceSpec,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum SpaceSpec {
    Graph(GraphSpec),
    Line,
    Euclidean {
        dim: usize,
    },
    Hyperbolic2,
    Circle {
        radius: f64,
    },
    Halfplane,
    Product {
        norm: String,
        components: Vec<SpaceSpec>,
    },
    Quotient {
        base: Box<SpaceSpec>,
        group: Vec<AutomorphismSpec>,
    },
    Family {
        base: Box<SpaceSpec>,
        steps: Vec<StepSpec>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphSpec {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeSpec>,
    #[serde(default)]
    rays: Vec<RaySpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeSpec {
    id: String,
    u: String,
    v: String,
    len: Scalar,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RaySpec {
    id: String,
    base: String,
}

/// A group element by name maps; unmapped vertices are fixed, unmapped
/// edges and rays are inferred where unambiguous.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct AutomorphismSpec {
    #[serde(default)]
    vertices: HashMap<String, String>,
    #[serde(default)]
    rays: HashMap<String, String>,
    #[serde(default)]
    edges: HashMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepSpec {
    label: String,
    /// Edge lengths overriding the base; unlisted edges keep theirs.
    lengths: BTreeMap<String, Scalar>,
}

/// A loaded space file. Family files load as their base graph together
/// with the family.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub space: Space,
    pub family: Option<PerturbedFamily>,
}

fn build_graph(spec: GraphSpec) -> Result<MetricGraph> {
    let mut b = MetricGraph::builder().vertices(spec.vertices.iter().map(String::as_str));
    for e in &spec.edges {
        b = b.edge(&e.id, &e.u, &e.v, e.len.clone());
    }
    for r in &spec.rays {
        b = b.ray(&r.id, &r.base);
    }
    b.build()
}

fn graph_of(spec: SpaceSpec, role: &str) -> Result<MetricGraph> {
    match spec {
        SpaceSpec::Graph(g) => build_graph(g),
        _ => Err(Error::input(format!("{role} must be a graph"))),
    }
}

fn build_automorphism(g: &MetricGraph, spec: &AutomorphismSpec) -> Result<Automorphism> {
    Automorphism::from_names(g, &spec.vertices, &spec.rays, &spec.edges)
}

fn build(spec: SpaceSpec) -> Result<Loaded> {
    let space = match spec {
        SpaceSpec::Graph(g) => Space::Graph(build_graph(g)?),
        SpaceSpec::Line => Space::Model(ModelSpace::Line),
        SpaceSpec::Euclidean { dim } => {
            if !(1..=3).contains(&dim) {
                return Err(Error::input(format!(
                    "euclidean dimension must be 1, 2 or 3, got {dim}"
                )));
            }
            Space::Model(ModelSpace::Euclidean { dim })
        }
        SpaceSpec::Hyperbolic2 => Space::Model(ModelSpace::Hyperbolic2),
        SpaceSpec::Circle { radius } => {
            if !(radius.is_finite() && radius > 0.0) {
                return Err(Error::input(format!("circle radius must be positive, got {radius}")));
            }
            Space::Model(ModelSpace::Circle { radius })
        }
        SpaceSpec::Halfplane => Space::Model(ModelSpace::HalfPlane),
        SpaceSpec::Product { norm, components } => {
            let norm: Norm = norm.parse()?;
            let [left, right]: [SpaceSpec; 2] = components
                .try_into()
                .map_err(|_| Error::input("a product needs exactly two components"))?;
            let (left, right) = (build(left)?, build(right)?);
            if left.family.is_some() || right.family.is_some() {
                return Err(Error::input("product components cannot be families"));
            }
            ProductSpace::new(left.space, right.space, norm).into_space()
        }
        SpaceSpec::Quotient { base, group } => {
            let base = graph_of(*base, "quotient base")?;
            let mut elements = group
                .iter()
                .map(|a| build_automorphism(&base, a))
                .collect::<Result<Vec<_>>>()?;
            let id = Automorphism::identity(&base);
            if !elements.contains(&id) {
                elements.insert(0, id);
            }
            QuotientSpace::new(base, elements)?.into_space()
        }
        SpaceSpec::Family { base, steps } => {
            let base = graph_of(*base, "family base")?;
            let steps = steps
                .into_iter()
                .map(|s| {
                    let mut lengths: Vec<Scalar> = base.edge_ids().map(|e| base.edge_len(e).clone()).collect();
                    for (name, len) in s.lengths {
                        lengths[base.edge_id(&name)?.0] = len;
                    }
                    Ok(FamilyStep {
                        label: s.label,
                        lengths,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let family = PerturbedFamily::new(base.clone(), steps)?;
            return Ok(Loaded {
                space: Space::Graph(base),
                family: Some(family),
            });
        }
    };
    Ok(Loaded { space, family: None })
}

/// Parses a space description; JSON errors carry line and column.
pub fn parse_space(text: &str) -> Result<Loaded> {
    let file: SpaceFile = serde_json::from_str(text)?;
    build(file.space)
}

pub fn load_space(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read space file {}: {e}", path.display())))?;
    parse_space(&text).map_err(|e| match e {
        Error::Json(j) => Error::input(format!("{}: {j}", path.display())),
        other => other,
    })
}

fn scalar_value(v: &Value, what: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().expect("checked"))),
        Value::Number(n) => n.to_string().parse(),
        _ => Err(Error::input(format!("{what}: expected a rational, got {v}"))),
    }
}

fn float_value(v: &Value, what: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::input(format!("{what}: bad number {n}"))),
        Value::String(s) => parse_float(s),
        _ => Err(Error::input(format!("{what}: expected a number, got {v}"))),
    }
}

/// A float from a decimal, a rational `a/b`, or a multiple of `pi` such as
/// `pi`, `2pi`, `pi/2` or `3pi/4`.
pub fn parse_float(s: &str) -> Result<f64> {
    let s = s.trim();
    if let Some((coef, rest)) = s.split_once("pi") {
        let c = match coef.trim() {
            "" => 1.0,
            "-" => -1.0,
            c => c
                .parse::<f64>()
                .map_err(|_| Error::input(format!("cannot parse {s:?}")))?,
        };
        let d = match rest.trim().strip_prefix('/') {
            Some(d) => d
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::input(format!("cannot parse {s:?}")))?,
            None if rest.trim().is_empty() => 1.0,
            None => return Err(Error::input(format!("cannot parse {s:?}"))),
        };
        return Ok(c * std::f64::consts::PI / d);
    }
    match s.parse::<f64>() {
        Ok(x) => Ok(x),
        Err(_) => Ok(s.parse::<Scalar>()?.to_f64()),
    }
}

/// A radius or other length in the arithmetic of the space.
pub fn parse_length(space: &Space, s: &str) -> Result<Length> {
    if space.is_exact() {
        Ok(Length::Exact(s.parse()?))
    } else {
        Ok(Length::Approx(parse_float(s)?))
    }
}

fn graph_point_value(g: &MetricGraph, v: &Value) -> Result<GraphPoint> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::input(format!("expected a graph point object, got {v}")))?;
    let t = || {
        obj.get("t")
            .ok_or_else(|| Error::input(format!("point {v} needs an offset \"t\"")))
            .and_then(|t| scalar_value(t, "offset"))
    };
    let p = match (obj.get("vertex"), obj.get("edge"), obj.get("ray")) {
        (Some(Value::String(name)), None, None) if obj.len() == 1 => g.vertex(name)?,
        (None, Some(Value::String(name)), None) if obj.len() == 2 => g.edge_point(name, t()?)?,
        (None, None, Some(Value::String(name))) if obj.len() == 2 => g.ray_point(name, t()?)?,
        _ => {
            return Err(Error::input(format!(
                "graph point must be {{\"vertex\":..}}, {{\"edge\":..,\"t\":..}} or {{\"ray\":..,\"t\":..}}, got {v}"
            )))
        }
    };
    Ok(p)
}

fn coords(v: &Value, n: usize, what: &str) -> Result<Vec<f64>> {
    let arr = match v {
        Value::Array(a) => a.clone(),
        other if n == 1 => vec![other.clone()],
        _ => {
            return Err(Error::input(format!(
                "{what}: expected an array of {n} numbers, got {v}"
            )))
        }
    };
    if arr.len() != n {
        return Err(Error::input(format!(
            "{what}: expected {n} coordinates, got {}",
            arr.len()
        )));
    }
    arr.iter().map(|x| float_value(x, what)).collect()
}

fn model_point_value(m: &ModelSpace, v: &Value) -> Result<ModelPoint> {
    let p = match m {
        ModelSpace::Line => {
            let x = match v {
                Value::Array(a) if a.len() == 1 => &a[0],
                Value::Array(_) => return Err(Error::input(format!("line point must have one coordinate, got {v}"))),
                other => other,
            };
            ModelPoint::Line(scalar_value(x, "line point")?)
        }
        ModelSpace::Euclidean { dim } => ModelPoint::Coords(coords(v, *dim, "euclidean point")?),
        ModelSpace::HalfPlane => ModelPoint::Coords(coords(v, 2, "half-plane point")?),
        ModelSpace::Circle { .. } => ModelPoint::angle(coords(v, 1, "circle point")?[0]),
        ModelSpace::Hyperbolic2 => match v.as_array().map(Vec::len) {
            // Two coordinates are lifted onto the hyperboloid.
            Some(2) => {
                let c = coords(v, 2, "hyperbolic point")?;
                ModelPoint::hyperbolic(c[0], c[1])
            }
            // Rendered coordinates sit slightly off the sheet; points within
            // tolerance are projected back.
            _ => {
                let c = coords(v, 3, "hyperbolic point")?;
                let residual = c[0] * c[0] - c[1] * c[1] - c[2] * c[2] - 1.0;
                if c[0] > 0.0 && residual.abs() <= FLOAT_TOL * c[0] * c[0] {
                    ModelPoint::hyperbolic(c[1], c[2])
                } else {
                    ModelPoint::Coords(c)
                }
            }
        },
    };
    m.validate(&p)?;
    Ok(p)
}

/// Reads a point of `space` from JSON.
pub fn point_from_json(space: &Space, v: &Value) -> Result<Point> {
    let p = match space {
        Space::Graph(g) => Point::Graph(graph_point_value(g, v)?),
        Space::Quotient(q) => Point::Graph(graph_point_value(&q.base, v)?),
        Space::Model(m) => Point::Model(model_point_value(m, v)?),
        Space::Product(ps) => match v.as_array().map(Vec::as_slice) {
            Some([a, b]) => Point::pair(point_from_json(&ps.left, a)?, point_from_json(&ps.right, b)?),
            _ => return Err(Error::input(format!("product point must be a pair [p, q], got {v}"))),
        },
    };
    space.validate(&p)?;
    Ok(p)
}

pub fn parse_point(space: &Space, text: &str) -> Result<Point> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("point {text:?}: {e}")))?;
    point_from_json(space, &v)
}

fn float_json(x: f64) -> Value {
    // Round-trip through the 12-digit rendering.
    let s = format_float(x);
    s.parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::String(s), Value::Number)
}

pub fn graph_point_json(g: &MetricGraph, p: &GraphPoint) -> Value {
    match p {
        GraphPoint::Vertex(v) => json!({ "vertex": g.vertex_name(*v) }),
        GraphPoint::Edge(e, t) => json!({ "edge": g.edge_name(*e), "t": t.to_string() }),
        GraphPoint::Ray(r, t) => json!({ "ray": g.ray_name(*r), "t": t.to_string() }),
    }
}

pub fn point_json(space: &Space, p: &Point) -> Value {
    match (space, p) {
        (Space::Graph(g), Point::Graph(q)) => graph_point_json(g, q),
        (Space::Quotient(qs), Point::Graph(q)) => graph_point_json(&qs.base, q),
        (Space::Product(ps), Point::Pair(a, b)) => json!([point_json(&ps.left, a), point_json(&ps.right, b)]),
        (_, Point::Model(ModelPoint::Line(x))) => json!([x.to_string()]),
        (_, Point::Model(ModelPoint::Angle(a))) => json!([float_json(*a)]),
        (_, Point::Model(ModelPoint::Coords(c))) => Value::Array(c.iter().map(|x| float_json(*x)).collect()),
        _ => Value::Null,
    }
}

pub fn length_json(l: &Length) -> Value {
    match l {
        Length::Exact(s) => Value::String(s.to_string()),
        Length::Approx(x) => float_json(*x),
    }
}

/// `{"edges":{"e1":[["0","1/2"]]},"rays":{"rw":[["0","4"]]},"vertices":["S"]}`;
/// `vertices` lists isolated vertices and may be omitted.
pub fn subset_from_json(g: &MetricGraph, v: &Value) -> Result<PlSubset> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::input(format!("expected a subset object, got {v}")))?;
    if let Some(k) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "edges" | "rays" | "vertices"))
    {
        return Err(Error::input(format!("unknown subset field {k:?}")));
    }
    let mut edges = vec![Vec::new(); g.edge_count()];
    let mut rays = vec![Vec::new(); g.ray_count()];
    for key in ["edges", "rays"] {
        let Some(map) = obj.get(key) else { continue };
        let map = map
            .as_object()
            .ok_or_else(|| Error::input(format!("subset {key:?} must be an object")))?;
        for (name, list) in map {
            let seg = g.segment_id(name)?;
            let list = list
                .as_array()
                .ok_or_else(|| Error::input(format!("intervals of {name:?} must be an array")))?;
            for iv in list {
                let (lo, hi) = match iv.as_array().map(Vec::as_slice) {
                    Some([lo, hi]) => (scalar_value(lo, "interval end")?, scalar_value(hi, "interval end")?),
                    _ => return Err(Error::input(format!("interval must be [lo, hi], got {iv}"))),
                };
                if lo > hi {
                    return Err(Error::input(format!("interval [{lo}, {hi}] on {name:?} is reversed")));
                }
                match (key, seg) {
                    ("edges", Segment::Edge(e)) => edges[e.0].push((lo, hi)),
                    ("rays", Segment::Ray(r)) => rays[r.0].push((lo, hi)),
                    _ => return Err(Error::input(format!("{name:?} is not listed under the right key"))),
                }
            }
        }
    }
    let vertices = match obj.get("vertices") {
        None => Vec::new(),
        Some(Value::Array(names)) => names
            .iter()
            .map(|n| {
                n.as_str()
                    .ok_or_else(|| Error::input("vertex names must be strings"))
                    .and_then(|n| g.vertex_id(n))
            })
            .collect::<Result<Vec<_>>>()?,
        Some(other) => return Err(Error::input(format!("subset vertices must be an array, got {other}"))),
    };
    PlSubset::from_parts(
        g,
        edges.into_iter().map(Intervals::new).collect(),
        rays.into_iter().map(Intervals::new).collect(),
        &vertices,
    )
}

pub fn subset_json(set: &PlSubset) -> Value {
    let g = set.graph();
    let mut edges = serde_json::Map::new();
    let mut rays = serde_json::Map::new();
    for (seg, lo, hi) in set.pieces() {
        let target = match seg {
            Segment::Edge(_) => &mut edges,
            Segment::Ray(_) => &mut rays,
        };
        let entry = target
            .entry(g.segment_name(seg).to_string())
            .or_insert_with(|| Value::Array(Vec::new()));
        entry
            .as_array_mut()
            .expect("array")
            .push(json!([lo.to_string(), hi.to_string()]));
    }
    let vertices: Vec<&str> = set.isolated_vertices().map(|v| g.vertex_name(v)).collect();
    let mut out = json!({ "edges": edges, "rays": rays });
    if !vertices.is_empty() {
        out["vertices"] = json!(vertices);
    }
    out
}

pub fn verdict_json(g: &MetricGraph, v: &ShootingVerdict) -> Value {
    match v {
        ShootingVerdict::Holds => json!({ "verdict": "holds" }),
        ShootingVerdict::Fails(w) => json!({
            "verdict": "fails",
            "witness": { "y": graph_point_json(g, &w.y), "r": w.r.to_string(), "gap": w.gap.to_string() },
            "reason": w.reason.to_string(),
        }),
    }
}

/// Isometry files.
///
/// Graphs: `{"kind":"automorphism","vertices":{..},"rays":{..},"edges":{..}}`.
/// Model spaces: `{"kind":"line","flip":bool,"shift":"q"}`,
/// `{"kind":"affine","linear":[[..]],"shift":[..]}`,
/// `{"kind":"rotation","angle":a}`, `{"kind":"lorentz","matrix":[[..]]}`,
/// `{"kind":"boost","length":l}`, `{"kind":"circle","reflect":bool,"rotate":a}`.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum IsometrySpec {
    Automorphism(AutomorphismSpec),
    Line {
        #[serde(default)]
        flip: bool,
        shift: Scalar,
    },
    Affine {
        linear: Vec<Vec<f64>>,
        shift: Vec<f64>,
    },
    Rotation {
        #[serde(deserialize_with = "de_float")]
        angle: f64,
    },
    Lorentz {
        matrix: [[f64; 3]; 3],
    },
    Boost {
        #[serde(deserialize_with = "de_float")]
        length: f64,
    },
    Circle {
        #[serde(default)]
        reflect: bool,
        #[serde(deserialize_with = "de_float")]
        rotate: f64,
    },
}

/// A float given as a JSON number or as a string accepted by [`parse_float`].
fn de_float<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    let v = Value::deserialize(d)?;
    float_value(&v, "angle").map_err(serde::de::Error::custom)
}

pub fn parse_isometry(space: &Space, text: &str) -> Result<Isometry> {
    let spec: IsometrySpec = serde_json::from_str(text)?;
    let iso = match spec {
        IsometrySpec::Automorphism(a) => Isometry::Graph(build_automorphism(space.as_graph()?, &a)?),
        IsometrySpec::Line { flip, shift } => Isometry::Motion(Motion::Line { flip, shift }),
        IsometrySpec::Affine { linear, shift } => Isometry::Motion(Motion::Affine { linear, shift }),
        IsometrySpec::Rotation { angle } => Isometry::Motion(Motion::rotation(angle)),
        IsometrySpec::Lorentz { matrix } => Isometry::Motion(Motion::Lorentz { matrix }),
        IsometrySpec::Boost { length } => Isometry::Motion(Motion::boost(length)),
        IsometrySpec::Circle { reflect, rotate } => Isometry::Motion(Motion::Circle { reflect, rotate }),
    };
    iso.check(space)?;
    Ok(iso)
}

pub const SAMPLE_HEADER: [&str; 4] = ["x", "t", "y", "s"];

/// Sample CSV: columns `x,t,y,s`, points JSON-encoded.
pub fn write_samples<W: Write>(space: &Space, samples: &[Sample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SAMPLE_HEADER)?;
    for s in samples {
        w.write_record([
            point_json(space, &s.x).to_string(),
            s.t.to_string(),
            point_json(space, &s.y).to_string(),
            s.s.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples<R: Read>(space: &Space, input: R) -> Result<Vec<Sample>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != SAMPLE_HEADER {
        return Err(Error::input(format!(
            "sample file header must be x,t,y,s, got {}",
            header.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 2;
        let ctx = |e: Error| Error::input(format!("sample file line {row}: {e}"));
        let x = parse_point(space, &rec[0]).map_err(ctx)?;
        let t = parse_length(space, &rec[1]).map_err(ctx)?;
        let y = parse_point(space, &rec[2]).map_err(ctx)?;
        let s = parse_length(space, &rec[3]).map_err(ctx)?;
        out.push(Sample { x, t, y, s });
    }
    Ok(out)
}

pub const REPORT_HEADER: [&str; 9] = [
    "index",
    "x",
    "t",
    "y",
    "s",
    "hausdorff",
    "taxicab",
    "deviation",
    "lipschitz",
];

/// Report CSV: one row per sample, then a `max` row carrying the largest
/// deviation and the index of the sample attaining it in the `x` column.
pub fn write_taxicab_report<W: Write>(space: &Space, samples: &[Sample], report: &TaxicabReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_HEADER)?;
    for (i, (s, row)) in samples.iter().zip(&report.rows).enumerate() {
        w.write_record([
            i.to_string(),
            point_json(space, &s.x).to_string(),
            s.t.to_string(),
            point_json(space, &s.y).to_string(),
            s.s.to_string(),
            row.hausdorff.to_string(),
            row.taxicab.to_string(),
            row.deviation.to_string(),
            row.lipschitz.to_string(),
        ])?;
    }
    w.write_record([
        "max".to_string(),
        report.worst.to_string(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        report.max_deviation().to_string(),
        report.lipschitz_holds().to_string(),
    ])?;
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::sample::Sampler;

    const DIAMOND: &str = r#"{"space":{"kind":"graph","vertices":["N","E","S","W"],
        "edges":[{"id":"NE","u":"N","v":"E","len":"2"},{"id":"ES","u":"E","v":"S","len":2},
                 {"id":"SW","u":"S","v":"W","len":"2"},{"id":"WN","u":"W","v":"N","len":"2"}],
        "rays":[{"id":"re","base":"E"},{"id":"rw","base":"W"}]}}"#;

    #[test]
    fn graph_file_matches_catalog() {
        let loaded = parse_space(DIAMOND).unwrap();
        assert_eq!(loaded.space, Space::Graph(catalog::diamond()));
    }

    #[test]
    fn malformed_files_report_position() {
        let err = parse_space("{\"space\":{\"kind\":\"graph\",\n\"vertices\":[\"A\"], \"bogus\":1}}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_space(r#"{"space":{"kind":"euclidean","dim":7}}"#).is_err());
        assert!(parse_space(
            r#"{"space":{"kind":"product","norm":"l3","components":[{"kind":"line"},{"kind":"line"}]}}"#
        )
        .is_err());
    }

    #[test]
    fn points_round_trip() {
        let space = parse_space(DIAMOND).unwrap().space;
        for text in [
            r#"{"vertex":"S"}"#,
            r#"{"edge":"NE","t":"1/2"}"#,
            r#"{"ray":"rw","t":"4"}"#,
        ] {
            let p = parse_point(&space, text).unwrap();
            assert_eq!(point_json(&space, &p), serde_json::from_str::<Value>(text).unwrap());
        }
        assert!(parse_point(&space, r#"{"edge":"NE","t":"3"}"#).is_err());
        assert!(parse_point(&space, r#"{"vertex":"Z"}"#).is_err());
        let prod = parse_space(
            r#"{"space":{"kind":"product","norm":"l2","components":[{"kind":"line"},{"kind":"euclidean","dim":2}]}}"#,
        )
        .unwrap()
        .space;
        let p = parse_point(&prod, r#"["1/3", [0.5, 2]]"#).unwrap();
        assert_eq!(parse_point(&prod, &point_json(&prod, &p).to_string()).unwrap(), p);
    }

    #[test]
    fn subsets_round_trip() {
        let g = catalog::diamond();
        let v: Value = serde_json::from_str(r#"{"edges":{"NE":[["0","1/2"]]},"rays":{"rw":[["0","4"]]}}"#).unwrap();
        let set = subset_from_json(&g, &v).unwrap();
        assert_eq!(subset_from_json(&g, &subset_json(&set)).unwrap(), set);
        let ball = g.ball(&g.vertex("W").unwrap(), &Scalar::from_int(1)).unwrap();
        assert_eq!(subset_from_json(&g, &subset_json(&ball)).unwrap(), ball);
    }

    #[test]
    fn quotient_and_family_files() {
        let text = format!(
            r#"{{"space":{{"kind":"quotient","base":{},"group":[{{"vertices":{{"W":"E","E":"W"}},"rays":{{"rw":"re","re":"rw"}}}}]}}}}"#,
            &DIAMOND[9..DIAMOND.len() - 1]
        );
        let q = parse_space(&text).unwrap().space;
        let Space::Quotient(q) = q else {
            panic!("expected quotient")
        };
        assert_eq!(q.group().len(), 2);
        let text = format!(
            r#"{{"space":{{"kind":"family","base":{},"steps":[{{"label":"1","lengths":{{"NE":"3"}}}}]}}}}"#,
            &DIAMOND[9..DIAMOND.len() - 1]
        );
        let loaded = parse_space(&text).unwrap();
        assert_eq!(loaded.family.unwrap().len(), 1);
    }

    #[test]
    fn samples_round_trip() {
        for text in [
            DIAMOND,
            r#"{"space":{"kind":"hyperbolic2"}}"#,
            r#"{"space":{"kind":"circle","radius":1.5}}"#,
        ] {
            let space = parse_space(text).unwrap().space;
            let samples = Sampler::new(3).quadruples(&space, 20);
            let mut buf = Vec::new();
            write_samples(&space, &samples, &mut buf).unwrap();
            let back = read_samples(&space, buf.as_slice()).unwrap();
            assert_eq!(back.len(), samples.len());
            for (a, b) in samples.iter().zip(&back) {
                assert!(space.distance(&a.x, &b.x).unwrap().is_zero_within(1e-9));
                assert!(space.distance(&a.y, &b.y).unwrap().is_zero_within(1e-9));
                assert!(a.t.abs_diff(&b.t).is_zero_within(1e-9));
            }
            if space.is_exact() {
                assert_eq!(back, samples);
            }
        }
    }

    #[test]
    fn floats_and_pi() {
        assert_eq!(parse_float("pi/2").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(parse_float("3/4").unwrap(), 0.75);
        assert_eq!(parse_float("-pi").unwrap(), -std::f64::consts::PI);
        assert!(parse_float("pix").is_err());
    }
}
