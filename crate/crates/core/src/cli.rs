//! Command-line front end.
//!
//! Every command produces a report rendered either as pretty JSON or as a
//! CSV table with a fixed header. Exit codes: 0 when the computation
//! succeeded and every checked property holds, 1 when a property is
//! violated (the report carries the witness), 2 on input or usage errors.
//!
//! CSV headers:
//!
//! | command | header |
//! |---|---|
//! | `dist` | `p,q,distance` |
//! | `ball` | `segment,lo,hi` (isolated vertices as `vertex,name,`) |
//! | `sphere` | `point` |
//! | `hausdorff` | `operation,a,b,hausdorff,taxicab` |
//! | `shoot point`, `shoot space` | `point,verdict,y,r,gap,reason` |
//! | `shoot gap` | `x,y,r,gap` |
//! | `sigma verify` | `index,x,t,y,s,hausdorff,taxicab,deviation,lipschitz` plus a `max` row |
//! | `sigma midpoints` | `center,radius,to_first,to_second,target,verified` |
//! | `lift` | `index,x,t,y,s,before,after,deviation` |
//! | `product check` | `check,index,value,expected,residual,pass` |
//! | `quotient check` | `index,x,t,y,s,hausdorff,taxicab,deviation` |
//! | `family check` | `step,delta,length_bound,max_change,violations,verdicts_stable` |
//! | `oracle compare` | `operation,input,exact,oracle,bound,pass` |
//! | `samples` | `x,t,y,s` |

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde_json::{json, Value};

use crate::constructors::{Norm, Split};
use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricGraph};
use crate::io::{self, Loaded};
use crate::length::{format_float, Length, FLOAT_TOL};
use crate::oracle;
use crate::sample::{Sample, Sampler};
use crate::scalar::Scalar;
use crate::shooting::{decide_point, decide_space, ShootingVerdict};
use crate::sigma::{lift_isometry, midpoint_census, sigma_midpoints, taxicab_deviation};
use crate::space::{Ball, Point, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "ballspace",
    version,
    about = "Hausdorff geometry of closed balls in metric graphs and model spaces"
)]
pub struct Cli {
    /// Space description file (JSON).
    #[arg(long, global = true)]
    space: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Oracle net resolution.
    #[arg(long, global = true, default_value = "1/8")]
    eps: String,
    /// Oracle ray truncation depth; defaults to the deepest probe plus one.
    #[arg(long, global = true)]
    depth: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance between two points.
    Dist { p: String, q: String },
    /// The closed ball as a subset of a graph.
    Ball { x: String, r: String },
    /// The sphere of a graph as a finite point list.
    Sphere { x: String, r: String },
    /// Hausdorff distance of two subsets (graph) or two balls (any space).
    Hausdorff {
        /// Two subsets, each as inline JSON or a file path.
        #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "balls", required_unless_present = "balls")]
        sets: Option<Vec<String>>,
        #[arg(long, num_args = 4, value_names = ["X", "T", "Y", "S"])]
        balls: Option<Vec<String>>,
    },
    /// Shooting property checks.
    Shoot {
        #[command(subcommand)]
        cmd: ShootCmd,
    },
    /// Ball hyperspace checks.
    Sigma {
        #[command(subcommand)]
        cmd: SigmaCmd,
    },
    /// Checks that a point isometry lifts to the ball hyperspace.
    Lift {
        #[arg(long)]
        iso: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Product space checks.
    Product {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Quotient space checks.
    Quotient {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Perturbed family checks.
    Family {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Brute-force oracle comparisons.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Writes seeded sample quadruples (x, t, y, s).
    Samples { n: usize },
}

#[derive(Subcommand, Debug)]
enum ShootCmd {
    /// Decides the property at a graph point, or searches sampled
    /// extensions on a model space.
    Point {
        x: String,
        /// Samples for model spaces.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Decides the property over a probe set (default: vertices and edge midpoints).
    Space {
        /// JSON array of points.
        #[arg(long)]
        probe: Option<PathBuf>,
    },
    /// The shooting gap d(y,x) + r - max over the ball of d(y, .).
    Gap { x: String, y: String, r: String },
}

#[derive(Subcommand, Debug)]
enum SigmaCmd {
    /// Compares d_H of balls with the taxicab distance.
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Sample CSV instead of generated samples.
        #[arg(long)]
        sample_file: Option<PathBuf>,
    },
    /// Metric midpoints of two points, or of two balls with `--radii`.
    Midpoints {
        p: String,
        q: String,
        #[arg(long, num_args = 2, value_names = ["T", "S"])]
        radii: Option<Vec<String>>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Check {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Compare {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// A command result: JSON and tabular views plus the violation flag.
struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    violated: bool,
}

impl Report {
    fn new(json: Value, header: &[&'static str], rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header: header.to_vec(),
            rows,
            violated: false,
        }
    }

    fn violated(mut self, v: bool) -> Self {
        self.violated = v;
        self
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli).and_then(|report| render(&cli, &report, out).map(|()| report.violated)) {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn render(cli: &Cli, report: &Report, out: &mut dyn Write) -> Result<()> {
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report.json)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&report.header)?;
            for row in &report.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn load(cli: &Cli) -> Result<Loaded> {
    let path = cli
        .space
        .as_deref()
        .ok_or_else(|| Error::input("--space FILE is required"))?;
    io::load_space(path)
}

fn graph_of(space: &Space) -> Result<&MetricGraph> {
    match space {
        Space::Graph(g) => Ok(g),
        Space::Quotient(q) => Ok(&q.base),
        other => Err(Error::input(format!(
            "this command needs a graph space, got {}",
            other.kind()
        ))),
    }
}

fn read_json_arg(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::input(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::input(format!("{arg}: {e}")))
}

fn exact_radius(space: &Space, s: &str) -> Result<Scalar> {
    Ok(io::parse_length(space, s)?.require_exact("radius")?.clone())
}

fn graph_samples(samples: &[Sample]) -> Result<Vec<(GraphPoint, Scalar, GraphPoint, Scalar)>> {
    samples
        .iter()
        .map(|s| {
            Ok((
                s.x.as_graph()?.clone(),
                s.t.require_exact("radius")?.clone(),
                s.y.as_graph()?.clone(),
                s.s.require_exact("radius")?.clone(),
            ))
        })
        .collect()
}

fn violates(l: &Length) -> bool {
    !l.is_zero_within(FLOAT_TOL)
}

fn execute(cli: &Cli) -> Result<Report> {
    let loaded = load(cli)?;
    let space = &loaded.space;
    let pt = |s: &str| io::parse_point(space, s);
    let pj = |p: &Point| io::point_json(space, p);
    match &cli.command {
        Command::Dist { p, q } => {
            let (a, b) = (pt(p)?, pt(q)?);
            let d = space.distance(&a, &b)?;
            Ok(Report::new(
                json!({ "p": pj(&a), "q": pj(&b), "distance": io::length_json(&d) }),
                &["p", "q", "distance"],
                vec![vec![pj(&a).to_string(), pj(&b).to_string(), d.to_string()]],
            ))
        }
        Command::Ball { x, r } => {
            let g = graph_of(space)?;
            let c = pt(x)?;
            let r = exact_radius(space, r)?;
            let ball = g.ball(c.as_graph()?, &r)?;
            let mut rows: Vec<Vec<String>> = ball
                .pieces()
                .map(|(seg, lo, hi)| vec![g.segment_name(seg).to_string(), lo.to_string(), hi.to_string()])
                .collect();
            rows.extend(
                ball.isolated_vertices()
                    .map(|v| vec!["vertex".into(), g.vertex_name(v).into(), String::new()]),
            );
            Ok(Report::new(
                json!({ "center": pj(&c), "radius": r.to_string(), "ball": io::subset_json(&ball) }),
                &["segment", "lo", "hi"],
                rows,
            ))
        }
        Command::Sphere { x, r } => {
            let g = graph_of(space)?;
            let c = pt(x)?;
            let r = exact_radius(space, r)?;
            let points: Vec<Value> = g
                .sphere(c.as_graph()?, &r)?
                .iter()
                .map(|p| io::graph_point_json(g, p))
                .collect();
            let rows = points.iter().map(|p| vec![p.to_string()]).collect();
            Ok(Report::new(
                json!({ "center": pj(&c), "radius": r.to_string(), "sphere": points }),
                &["point"],
                rows,
            ))
        }
        Command::Hausdorff { sets, balls } => match (sets, balls) {
            (Some(sets), _) => {
                let g = graph_of(space)?;
                let a = io::subset_from_json(g, &read_json_arg(&sets[0])?)?;
                let b = io::subset_from_json(g, &read_json_arg(&sets[1])?)?;
                let (wa, ab) = crate::hausdorff::directed_pl(&a, &b)?;
                let (wb, ba) = crate::hausdorff::directed_pl(&b, &a)?;
                let d = Scalar::max_of(&ab, &ba).clone();
                let wj = |w: &Option<GraphPoint>| w.as_ref().map_or(Value::Null, |p| io::graph_point_json(g, p));
                Ok(Report::new(
                    json!({
                        "hausdorff": d.to_string(),
                        "directed": [
                            { "from": "A", "value": ab.to_string(), "witness": wj(&wa) },
                            { "from": "B", "value": ba.to_string(), "witness": wj(&wb) },
                        ],
                    }),
                    &["operation", "a", "b", "hausdorff", "taxicab"],
                    vec![vec![
                        "sets".into(),
                        sets[0].clone(),
                        sets[1].clone(),
                        d.to_string(),
                        String::new(),
                    ]],
                ))
            }
            (None, Some(b)) => {
                let b1 = Ball {
                    center: pt(&b[0])?,
                    radius: io::parse_length(space, &b[1])?,
                };
                let b2 = Ball {
                    center: pt(&b[2])?,
                    radius: io::parse_length(space, &b[3])?,
                };
                let d = space.hausdorff_balls(&b1, &b2)?;
                let taxicab = space
                    .distance(&b1.center, &b2.center)?
                    .plus(&b1.radius.abs_diff(&b2.radius));
                Ok(Report::new(
                    json!({
                        "first": { "center": pj(&b1.center), "radius": io::length_json(&b1.radius) },
                        "second": { "center": pj(&b2.center), "radius": io::length_json(&b2.radius) },
                        "hausdorff": io::length_json(&d),
                        "taxicab": io::length_json(&taxicab),
                    }),
                    &["operation", "a", "b", "hausdorff", "taxicab"],
                    vec![vec![
                        "balls".into(),
                        format!("{}@{}", pj(&b1.center), b1.radius),
                        format!("{}@{}", pj(&b2.center), b2.radius),
                        d.to_string(),
                        taxicab.to_string(),
                    ]],
                ))
            }
            (None, None) => Err(Error::input("hausdorff needs --sets or --balls")),
        },
        Command::Shoot { cmd } => shoot(cli, space, cmd),
        Command::Sigma { cmd } => sigma(cli, space, cmd),
        Command::Lift { iso, samples } => {
            let text = std::fs::read_to_string(iso)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", iso.display())))?;
            let iso = io::parse_isometry(space, &text)?;
            let samples = Sampler::new(cli.seed).quadruples(space, *samples);
            let report = lift_isometry(space, &iso, &samples)?;
            let ok = report.preserved(FLOAT_TOL);
            let rows = samples
                .iter()
                .zip(&report.rows)
                .enumerate()
                .map(|(i, (s, r))| {
                    vec![
                        i.to_string(),
                        pj(&s.x).to_string(),
                        s.t.to_string(),
                        pj(&s.y).to_string(),
                        s.s.to_string(),
                        r.before.to_string(),
                        r.after.to_string(),
                        r.deviation.to_string(),
                    ]
                })
                .collect();
            Ok(Report::new(
                json!({ "samples": samples.len(), "max_deviation": io::length_json(&report.max_deviation), "preserved": ok }),
                &["index", "x", "t", "y", "s", "before", "after", "deviation"],
                rows,
            )
            .violated(!ok))
        }
        Command::Product {
            cmd: CheckCmd::Check { samples },
        } => product_check(cli, space, *samples),
        Command::Quotient {
            cmd: CheckCmd::Check { samples },
        } => quotient_check(cli, space, *samples),
        Command::Family {
            cmd: CheckCmd::Check { samples },
        } => family_check(cli, &loaded, *samples),
        Command::Oracle {
            cmd: OracleCmd::Compare { samples },
        } => {
            let g = graph_of(space)?;
            let eps: Scalar = cli.eps.parse()?;
            let depth = match &cli.depth {
                Some(d) => d.parse()?,
                None => oracle::default_depth(g),
            };
            let c = oracle::compare(g, &eps, &depth, cli.seed, *samples)?;
            let rows = c
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.operation.to_string(),
                        r.input.clone(),
                        r.exact.to_string(),
                        r.oracle.to_string(),
                        r.bound.to_string(),
                        if r.pass() { "pass" } else { "fail" }.to_string(),
                    ]
                })
                .collect();
            let failures: Vec<Value> = c
                .rows
                .iter()
                .filter(|r| !r.pass())
                .map(|r| json!({ "operation": r.operation, "input": r.input, "exact": r.exact.to_string(), "oracle": r.oracle.to_string() }))
                .collect();
            Ok(Report::new(
                json!({
                    "eps": eps.to_string(),
                    "depth": depth.to_string(),
                    "nodes": c.nodes,
                    "comparisons": c.rows.len(),
                    "skipped": c.skipped,
                    "max_deviation": c.max_deviation().to_string(),
                    "failures": failures,
                    "verdict_mismatches": c.verdict_mismatches.iter().map(|p| io::graph_point_json(g, p)).collect::<Vec<_>>(),
                    "pass": c.pass(),
                }),
                &["operation", "input", "exact", "oracle", "bound", "pass"],
                rows,
            )
            .violated(!c.pass()))
        }
        Command::Samples { n } => {
            let samples = Sampler::new(cli.seed).quadruples(space, *n);
            let json = samples
                .iter()
                .map(
                    |s| json!({ "x": pj(&s.x), "t": io::length_json(&s.t), "y": pj(&s.y), "s": io::length_json(&s.s) }),
                )
                .collect();
            let rows = samples
                .iter()
                .map(|s| {
                    vec![
                        pj(&s.x).to_string(),
                        s.t.to_string(),
                        pj(&s.y).to_string(),
                        s.s.to_string(),
                    ]
                })
                .collect();
            Ok(Report::new(Value::Array(json), &io::SAMPLE_HEADER, rows))
        }
    }
}

fn verdict_row(g: &MetricGraph, p: &GraphPoint, v: &ShootingVerdict) -> Vec<String> {
    let point = io::graph_point_json(g, p).to_string();
    match v {
        ShootingVerdict::Holds => vec![
            point,
            "holds".into(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ],
        ShootingVerdict::Fails(w) => vec![
            point,
            "fails".into(),
            io::graph_point_json(g, &w.y).to_string(),
            w.r.to_string(),
            w.gap.to_string(),
            w.reason.to_string(),
        ],
    }
}

const VERDICT_HEADER: [&str; 6] = ["point", "verdict", "y", "r", "gap", "reason"];

fn shoot(cli: &Cli, space: &Space, cmd: &ShootCmd) -> Result<Report> {
    match cmd {
        ShootCmd::Point { x, samples } => match space {
            Space::Model(m) => {
                let x = io::parse_point(space, x)?;
                let xm = x.as_model()?;
                let mut sampler = Sampler::new(cli.seed);
                let mut failure = None;
                let mut worst = 0.0f64;
                for _ in 0..*samples {
                    let y = sampler.model_point(m);
                    if m.distance(xm, &y)?.to_f64() <= FLOAT_TOL {
                        continue;
                    }
                    let r = Length::Approx(sampler.rng().gen_range(0.01..4.0));
                    let gap = m.shooting_gap(xm, &y, &r)?;
                    match m.shooting_witness(xm, &y, &r)? {
                        Some(p) => {
                            let (a, b) = m.witness_residuals(xm, &y, &r, &p);
                            worst = worst.max(a).max(b);
                        }
                        None => {
                            failure = Some((y, r, gap));
                            break;
                        }
                    }
                }
                let json = match &failure {
                    None => {
                        json!({ "verdict": "holds on samples", "samples": samples, "max_residual": io::length_json(&Length::Approx(worst)) })
                    }
                    Some((y, r, gap)) => json!({
                        "verdict": "fails",
                        "witness": { "y": io::point_json(space, &Point::Model(y.clone())), "r": io::length_json(r), "gap": io::length_json(gap) },
                        "reason": "no geodesic extension",
                    }),
                };
                let row = match &failure {
                    None => vec![
                        io::point_json(space, &x).to_string(),
                        "holds".into(),
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ],
                    Some((y, r, gap)) => vec![
                        io::point_json(space, &x).to_string(),
                        "fails".into(),
                        io::point_json(space, &Point::Model(y.clone())).to_string(),
                        r.to_string(),
                        gap.to_string(),
                        "no geodesic extension".into(),
                    ],
                };
                let bad = failure.is_some() || worst > FLOAT_TOL;
                Ok(Report::new(json, &VERDICT_HEADER, vec![row]).violated(bad))
            }
            _ => {
                let g = graph_of(space)?;
                let p = io::parse_point(space, x)?;
                let p = p.as_graph()?;
                let v = decide_point(g, p)?;
                let mut json = io::verdict_json(g, &v);
                json["point"] = io::graph_point_json(g, p);
                Ok(Report::new(json, &VERDICT_HEADER, vec![verdict_row(g, p, &v)]).violated(!v.holds()))
            }
        },
        ShootCmd::Space { probe } => {
            let g = graph_of(space)?;
            let probe = match probe {
                Some(path) => read_probe(space, path)?,
                None => g.default_probe(),
            };
            let report = decide_space(g, &probe)?;
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|(p, v)| {
                    let mut j = io::verdict_json(g, v);
                    j["point"] = io::graph_point_json(g, p);
                    j
                })
                .collect();
            let holding: Vec<Value> = report
                .holding_points()
                .into_iter()
                .map(|p| io::graph_point_json(g, p))
                .collect();
            let rows = report.entries.iter().map(|(p, v)| verdict_row(g, p, v)).collect();
            Ok(
                Report::new(json!({ "entries": entries, "holding": holding }), &VERDICT_HEADER, rows)
                    .violated(!report.holds_on_probe()),
            )
        }
        ShootCmd::Gap { x, y, r } => {
            let (xp, yp) = (io::parse_point(space, x)?, io::parse_point(space, y)?);
            let r = io::parse_length(space, r)?;
            let gap = match space {
                Space::Quotient(q) => Length::Exact(crate::shooting::shooting_gap(
                    &q.base,
                    xp.as_graph()?,
                    yp.as_graph()?,
                    r.require_exact("radius")?,
                )?),
                _ => space.shooting_gap(&xp, &yp, &r)?,
            };
            let (xj, yj) = (io::point_json(space, &xp), io::point_json(space, &yp));
            Ok(Report::new(
                json!({ "x": xj, "y": yj, "r": io::length_json(&r), "gap": io::length_json(&gap) }),
                &["x", "y", "r", "gap"],
                vec![vec![xj.to_string(), yj.to_string(), r.to_string(), gap.to_string()]],
            )
            .violated(violates(&gap)))
        }
    }
}

fn read_probe(space: &Space, path: &Path) -> Result<Vec<GraphPoint>> {
    let v = read_json_arg(&path.to_string_lossy())?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("probe file must be a JSON array of points"))?;
    arr.iter()
        .map(|p| Ok(io::point_from_json(space, p)?.as_graph()?.clone()))
        .collect()
}

fn sigma(cli: &Cli, space: &Space, cmd: &SigmaCmd) -> Result<Report> {
    let pj = |p: &Point| io::point_json(space, p);
    match cmd {
        SigmaCmd::Verify { samples, sample_file } => {
            let samples = match sample_file {
                Some(path) => {
                    let f = std::fs::File::open(path)
                        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
                    io::read_samples(space, f)?
                }
                None => Sampler::new(cli.seed).quadruples(space, *samples),
            };
            let report = taxicab_deviation(space, &samples)?;
            let worst = &samples[report.worst];
            let row = &report.rows[report.worst];
            let violated = violates(report.max_deviation()) || !report.lipschitz_holds();
            let mut buf = Vec::new();
            io::write_taxicab_report(space, &samples, &report, &mut buf)?;
            let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(buf.as_slice());
            let rows = reader
                .records()
                .map(|r| Ok(r?.iter().map(str::to_string).collect()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Report::new(
                json!({
                    "samples": samples.len(),
                    "max_deviation": io::length_json(report.max_deviation()),
                    "lipschitz_holds": report.lipschitz_holds(),
                    "worst": {
                        "index": report.worst,
                        "x": pj(&worst.x), "t": io::length_json(&worst.t),
                        "y": pj(&worst.y), "s": io::length_json(&worst.s),
                        "hausdorff": io::length_json(&row.hausdorff),
                        "taxicab": io::length_json(&row.taxicab),
                    },
                }),
                &io::REPORT_HEADER,
                rows,
            )
            .violated(violated))
        }
        SigmaCmd::Midpoints { p, q, radii } => {
            let (a, b) = (io::parse_point(space, p)?, io::parse_point(space, q)?);
            match radii {
                None => {
                    let mids = midpoint_census(space, &a, &b)?;
                    let list: Vec<Value> = mids.iter().map(pj).collect();
                    let rows = list
                        .iter()
                        .map(|m| {
                            vec![
                                m.to_string(),
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                                String::new(),
                            ]
                        })
                        .collect();
                    Ok(Report::new(
                        json!({ "p": pj(&a), "q": pj(&b), "midpoints": list }),
                        &["center", "radius", "to_first", "to_second", "target", "verified"],
                        rows,
                    ))
                }
                Some(r) => {
                    let b1 = Ball {
                        center: a,
                        radius: io::parse_length(space, &r[0])?,
                    };
                    let b2 = Ball {
                        center: b,
                        radius: io::parse_length(space, &r[1])?,
                    };
                    let mids = sigma_midpoints(space, &b1, &b2, 8)?;
                    let list: Vec<Value> = mids
                        .iter()
                        .map(|m| {
                            json!({
                                "center": pj(&m.ball.center), "radius": io::length_json(&m.ball.radius),
                                "to_first": io::length_json(&m.to_first), "to_second": io::length_json(&m.to_second),
                                "target": io::length_json(&m.target), "verified": m.verified,
                            })
                        })
                        .collect();
                    let rows = mids
                        .iter()
                        .map(|m| {
                            vec![
                                pj(&m.ball.center).to_string(),
                                m.ball.radius.to_string(),
                                m.to_first.to_string(),
                                m.to_second.to_string(),
                                m.target.to_string(),
                                m.verified.to_string(),
                            ]
                        })
                        .collect();
                    Ok(Report::new(
                        json!({ "candidates": list }),
                        &["center", "radius", "to_first", "to_second", "target", "verified"],
                        rows,
                    ))
                }
            }
        }
    }
}

fn product_check(cli: &Cli, space: &Space, n: usize) -> Result<Report> {
    let Space::Product(ps) = space else {
        return Err(Error::input(format!(
            "product check needs a product space, got {}",
            space.kind()
        )));
    };
    let mut sampler = Sampler::new(cli.seed);
    let mut rows = Vec::new();
    let mut failures = 0usize;
    let header = ["check", "index", "value", "expected", "residual", "pass"];
    let json = match ps.norm {
        Norm::Linf => {
            let samples = sampler.quadruples(space, n);
            let mut max_dev = Length::zero();
            for (i, s) in samples.iter().enumerate() {
                let (b1, b2) = s.balls();
                let formula = crate::constructors::product_hausdorff_infty(ps, &b1, &b2)?;
                let inclusion = space.hausdorff_inclusion(&b1, &b2)?;
                let dev = formula.abs_diff(&inclusion);
                let ok = !violates(&dev);
                failures += usize::from(!ok);
                max_dev = max_dev.max(&dev);
                rows.push(vec![
                    "hausdorff".into(),
                    i.to_string(),
                    formula.to_string(),
                    inclusion.to_string(),
                    dev.to_string(),
                    ok.to_string(),
                ]);
            }
            let mut mismatches = 0usize;
            for i in 0..(5 * n) {
                let ball = Ball {
                    center: sampler.point(space),
                    radius: sampler.radius(space),
                };
                let p = sampler.point(space);
                let (a, b) = (ps.ball_contains(&ball, &p)?, ps.factor_ball_contains(&ball, &p)?);
                mismatches += usize::from(a != b);
                rows.push(vec![
                    "membership".into(),
                    i.to_string(),
                    a.to_string(),
                    b.to_string(),
                    String::new(),
                    (a == b).to_string(),
                ]);
            }
            failures += mismatches;
            json!({
                "norm": "linf",
                "hausdorff_samples": n,
                "max_formula_deviation": io::length_json(&max_dev),
                "membership_samples": 5 * n,
                "membership_mismatches": mismatches,
            })
        }
        Norm::L2 => {
            let mut worst_prop = 0.0f64;
            let mut worst_equal = 0.0f64;
            let mut unavailable = Vec::new();
            let mut done = 0;
            while done < n {
                let (x, a) = (sampler.point(space), sampler.point(space));
                if space.distance(&x, &a)?.to_f64() <= FLOAT_TOL {
                    continue;
                }
                let r: f64 = sampler.rng().gen_range(0.1..4.0);
                let prop = ps.shooting_witness(&x, &a, r, Split::Proportional)?;
                let equal = ps.shooting_witness(&x, &a, r, Split::Equal)?;
                if let Some(c) = prop.failed_component {
                    unavailable.push(json!({ "index": done, "component": c }));
                }
                let res = prop.sphere_residual.max(prop.extension_residual);
                let ok = prop.within(FLOAT_TOL);
                failures += usize::from(!ok);
                worst_prop = worst_prop.max(res);
                if equal.point.is_some() {
                    worst_equal = worst_equal.max(equal.sphere_residual.max(equal.extension_residual));
                }
                rows.push(vec![
                    "proportional".into(),
                    done.to_string(),
                    format_float(r),
                    String::new(),
                    format_float(res),
                    ok.to_string(),
                ]);
                done += 1;
            }
            json!({
                "norm": "l2",
                "samples": n,
                "proportional_max_residual": io::length_json(&Length::Approx(worst_prop)),
                "equal_split_max_residual": io::length_json(&Length::Approx(worst_equal)),
                "unavailable": unavailable,
            })
        }
    };
    let mut json = json;
    json["failures"] = json!(failures);
    Ok(Report::new(json, &header, rows).violated(failures > 0))
}

/// Centers with the shooting property among the default probe points.
fn holding_centers(g: &MetricGraph) -> Result<Vec<GraphPoint>> {
    Ok(decide_space(g, &g.default_probe())?
        .holding_points()
        .into_iter()
        .cloned()
        .collect())
}

fn quotient_check(cli: &Cli, space: &Space, n: usize) -> Result<Report> {
    let Space::Quotient(q) = space else {
        return Err(Error::input(format!(
            "quotient check needs a quotient space, got {}",
            space.kind()
        )));
    };
    let centers = holding_centers(&q.base)?;
    if centers.is_empty() {
        return Err(Error::Hypothesis(
            "no probe point of the base has the shooting property".into(),
        ));
    }
    let mut sampler = Sampler::new(cli.seed);
    let samples: Vec<(GraphPoint, Scalar, GraphPoint, Scalar)> = (0..n)
        .map(|_| {
            let x = centers[sampler.rng().gen_range(0..centers.len())].clone();
            let t = sampler
                .radius(space)
                .require_exact("radius")
                .expect("graph radii are exact")
                .clone();
            let y = centers[sampler.rng().gen_range(0..centers.len())].clone();
            let s = sampler
                .radius(space)
                .require_exact("radius")
                .expect("graph radii are exact")
                .clone();
            (x, t, y, s)
        })
        .collect();
    let report = q.sigma_check(&samples)?;
    let g = &q.base;
    let rows = report
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                i.to_string(),
                io::graph_point_json(g, &r.x).to_string(),
                r.t.to_string(),
                io::graph_point_json(g, &r.y).to_string(),
                r.s.to_string(),
                r.hausdorff.to_string(),
                r.taxicab.to_string(),
                r.deviation.to_string(),
            ]
        })
        .collect();
    Ok(Report::new(
        json!({
            "group_order": q.group().len(),
            "centers": centers.iter().map(|p| io::graph_point_json(g, p)).collect::<Vec<_>>(),
            "samples": n,
            "max_deviation": report.max_deviation.to_string(),
        }),
        &["index", "x", "t", "y", "s", "hausdorff", "taxicab", "deviation"],
        rows,
    )
    .violated(!report.max_deviation.is_zero()))
}

fn family_check(cli: &Cli, loaded: &Loaded, n: usize) -> Result<Report> {
    let family = loaded
        .family
        .as_ref()
        .ok_or_else(|| Error::input("family check needs a family space file"))?;
    let samples = graph_samples(&Sampler::new(cli.seed).quadruples(&loaded.space, n))?;
    let probe = family.base().default_probe();
    let report = family.check(&samples, &probe)?;
    let g = family.base();
    let stable = report.verdicts_stable();
    let rows = report
        .steps
        .iter()
        .map(|s| {
            vec![
                s.label.clone(),
                s.delta.to_string(),
                s.length_bound.to_string(),
                s.max_change.to_string(),
                s.violations.len().to_string(),
                (s.verdicts == report.base_verdicts).to_string(),
            ]
        })
        .collect();
    let steps: Vec<Value> = report
        .steps
        .iter()
        .map(|s| {
            json!({
                "label": s.label,
                "delta": s.delta.to_string(),
                "length_bound": s.length_bound.to_string(),
                "max_change": s.max_change.to_string(),
                "violations": s.violations,
                "verdicts_stable": s.verdicts == report.base_verdicts,
            })
        })
        .collect();
    let holding: Vec<Value> = report
        .probe
        .iter()
        .zip(&report.base_verdicts)
        .filter(|(_, h)| **h)
        .map(|(p, _)| io::graph_point_json(g, p))
        .collect();
    Ok(Report::new(
        json!({
            "samples": n,
            "bound_holds": report.bound_holds(),
            "verdicts_stable": stable,
            "base_holding": holding,
            "steps": steps,
        }),
        &[
            "step",
            "delta",
            "length_bound",
            "max_change",
            "violations",
            "verdicts_stable",
        ],
        rows,
    )
    .violated(!report.bound_holds() || !stable))
}
