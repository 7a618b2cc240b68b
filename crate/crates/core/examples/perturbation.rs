//! Edge lengths 2 + 1/n on the diamond: Hausdorff distances of balls move
//! by at most twice the change of the metric.

use ballspace::constructors::PerturbedFamily;
use ballspace::graph::catalog;
use ballspace::sample::Sampler;
use ballspace::{Result, Space};

fn main() -> Result<()> {
    let family = PerturbedFamily::additive(catalog::diamond(), &[1, 2, 4, 8, 16])?;
    let space = Space::Graph(family.base().clone());
    let samples: Vec<_> = Sampler::new(5)
        .quadruples(&space, 60)
        .into_iter()
        .map(|s| {
            Ok((
                s.x.as_graph()?.clone(),
                s.t.require_exact("t")?.clone(),
                s.y.as_graph()?.clone(),
                s.s.require_exact("s")?.clone(),
            ))
        })
        .collect::<Result<_>>()?;
    let report = family.check(&samples, &family.probe_points())?;
    println!(
        "{:>4} {:>8} {:>12} {:>12} {:>10}",
        "n", "delta", "sum |dl|", "max change", "verdicts"
    );
    for step in &report.steps {
        println!(
            "{:>4} {:>8} {:>12} {:>12} {:>10}",
            step.label,
            step.delta,
            step.length_bound,
            step.max_change,
            if step.verdicts == report.base_verdicts {
                "stable"
            } else {
                "changed"
            }
        );
    }
    println!("bound holds on every sample: {}", report.bound_holds());
    Ok(())
}
