//! Compares the Hausdorff distance of closed balls with the taxicab
//! distance d(x, y) + |t - s| across the bundled spaces.

use ballspace::graph::catalog;
use ballspace::sample::Sampler;
use ballspace::sigma::taxicab_deviation;
use ballspace::{ModelSpace, Result, Space};

fn main() -> Result<()> {
    let spaces = [
        ("line", Space::Model(ModelSpace::Line)),
        ("line graph", Space::Graph(catalog::line())),
        ("diamond", Space::Graph(catalog::diamond())),
        ("bent line", Space::Graph(catalog::bent_line())),
        ("chain", Space::Graph(catalog::diamond_chain())),
        ("square", Space::Graph(catalog::square())),
        ("euclidean plane", Space::Model(ModelSpace::Euclidean { dim: 2 })),
        ("hyperbolic plane", Space::Model(ModelSpace::Hyperbolic2)),
        ("half-plane", Space::Model(ModelSpace::HalfPlane)),
        ("unit circle", Space::Model(ModelSpace::Circle { radius: 1.0 })),
    ];
    println!("{:<18} {:>16} {:>10}", "space", "max deviation", "1-Lipschitz");
    for (name, space) in &spaces {
        let samples = Sampler::new(1).quadruples(space, 200);
        let report = taxicab_deviation(space, &samples)?;
        println!(
            "{name:<18} {:>16} {:>10}",
            report.max_deviation(),
            report.lipschitz_holds()
        );
    }
    Ok(())
}
