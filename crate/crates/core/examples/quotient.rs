//! Quotient of the two-diamond chain by its mirror symmetry: distances
//! between ball orbits are orbit distance plus radius difference.

use std::collections::HashMap;

use ballspace::constructors::QuotientSpace;
use ballspace::graph::{catalog, Automorphism};
use ballspace::{Result, Scalar};

fn main() -> Result<()> {
    let g = catalog::diamond_chain();
    let map = |pairs: &[(&str, &str)]| {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<HashMap<_, _>>()
    };
    let mirror = Automorphism::from_names(
        &g,
        &map(&[
            ("J0", "J2"),
            ("J2", "J0"),
            ("T1", "T2"),
            ("T2", "T1"),
            ("B1", "B2"),
            ("B2", "B1"),
        ]),
        &map(&[("rl", "rr"), ("rr", "rl")]),
        &HashMap::new(),
    )?;
    let q = QuotientSpace::new(g.clone(), vec![Automorphism::identity(&g), mirror])?;

    let mut samples = Vec::new();
    for (x, y) in [("J0", "J2"), ("J0", "J1"), ("J1", "J2")] {
        for (t, s) in [(1, 3), (2, 2), (5, 1)] {
            samples.push((g.vertex(x)?, Scalar::from_int(t), g.vertex(y)?, Scalar::from_int(s)));
        }
    }
    let report = q.sigma_check(&samples)?;
    println!(
        "{:<4} {:>2} {:<4} {:>2} {:>10} {:>10}",
        "x", "t", "y", "s", "hausdorff", "taxicab"
    );
    for row in &report.rows {
        println!(
            "{:<4} {:>2} {:<4} {:>2} {:>10} {:>10}",
            g.describe_point(&row.x),
            row.t,
            g.describe_point(&row.y),
            row.s,
            row.hausdorff,
            row.taxicab
        );
    }
    println!("max deviation {}", report.max_deviation);
    Ok(())
}
