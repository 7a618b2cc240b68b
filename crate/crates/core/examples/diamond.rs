//! Distances, spheres and the shooting property on the diamond graph: a
//! square of side 2 with half-lines attached at two opposite corners.

use ballspace::graph::catalog;
use ballspace::{decide_point, decide_space, shooting_gap, Result, Scalar, ShootingVerdict};

fn main() -> Result<()> {
    let g = catalog::diamond();
    let x = g.edge_point("WN", Scalar::from_int(1))?;
    let s = g.vertex("S")?;
    let r = Scalar::from_int(5);

    println!("sphere of radius {r} about {}:", g.describe_point(&x));
    for p in g.sphere(&x, &r)? {
        println!("  {:<10} distance to S = {}", g.describe_point(&p), g.distance(&s, &p)?);
    }
    println!("shooting gap toward S: {}", shooting_gap(&g, &x, &s, &r)?);

    println!("\nverdicts on vertices and edge midpoints:");
    for (p, v) in decide_space(&g, &g.default_probe())?.entries {
        match v {
            ShootingVerdict::Holds => println!("  {:<10} holds", g.describe_point(&p)),
            ShootingVerdict::Fails(w) => println!(
                "  {:<10} fails: y = {}, r = {}, gap = {} ({})",
                g.describe_point(&p),
                g.describe_point(&w.y),
                w.r,
                w.gap,
                w.reason
            ),
        }
    }
    let far = g.ray_point("re", Scalar::from_int(7))?;
    println!(
        "  {:<10} {}",
        g.describe_point(&far),
        if decide_point(&g, &far)?.holds() {
            "holds"
        } else {
            "fails"
        }
    );
    Ok(())
}
