//! Brute-force check of the exact engine against a discretized net.

use ballspace::graph::catalog;
use ballspace::oracle::{compare, default_depth};
use ballspace::{Result, Scalar};

fn main() -> Result<()> {
    for (name, g) in [
        ("diamond", catalog::diamond()),
        ("chain", catalog::diamond_chain()),
        ("square", catalog::square()),
    ] {
        let depth = default_depth(&g) + Scalar::from_int(8);
        for eps in [Scalar::ratio(1, 8), Scalar::ratio(1, 16)] {
            let c = compare(&g, &eps, &depth, 0, 40)?;
            println!(
                "{name:<8} eps {eps:<5} nodes {:>5}  checks {:>3}  max deviation {:<5} verdict mismatches {}  {}",
                c.nodes,
                c.rows.len(),
                c.max_deviation(),
                c.verdict_mismatches.len(),
                if c.pass() { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
