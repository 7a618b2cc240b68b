//! Two different centers with the same closed ball: on the bent line the
//! map (x, r) -> closed ball is not injective.

use ballspace::graph::catalog;
use ballspace::hausdorff::hausdorff_pl;
use ballspace::{Result, Scalar};

fn main() -> Result<()> {
    let g = catalog::bent_line();
    let two = Scalar::from_int(2);
    let (p, q) = (g.vertex("P")?, g.vertex("Q")?);
    let bp = g.ball(&p, &two)?;
    let bq = g.ball(&q, &two)?;
    for (name, ball) in [("B(P,2)", &bp), ("B(Q,2)", &bq)] {
        let pieces: Vec<String> = ball
            .pieces()
            .map(|(seg, lo, hi)| format!("{}[{lo},{hi}]", g.segment_name(seg)))
            .collect();
        println!("{name} = {}", pieces.join(" "));
    }
    println!("same set: {}", bp.same_set(&bq)?);
    println!("Hausdorff distance: {}", hausdorff_pl(&bp, &bq)?);
    println!("taxicab distance of (P,2), (Q,2): {}", g.distance(&p, &q)?);
    Ok(())
}
