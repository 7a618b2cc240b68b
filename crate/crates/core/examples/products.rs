//! Products: the sup-norm Hausdorff formula on a product of graphs, and
//! extension witnesses in a Euclidean product.

use ballspace::constructors::{product_hausdorff_infty, Norm, ProductSpace, Split};
use ballspace::graph::catalog;
use ballspace::sample::Sampler;
use ballspace::{ModelSpace, Result, Space};

fn main() -> Result<()> {
    let linf = ProductSpace::new(
        Space::Graph(catalog::diamond()),
        Space::Graph(catalog::diamond_chain()),
        Norm::Linf,
    );
    let space = linf.clone().into_space();
    let mut sampler = Sampler::new(3);
    println!("sup-norm product diamond x chain:");
    for sample in sampler.quadruples(&space, 5) {
        let (b1, b2) = sample.balls();
        let formula = product_hausdorff_infty(&linf, &b1, &b2)?;
        let direct = space.hausdorff_inclusion(&b1, &b2)?;
        println!("  formula {formula:>6}   inclusion form {direct:>6}");
    }

    let l2 = ProductSpace::new(
        Space::Model(ModelSpace::Euclidean { dim: 2 }),
        Space::Model(ModelSpace::Hyperbolic2),
        Norm::L2,
    );
    let space = l2.clone().into_space();
    println!("euclidean product R^2 x H^2:");
    for _ in 0..5 {
        let (x, a) = (sampler.point(&space), sampler.point(&space));
        for split in [Split::Proportional, Split::Equal] {
            let w = l2.shooting_witness(&x, &a, 1.5, split)?;
            println!(
                "  {split:?}: residuals {:.2e} {:.2e}",
                w.sphere_residual, w.extension_residual
            );
        }
    }
    Ok(())
}
