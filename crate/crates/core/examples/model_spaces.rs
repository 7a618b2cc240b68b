//! Geodesic extensions in the closed-form spaces, and the two ways they
//! can fail: a boundary in the half-plane and antipodes on the circle.

use ballspace::length::FLOAT_TOL;
use ballspace::sample::Sampler;
use ballspace::{Length, ModelPoint, ModelSpace, Result};
use rand::Rng;

fn main() -> Result<()> {
    let mut sampler = Sampler::new(42);
    for m in [ModelSpace::Euclidean { dim: 2 }, ModelSpace::Hyperbolic2] {
        let mut worst = 0.0f64;
        let mut found = 0;
        for _ in 0..1000 {
            let (x, y) = (sampler.model_point(&m), sampler.model_point(&m));
            if m.distance(&x, &y)?.to_f64() <= FLOAT_TOL {
                continue;
            }
            let r = Length::Approx(sampler.rng().gen_range(0.1..5.0));
            if let Some(p) = m.shooting_witness(&x, &y, &r)? {
                let (a, b) = m.witness_residuals(&x, &y, &r, &p);
                worst = worst.max(a).max(b);
                found += 1;
            }
        }
        println!(
            "{:<12} witnesses found {found}/1000, worst residual {worst:.2e}",
            m.kind()
        );
    }

    let hp = ModelSpace::HalfPlane;
    let (x, y, r) = (
        ModelPoint::Coords(vec![0.0, 1.0]),
        ModelPoint::Coords(vec![0.0, 3.0]),
        Length::Approx(2.0),
    );
    println!(
        "half-plane x=(0,1), y=(0,3), r=2: witness {:?}, gap {}",
        hp.shooting_witness(&x, &y, &r)?,
        hp.shooting_gap(&x, &y, &r)?
    );

    let circle = ModelSpace::Circle { radius: 1.0 };
    let (x, y) = (ModelPoint::angle(0.0), ModelPoint::angle(std::f64::consts::PI));
    for r in [0.5, 1.0, 2.0] {
        let r = Length::Approx(r);
        println!(
            "circle antipodes, r={r}: witness {:?}, gap {}",
            circle.shooting_witness(&x, &y, &r)?,
            circle.shooting_gap(&x, &y, &r)?
        );
    }
    Ok(())
}
