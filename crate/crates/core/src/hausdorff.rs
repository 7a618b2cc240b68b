//! Exact Hausdorff distances on graphs and the interval closed form.
//!
//! For compact `A, B` of a graph, `sup_{a ∈ A} d(a, B)` vanishes on `A ∩ B`
//! and elsewhere equals the distance to the boundary of `B`, because every
//! shortest path from outside `B` enters `B` through a boundary point. The
//! boundary of a PL subset is contained in its finite set of interval ends,
//! so the supremum is the maximum of an exact distance field over the closure
//! of `A \ B`.

use crate::error::{Error, Result};
use crate::graph::{DistanceField, GraphPoint, PlSubset};
use crate::scalar::Scalar;

/// `sup_{a ∈ A} d(a, B)` together with a point of `A` attaining it.
pub fn directed_pl(a: &PlSubset, b: &PlSubset) -> Result<(Option<GraphPoint>, Scalar)> {
    if a.graph() != b.graph() {
        return Err(Error::Mismatch);
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("Hausdorff distance needs nonempty sets"));
    }
    let rest = a.minus_closure(b)?;
    if rest.is_empty() {
        return Ok((None, Scalar::zero()));
    }
    let boundary = b.boundary_points();
    // A nonempty remainder means B is not the whole space, so it has ends.
    debug_assert!(!boundary.is_empty());
    let field = DistanceField::new(a.graph(), &boundary);
    let (p, v) = field.sup_over(&rest).expect("remainder is nonempty");
    Ok((Some(p), v))
}

/// `d_H(A, B) = max(sup_A d(·,B), sup_B d(·,A))`, exact.
pub fn hausdorff_pl(a: &PlSubset, b: &PlSubset) -> Result<Scalar> {
    let (_, ab) = directed_pl(a, b)?;
    let (_, ba) = directed_pl(b, a)?;
    Ok(Scalar::max_of(&ab, &ba).clone())
}

/// Hausdorff distance of `[a, b]` and `[c, d]` on the line:
/// `max(|c - a|, |d - b|)`.
pub fn hausdorff_intervals(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> Result<Scalar> {
    if a > b || c > d {
        return Err(Error::input(format!(
            "degenerate interval bounds [{a}, {b}] / [{c}, {d}]"
        )));
    }
    let left = (c - a).abs();
    let right = (d - b).abs();
    Ok(Scalar::max_of(&left, &right).clone())
}
