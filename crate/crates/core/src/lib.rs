//! Metric geometry of closed balls.
//!
//! A closed ball `B̄_r(x)` is a point of the hyperspace `Σ(X)`, measured with
//! the Hausdorff distance. The crate computes that distance exactly on
//! metric graphs (finite graphs with rational edge lengths and attached
//! half-lines) and in closed form on the line, Euclidean space, the
//! hyperbolic plane, circles and the half-plane. Around it sit a decision
//! procedure for the shooting property (every geodesic segment extends by
//! any length), checks of the taxicab formula `d(x, y) + |t - s|`, product,
//! quotient and perturbed-family constructions, and a brute-force ε-net
//! oracle that cross-checks the exact engine.
//!
//! [`cli`] is the command-line front end; `data/` holds example space files.

pub mod cli;
pub mod constructors;
pub mod error;
pub mod graph;
pub mod hausdorff;
pub mod io;
pub mod isometry;
pub mod length;
pub mod model;
pub mod oracle;
pub mod sample;
pub mod scalar;
pub mod shooting;
pub mod sigma;
pub mod space;

pub use error::{Error, Result};
pub use graph::{GraphPoint, MetricGraph, PlSubset, Segment};
pub use length::Length;
pub use model::{ModelPoint, ModelSpace};
pub use scalar::Scalar;
pub use shooting::{decide_point, decide_space, shooting_gap, ShootingVerdict};
pub use space::{Ball, Point, Space};
