//! New spaces from old: products, quotients by finite automorphism groups
//! and families of perturbed edge lengths.

mod family;
mod product;
mod quotient;

pub use family::{FamilyReport, FamilyStep, PerturbedFamily, StepReport};
pub use product::{product_hausdorff_infty, Norm, ProductSpace, ProductWitness, Split};
pub use quotient::{ProperRow, QuotientReport, QuotientRow, QuotientSpace};
