//! Decompositions built from explicit points: powers of a point on a
//! multisecant line, the rank-3 test for a product of two rank-2 points,
//! multisecant spaces, the multidrop identity, and non-product minimal
//! decompositions.

mod line;
mod plane;
mod product;
mod witness;

pub use line::{cross_ratio, power_decomposition_on_line, rank2_product_decision, Rank2Verdict, SecantPair};
pub use plane::{multisecant_plane_decomposition, multisecant_plane_terms};
pub use product::{
    factors_span, multidrop_product_identity, nonproduct_decomposition, nonredundancy_check, DropFactor,
    MultidropIdentity, NonProduct,
};
pub use witness::{Membership, ProductTensor, SecantWitness, VarietyPoint};
