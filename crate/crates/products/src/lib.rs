//! Lower bounds for ranks of tensor products of forms and windows that pair
//! them with explicit decompositions.
//!
//! Flattening bounds are multiplicative under Kronecker products. For
//! products of binary monomials a Hilbert function count on the apolar
//! ideal gives a sharper bound than the flattenings see.

mod flat;
mod hf;
mod window;

pub use flat::{default_kron_bound, flattening_matrix, kron_flattening_bound, Flattening, FormFactor, KronBound};
pub use hf::{
    bigraded_hf, hf_monomial_bound, hf_row_sum, monomial_product_bound, reduction_ideal, BigradedIdeal, MonomialBound,
    HF_VARS,
};
pub use window::{
    binary_power_sum, certify_window, product_decomposition, LowerBound, LowerMethod, RankWindow, UpperBound,
};
