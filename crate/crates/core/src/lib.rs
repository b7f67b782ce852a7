//! Exact arithmetic substrate: rationals, dense polynomials, fraction-free
//! linear algebra, projective points and structured decompositions.
//!
//! Nothing in this crate rounds. Every routine is a pure function of its
//! arguments, and every pivot or enumeration order is fixed.

pub mod decomp;
pub mod error;
pub mod matrix;
pub mod parse;
pub mod point;
pub mod poly;
pub mod rational;
pub mod upoly;

pub use decomp::{Attestation, Factor, Leaf, StructuredDecomposition, Summand};
pub use error::{Error, Result};
pub use matrix::{exact_kernel, exact_rank, exact_solve, Matrix, Solution};
pub use point::{LineParam, ProjPoint};
pub use poly::{restrict_to_line, squarefree_test, Grading, Poly, SquarefreeReport};
pub use rational::{q, qf, Q};
pub use upoly::{univariate_resultant, UPoly};
