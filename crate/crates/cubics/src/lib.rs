//! Plane cubics: catalecticant and Koszul flattenings, singularity and
//! linear factors by exact elimination, the orbit classification with ranks
//! and border ranks, and decompositions of `f (x) f` beating `rank^2`.

mod classify;
mod cubic;
mod flatten;
mod singular;
mod submult;

pub use classify::{classify, CubicClass, CubicTag, Evidence};
pub use cubic::{embed_index, index, random_gl3, TernaryCubic, VARS};
pub use flatten::{cat1, cat1_rank, koszul_flattening, koszul_rank};
pub use singular::{
    common_rational_points, hessian, is_singular, is_singular_seeded, linear_factor, plane_points_by_height,
    rational_flexes, LinearFactor, SingularReport,
};
pub use submult::submult_square_cubic;
