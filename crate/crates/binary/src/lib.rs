//! Binary forms: Sylvester apolarity, exact rank and border rank, removal of
//! one Waring summand, and the submultiplicative decomposition of `f (x) f`.

mod apolar;
mod drop;
mod form;
mod submult;

pub use apolar::{
    apolar_generators, binary_rank, catalecticant, dual_poly, waring_decomposition, ApolarPair, RankReport,
};
pub use drop::{drop_one, drop_one_bounded, DropOne};
pub use form::{contract, eval_dual, BinaryForm};
pub use submult::{submult_square, submult_square_bounded, SQUARE_IDENTITY_NOTE};

/// Height bound for rational witness searches.
pub const DEFAULT_HEIGHT_BOUND: u64 = 50;

/// Rational points (a:b) of the projective line in order of increasing
/// |a| + |b|, normalized with a > 0 or (a, b) = (0, 1). Within a height,
/// larger `a` comes first, then smaller `b`.
pub fn points_by_height(max_height: u64) -> impl Iterator<Item = (i64, i64)> {
    (1..=i64::try_from(max_height).unwrap_or(i64::MAX)).flat_map(|h| {
        let mut pts = Vec::new();
        for a in (0..=h).rev() {
            let rest = h - a;
            let bs: Vec<i64> = if rest == 0 { vec![0] } else { vec![-rest, rest] };
            for b in bs {
                if a == 0 && b != 1 {
                    continue;
                }
                if gcd(a, b) == 1 {
                    pts.push((a, b));
                }
            }
        }
        pts
    })
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
