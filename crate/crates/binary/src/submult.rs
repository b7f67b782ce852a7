use crate::apolar::binary_rank;
use crate::drop::drop_one_bounded;
use crate::form::BinaryForm;
use crate::DEFAULT_HEIGHT_BOUND;
use apolar_core::decomp::{Attestation, BoundKind, Factor, StructuredDecomposition, Summand};
use apolar_core::matrix::kron_vec;
use apolar_core::rational::{nonzero_by_height, q};
use apolar_core::{Error, Result, Q};

pub const SQUARE_IDENTITY_NOTE: &str = "base case: f(x)f = q0(x)q0 + 2 q1(x)(e l^d) + 2 (e l^d)(x)q1 \
with q0 = f - 2e l^d and q1 = f - e l^d; the factors 2 make the identity exact and do not change the point projectively";

pub fn submult_square(f: &BinaryForm) -> Result<StructuredDecomposition> {
    submult_square_bounded(f, DEFAULT_HEIGHT_BOUND)
}

/// Decomposition of `f (x) f` with at most `rank(f)^2 - 1` terms, for forms
/// whose border rank is smaller than their rank.
pub fn submult_square_bounded(f: &BinaryForm, height_bound: u64) -> Result<StructuredDecomposition> {
    let rep = binary_rank(f);
    if rep.border_rank == rep.rank {
        return Err(Error::pre(
            "multiplicative case: border rank equals rank, so the square has rank exactly rank^2 and the construction does not apply",
        ));
    }
    let r = rep.rank;
    let d = f.degree();
    let generic = d / 2 + 1;
    let drop = drop_one_bounded(f, height_bound)?;
    let ell = [drop.ell[0].clone(), drop.ell[1].clone()];
    let ld = BinaryForm::power(&ell, d as u32);
    let power = || {
        Factor::leaf(
            format!("({})^{d}", linear_label(&ell)),
            ld.coeffs().to_vec(),
            1,
            Attestation::Power { base: ell.to_vec(), exponent: d as u32 },
        )
    };
    let form = |name: &str, g: &BinaryForm, rank: usize| {
        Factor::leaf(format!("{name} = {g}"), g.coeffs().to_vec(), rank, Attestation::BinaryForm)
    };
    let target = format!("({f})⊗({f})");
    let dims = vec![d + 1, d + 1];
    let coords = kron_vec(f.coeffs(), f.coeffs());

    if r == generic + 1 {
        let half = &drop.c / q(2);
        let eps_iter = std::iter::once(half.clone()).chain(nonzero_by_height(height_bound).filter(|e| e != &half));
        for eps in eps_iter {
            let (Ok(q1), Ok(q0)) = (f.sub_scaled(&eps, &ld), f.sub_scaled(&(&eps * q(2)), &ld)) else {
                continue;
            };
            if binary_rank(&q1).rank != r - 1 || binary_rank(&q0).rank != r - 1 {
                continue;
            }
            let two_eps: Q = &eps * q(2);
            let summands = vec![
                Summand::new(q(1), vec![form("q0", &q0, r - 1), form("q0", &q0, r - 1)]),
                Summand::new(two_eps.clone(), vec![form("q1", &q1, r - 1), power()]),
                Summand::new(two_eps, vec![power(), form("q1", &q1, r - 1)]),
            ];
            let note = format!("{SQUARE_IDENTITY_NOTE}; e = {}", apolar_core::rational::fmt_q(&eps));
            return StructuredDecomposition::build(target, dims, coords, BoundKind::Rank, summands, vec![note]);
        }
        return Err(Error::inconclusive(format!("no rational e within height {height_bound}")));
    }

    let inner = submult_square_bounded(&drop.g, height_bound)?;
    let c = drop.c.clone();
    let summands = vec![
        Summand::new(q(1), vec![Factor::Nested(Box::new(inner))]),
        Summand::new(c.clone(), vec![form("g", &drop.g, r - 1), power()]),
        Summand::new(c.clone(), vec![power(), form("g", &drop.g, r - 1)]),
        Summand::new(&c * &c, vec![power(), power()]),
    ];
    let note = format!(
        "f = g + c l^d with rank(g) = {}, c = {}; (g + c l^d)(x)(g + c l^d) expanded in four blocks",
        r - 1,
        apolar_core::rational::fmt_q(&c)
    );
    StructuredDecomposition::build(target, dims, coords, BoundKind::Rank, summands, vec![note])
}

fn linear_label(ell: &[Q; 2]) -> String {
    BinaryForm::new(ell.to_vec()).map(|l| l.to_string()).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_x_y2_has_eight_terms() {
        let d = submult_square(&BinaryForm::parse("x*y^2").unwrap()).unwrap();
        assert_eq!(d.term_count, 8);
        d.check().unwrap();
    }

    #[test]
    fn square_of_x_y4_uses_one_induction_step() {
        let d = submult_square(&BinaryForm::parse("x*y^4").unwrap()).unwrap();
        assert!(d.term_count <= 24);
        assert!(matches!(d.summands[0].factors[0], Factor::Nested(_)));
        d.check().unwrap();
    }

    #[test]
    fn multiplicative_case_is_rejected() {
        let e = submult_square(&BinaryForm::parse("x^3+y^3").unwrap()).unwrap_err();
        assert!(e.to_string().contains("multiplicative case"));
    }
}
