use crate::apolar::{binary_rank, dual_rational_roots};
use crate::form::{contract, div_exact, eval_dual, mul, BinaryForm};
use crate::{points_by_height, DEFAULT_HEIGHT_BOUND};
use apolar_core::matrix::{exact_solve, Matrix, Solution};
use apolar_core::poly::binary_squarefree;
use apolar_core::rational::{nonzero_by_height, normalize_first, q};
use apolar_core::{Error, Result, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Removal of one power from a minimal Waring decomposition:
/// `f = g + c * ell^d` with `rank(g) = rank(f) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropOne {
    /// The zero of `psi` that is removed.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub t0: Vec<Q>,
    /// Squarefree apolar form of degree `rank(f)`.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub psi: Vec<Q>,
    /// Linear dual form vanishing at `t0`.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub lambda: Vec<Q>,
    /// `psi / lambda`.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub chi: Vec<Q>,
    /// Coefficients (alpha, beta) of `ell = alpha x + beta y`.
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub ell: Vec<Q>,
    #[serde(with = "apolar_core::rational::serde_q")]
    pub c: Q,
    pub g: BinaryForm,
    pub rank_f: usize,
    pub rank_g: usize,
}

pub fn drop_one(f: &BinaryForm) -> Result<DropOne> {
    drop_one_bounded(f, DEFAULT_HEIGHT_BOUND)
}

/// Search rational `t0` of height at most `height_bound`.
pub fn drop_one_bounded(f: &BinaryForm, height_bound: u64) -> Result<DropOne> {
    let rep = binary_rank(f);
    let r = rep.rank;
    if r < 2 {
        return Err(Error::pre("form has rank 1; there is no summand to drop"));
    }
    let phi1 = &rep.generators.phi1;
    let phi2 = &rep.generators.phi2;
    let d1 = rep.generators.d1();

    if r == d1 {
        for t0 in dual_rational_roots(phi1) {
            if let Some(hit) = attempt(f, r, phi1, &t0) {
                return Ok(hit);
            }
        }
    }
    if r == rep.generators.d2() {
        // psi = phi2 + h * phi1 with deg h = d2 - d1
        let k = r - d1;
        let dirs: Vec<Vec<Q>> = (0..=k)
            .map(|j| {
                let mut m = vec![Q::zero(); k + 1];
                m[j] = Q::one();
                mul(phi1, &m)
            })
            .collect();
        let combine = |h: &[Q]| -> Vec<Q> {
            let mut psi = phi2.clone();
            for (hj, dj) in h.iter().zip(&dirs) {
                for (p, x) in psi.iter_mut().zip(dj) {
                    *p += hj * x;
                }
            }
            psi
        };
        let solve_at = |t0: &[Q; 2]| -> Option<(Vec<Q>, Vec<Vec<Q>>)> {
            if eval_dual(phi1, &t0[0], &t0[1]).is_zero() {
                return None;
            }
            let row: Vec<Q> = dirs.iter().map(|dj| eval_dual(dj, &t0[0], &t0[1])).collect();
            let rhs = -eval_dual(phi2, &t0[0], &t0[1]);
            match exact_solve(&Matrix::from_rows(&[row]), &[rhs]) {
                Solution::Unique(h) => Some((h, vec![])),
                Solution::Family { particular, kernel } => Some((particular, kernel)),
                Solution::Inconsistent => None,
            }
        };
        let pts = || points_by_height(height_bound).map(|(a, b)| [q(a), q(b)]);
        for t0 in pts() {
            if let Some((h, _)) = solve_at(&t0) {
                if let Some(hit) = attempt(f, r, &combine(&h), &t0) {
                    return Ok(hit);
                }
            }
        }
        // second pass: move along the solution family
        let scalars: Vec<Q> = nonzero_by_height(3).collect();
        for t0 in pts() {
            let Some((h, kernel)) = solve_at(&t0) else { continue };
            for kv in &kernel {
                for s in &scalars {
                    let hs: Vec<Q> = h.iter().zip(kv).map(|(a, b)| a + s * b).collect();
                    if let Some(hit) = attempt(f, r, &combine(&hs), &t0) {
                        return Ok(hit);
                    }
                }
            }
        }
    }
    Err(Error::inconclusive(format!("no rational drop found within height {height_bound}")))
}

fn attempt(f: &BinaryForm, r: usize, psi: &[Q], t0: &[Q; 2]) -> Option<DropOne> {
    if psi.iter().all(Zero::is_zero) || !binary_squarefree(psi).0 {
        return None;
    }
    let lambda = normalize_first(&[t0[1].clone(), -t0[0].clone()]);
    let chi = div_exact(psi, &lambda)?;
    let ell = normalize_first(t0);
    let d = f.degree() as u32;
    let ld = BinaryForm::power(&[ell[0].clone(), ell[1].clone()], d);
    let a = contract(&chi, f.coeffs());
    let b = contract(&chi, ld.coeffs());
    let i = b.iter().position(|x| !x.is_zero())?;
    let c = &a[i] / &b[i];
    if a.iter().zip(&b).any(|(x, y)| x != &(&c * y)) {
        return None;
    }
    let g = f.sub_scaled(&c, &ld).ok()?;
    let rank_g = binary_rank(&g).rank;
    (rank_g + 1 == r).then(|| DropOne { t0: t0.to_vec(), psi: psi.to_vec(), lambda, chi, ell, c, g, rank_f: r, rank_g })
}
