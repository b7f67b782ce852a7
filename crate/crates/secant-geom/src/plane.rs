use crate::witness::VarietyPoint;
use apolar_core::decomp::{BoundKind, Factor, StructuredDecomposition, Summand};
use apolar_core::matrix::{exact_solve, kron_vec, Matrix, Solution};
use apolar_core::{Error, ProjPoint, Result, Q};
use num_traits::{One, Zero};

/// Number of terms produced for `r + 1` spanning points:
/// (r+1)^(r+1) - (r+1)! + 1.
pub fn multisecant_plane_terms(r: usize) -> usize {
    let n = r + 1;
    n.pow(n as u32) - (1..=n).product::<usize>() + 1
}

/// Index words of length n over {0..n-1}, in lexicographic order.
fn words(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

fn injective(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len()];
    w.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

fn coords_in(basis: &[Vec<Q>], v: &[Q], what: &str) -> Result<Vec<Q>> {
    match exact_solve(&Matrix::from_cols(basis), v) {
        Solution::Unique(c) => Ok(c),
        Solution::Family { .. } => Err(Error::pre("the z points are linearly dependent")),
        Solution::Inconsistent => Err(Error::pre(format!("{what} is not in the span of the z points"))),
    }
}

/// `p^(x)(r+1)` as a combination of the products z_a1 (x) ... (x) z_a(r+1)
/// over index words with a repeated letter, plus `w^(x)(r+1)`.
///
/// With p = sum p_i z_i and w = sum w_i z_i, a word using every index once
/// only receives a contribution from w, which fixes c_w = prod p_i / prod w_i;
/// every other word then absorbs the difference.
pub fn multisecant_plane_decomposition(
    z: &[VarietyPoint],
    w: &VarietyPoint,
    p: &ProjPoint,
) -> Result<StructuredDecomposition> {
    let n = z.len();
    if n < 2 {
        return Err(Error::pre("need at least two z points"));
    }
    let basis: Vec<Vec<Q>> = z.iter().map(|v| v.coords().to_vec()).collect();
    let wc = coords_in(&basis, w.coords(), "w")?;
    if let Some(i) = wc.iter().position(Zero::is_zero) {
        return Err(Error::pre(format!("w has zero coefficient on z_{i}, so it lies on a smaller multisecant space")));
    }
    let pc = coords_in(&basis, p.coords(), "p")?;
    let prod = |c: &[Q], word: &[usize]| word.iter().fold(Q::one(), |acc, &i| acc * &c[i]);
    let all_words = words(n);
    let perm = all_words.iter().find(|w| injective(w)).expect("identity word");
    let cw = prod(&pc, perm) / prod(&wc, perm);
    let mut summands: Vec<Summand> = all_words
        .iter()
        .filter(|word| !injective(word))
        .map(|word| {
            let c = prod(&pc, word) - &cw * prod(&wc, word);
            Summand::new(c, word.iter().map(|&i| z[i].leaf()).collect::<Vec<Factor>>())
        })
        .collect();
    summands.push(Summand::new(cw, vec![w.leaf(); n]));
    let target = (0..n).fold(vec![Q::one()], |acc, _| kron_vec(&acc, p.coords()));
    StructuredDecomposition::build(
        format!("{p}^⊗{n}"),
        vec![p.coords().len(); n],
        target,
        BoundKind::Rank,
        summands,
        vec![format!("{} words with a repeated index plus w^⊗{n}", multisecant_plane_terms(n - 1) - 1)],
    )
}
