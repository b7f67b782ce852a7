use crate::form::{contract, eval_dual, mul, BinaryForm};
use apolar_core::decomp::power_coeffs;
use apolar_core::matrix::{exact_kernel, exact_rank, exact_solve, in_span, Matrix, Solution};
use apolar_core::poly::binary_squarefree;
use apolar_core::rational::normalize_first;
use apolar_core::upoly::UPoly;
use apolar_core::{Error, Poly, Result, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Generators of the apolar ideal, as coefficient vectors in the dual basis
/// dx^e, dx^(e-1) dy, ..., dy^e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApolarPair {
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub phi1: Vec<Q>,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub phi2: Vec<Q>,
}

impl ApolarPair {
    pub fn d1(&self) -> usize {
        self.phi1.len() - 1
    }

    pub fn d2(&self) -> usize {
        self.phi2.len() - 1
    }

    pub fn phi1_poly(&self) -> Poly {
        dual_poly(&self.phi1)
    }

    pub fn phi2_poly(&self) -> Poly {
        dual_poly(&self.phi2)
    }
}

/// A dual form as a polynomial in the variables `dx`, `dy`.
pub fn dual_poly(c: &[Q]) -> Poly {
    Poly::from_binary_coeffs(&["dx", "dy"], c)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub border_rank: usize,
    pub rank: usize,
    pub generators: ApolarPair,
    pub phi1_squarefree: bool,
    /// Both bounds are exact: apolarity gives matching lower and upper bounds.
    pub exact: bool,
    pub method: String,
}

/// Contraction matrix Sym^e V* -> Sym^(d-e) V; column j is
/// dx^(e-j) dy^j applied to f.
pub fn catalecticant(f: &BinaryForm, e: usize) -> Result<Matrix> {
    let d = f.degree();
    if e > d {
        return Err(Error::pre(format!("catalecticant degree {e} exceeds form degree {d}")));
    }
    let cols: Vec<Vec<Q>> = (0..=e)
        .map(|j| {
            let mut phi = vec![Q::zero(); e + 1];
            phi[j] = Q::one();
            contract(&phi, f.coeffs())
        })
        .collect();
    Ok(Matrix::from_cols(&cols))
}

/// Degree-e part of the apolar ideal, one vector per free column.
pub(crate) fn apolar_space(f: &BinaryForm, e: usize) -> Vec<Vec<Q>> {
    if e > f.degree() {
        return (0..=e)
            .map(|j| {
                let mut v = vec![Q::zero(); e + 1];
                v[j] = Q::one();
                v
            })
            .collect();
    }
    exact_kernel(&catalecticant(f, e).expect("e <= d"))
}

pub fn apolar_generators(f: &BinaryForm) -> ApolarPair {
    let d = f.degree();
    let (d1, phi1) = (1..=d + 1)
        .find_map(|e| apolar_space(f, e).into_iter().next().map(|v| (e, normalize_first(&v))))
        .expect("x^(d+1) derivatives kill every degree d form");
    let d2 = d + 2 - d1;
    let multiples: Vec<Vec<Q>> = (0..=d2 - d1)
        .map(|j| {
            let mut m = vec![Q::zero(); d2 - d1 + 1];
            m[j] = Q::one();
            mul(&phi1, &m)
        })
        .collect();
    let phi2 = apolar_space(f, d2)
        .into_iter()
        .find(|v| !in_span(&multiples, v))
        .map(|v| normalize_first(&v))
        .expect("apolar ideal of a binary form has two generators");
    ApolarPair { phi1, phi2 }
}

pub fn binary_rank(f: &BinaryForm) -> RankReport {
    let generators = apolar_generators(f);
    let (sf, _) = binary_squarefree(&generators.phi1);
    let border_rank = generators.d1();
    let rank = if sf { border_rank } else { generators.d2() };
    RankReport {
        border_rank,
        rank,
        generators,
        phi1_squarefree: sf,
        exact: true,
        method: "apolar generators of degrees d1 <= d2; border rank d1, rank d1 if phi1 is squarefree else d2".into(),
    }
}

/// Sort key reproducing the order of [`crate::points_by_height`].
pub(crate) fn height_key(p: &[Q; 2]) -> (num_bigint::BigInt, num_bigint::BigInt, num_bigint::BigInt) {
    let ints = apolar_core::rational::primitive_integer(p);
    let (mut a, mut b) = (ints[0].clone(), ints[1].clone());
    if a < num_bigint::BigInt::zero() || (a.is_zero() && b < num_bigint::BigInt::zero()) {
        a = -a;
        b = -b;
    }
    use num_traits::Signed;
    (a.abs() + b.abs(), -a, b)
}

/// Rational zeros (a:b) of a dual form, in height order.
pub(crate) fn dual_rational_roots(phi: &[Q]) -> Vec<[Q; 2]> {
    let e = phi.len() - 1;
    let mut out = Vec::new();
    if phi[0].is_zero() {
        out.push([Q::one(), Q::zero()]);
    }
    // phi(a, 1) = sum c_j a^(e-j)
    let aff = UPoly::new((0..=e).map(|k| phi[e - k].clone()).collect());
    if !aff.is_zero() {
        for r in aff.rational_roots() {
            out.push([r, Q::one()]);
        }
    }
    let mut out: Vec<[Q; 2]> = out
        .into_iter()
        .map(|p| {
            let v = normalize_first(&p);
            [v[0].clone(), v[1].clone()]
        })
        .collect();
    out.sort_by_key(height_key);
    out.dedup();
    out
}

/// A Waring decomposition with rational points, when rank equals border rank
/// and the degree-r apolar generator splits over the rationals.
pub fn waring_decomposition(f: &BinaryForm) -> Result<Vec<(Q, [Q; 2])>> {
    let rep = binary_rank(f);
    if rep.rank != rep.border_rank {
        return Err(Error::pre("rank exceeds border rank; no decomposition from the first generator"));
    }
    let roots = dual_rational_roots(&rep.generators.phi1);
    if roots.len() < rep.rank {
        return Err(Error::inconclusive("the apolar generator does not split over the rationals"));
    }
    let d = f.degree() as u32;
    let cols: Vec<Vec<Q>> = roots.iter().map(|l| power_coeffs(l, d)).collect();
    let sol = exact_solve(&Matrix::from_cols(&cols), f.coeffs());
    let c = match sol {
        Solution::Unique(c) => c,
        _ => return Err(Error::Inconsistent("power sum system is not uniquely solvable".into())),
    };
    debug_assert_eq!(exact_rank(&Matrix::from_cols(&cols)), rep.rank);
    debug_assert!(roots.iter().all(|r| eval_dual(&rep.generators.phi1, &r[0], &r[1]).is_zero()));
    Ok(c.into_iter().zip(roots).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use apolar_core::q;

    #[test]
    fn catalecticant_of_x_y2() {
        let f = BinaryForm::parse("x*y^2").unwrap();
        let m = catalecticant(&f, 1).unwrap();
        // columns: dx f = y^2, dy f = 2xy, in basis x^2, xy, y^2
        assert_eq!(m.col(0), vec![q(0), q(0), q(1)]);
        assert_eq!(m.col(1), vec![q(0), q(2), q(0)]);
        assert_eq!(m.rank(), 2);
        assert!(catalecticant(&f, 4).is_err());
    }

    #[test]
    fn generators_of_examples() {
        let g = apolar_generators(&BinaryForm::parse("x*y^2").unwrap());
        assert_eq!(g.phi1_poly().to_string(), "dx^2");
        assert_eq!(g.phi2_poly().to_string(), "dy^3");
        let g = apolar_generators(&BinaryForm::parse("x^3+y^3").unwrap());
        assert_eq!(g.phi1_poly().to_string(), "dx*dy");
        let g = apolar_generators(&BinaryForm::parse("x^4").unwrap());
        assert_eq!(g.phi1_poly().to_string(), "dy");
        assert_eq!(g.d2(), 5);
    }

    #[test]
    fn ranks_of_examples() {
        let r = binary_rank(&BinaryForm::parse("x*y^2").unwrap());
        assert_eq!((r.border_rank, r.rank), (2, 3));
        let r = binary_rank(&BinaryForm::parse("x^3+y^3").unwrap());
        assert_eq!((r.border_rank, r.rank), (2, 2));
    }

    #[test]
    fn waring_of_sum_of_cubes() {
        let f = BinaryForm::parse("x^3+y^3").unwrap();
        let w = waring_decomposition(&f).unwrap();
        assert_eq!(w, vec![(q(1), [q(1), q(0)]), (q(1), [q(0), q(1)])]);
        assert!(waring_decomposition(&BinaryForm::parse("x*y^2").unwrap()).is_err());
    }
}
