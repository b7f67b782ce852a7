//! Structured decompositions: trees of weighted tensor products whose leaves
//! are exact vectors with a rank claim and an attestation for that claim.
//!
//! A summand `c * F1 (x) F2 (x) ...` expands to `c` times the Kronecker
//! product of its factor vectors. A nested factor contributes the target of
//! its own decomposition and counts as that decomposition's term count.

use crate::error::{Error, Result};
use crate::matrix::kron_vec;
use crate::rational::Q;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Rank,
    BorderRank,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Attestation {
    /// The leaf is `base^exponent` in the lex-descending monomial basis.
    Power {
        #[serde(with = "crate::rational::serde_q::vec")]
        base: Vec<Q>,
        exponent: u32,
    },
    /// A binary form (x^d, ..., y^d); the claim is re-derived by apolarity.
    BinaryForm,
    /// A ternary cubic; the claim is re-derived by classification.
    TernaryCubic,
    /// A point of the variety by construction or by the caller's word.
    Point { note: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaf {
    pub label: String,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub coords: Vec<Q>,
    /// Rank (or border rank, per the enclosing decomposition) claimed for
    /// this vector; the leaf counts for this many terms.
    pub rank: usize,
    pub attestation: Attestation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Factor {
    Leaf(Leaf),
    Nested(Box<StructuredDecomposition>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    #[serde(with = "crate::rational::serde_q")]
    pub coeff: Q,
    pub factors: Vec<Factor>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredDecomposition {
    pub target: String,
    /// Dimensions of the tensor factors of the ambient space.
    pub dims: Vec<usize>,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub target_coords: Vec<Q>,
    pub bound: BoundKind,
    pub summands: Vec<Summand>,
    pub term_count: usize,
    pub notes: Vec<String>,
}

impl Factor {
    pub fn leaf(label: impl Into<String>, coords: Vec<Q>, rank: usize, attestation: Attestation) -> Self {
        Factor::Leaf(Leaf { label: label.into(), coords, rank, attestation })
    }

    fn dims(&self) -> Vec<usize> {
        match self {
            Factor::Leaf(l) => vec![l.coords.len()],
            Factor::Nested(d) => d.dims.clone(),
        }
    }

    fn vector(&self) -> &[Q] {
        match self {
            Factor::Leaf(l) => &l.coords,
            Factor::Nested(d) => &d.target_coords,
        }
    }

    fn count(&self) -> usize {
        match self {
            Factor::Leaf(l) => l.rank,
            Factor::Nested(d) => d.term_count,
        }
    }
}

impl Summand {
    pub fn new(coeff: Q, factors: Vec<Factor>) -> Self {
        Summand { coeff, factors }
    }

    pub fn expand(&self) -> Vec<Q> {
        let mut v = vec![Q::one()];
        for f in &self.factors {
            v = kron_vec(&v, f.vector());
        }
        v.iter().map(|x| x * &self.coeff).collect()
    }

    pub fn count(&self) -> usize {
        self.factors.iter().map(Factor::count).product()
    }
}

impl StructuredDecomposition {
    /// Assemble and check. Fails if the summands do not reproduce the target.
    pub fn build(
        target: impl Into<String>,
        dims: Vec<usize>,
        target_coords: Vec<Q>,
        bound: BoundKind,
        summands: Vec<Summand>,
        notes: Vec<String>,
    ) -> Result<Self> {
        let term_count = summands.iter().map(Summand::count).sum();
        let d =
            StructuredDecomposition { target: target.into(), dims, target_coords, bound, summands, term_count, notes };
        d.check()?;
        Ok(d)
    }

    pub fn expand(&self) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.target_coords.len()];
        for s in &self.summands {
            for (a, x) in acc.iter_mut().zip(s.expand()) {
                *a += x;
            }
        }
        acc
    }

    pub fn residual(&self) -> Vec<Q> {
        self.expand().iter().zip(&self.target_coords).map(|(a, b)| a - b).collect()
    }

    /// Structural and arithmetic checks that need no knowledge of varieties:
    /// shapes, power leaves, nested residuals, term count, zero residual.
    pub fn check(&self) -> Result<()> {
        let total: usize = self.dims.iter().product();
        if total != self.target_coords.len() {
            return Err(Error::Inconsistent(format!("{}: target length does not match dims", self.target)));
        }
        for (i, s) in self.summands.iter().enumerate() {
            let dims: Vec<usize> = s.factors.iter().flat_map(Factor::dims).collect();
            if dims != self.dims {
                return Err(Error::Inconsistent(format!("{}: summand {i} has factor dims {dims:?}", self.target)));
            }
            for f in &s.factors {
                match f {
                    Factor::Nested(d) => d.check()?,
                    Factor::Leaf(l) => check_leaf(l)?,
                }
            }
        }
        let count: usize = self.summands.iter().map(Summand::count).sum();
        if count != self.term_count {
            return Err(Error::Inconsistent(format!(
                "{}: term count {} but leaves give {count}",
                self.target, self.term_count
            )));
        }
        if self.residual().iter().any(|x| !x.is_zero()) {
            return Err(Error::Inconsistent(format!("{}: nonzero residual", self.target)));
        }
        Ok(())
    }

    /// Every leaf in the tree, depth first.
    pub fn leaves(&self) -> Vec<&Leaf> {
        let mut out = Vec::new();
        for s in &self.summands {
            for f in &s.factors {
                match f {
                    Factor::Leaf(l) => out.push(l),
                    Factor::Nested(d) => out.extend(d.leaves()),
                }
            }
        }
        out
    }
}

fn check_leaf(l: &Leaf) -> Result<()> {
    if let Attestation::Power { base, exponent } = &l.attestation {
        if l.rank != 1 {
            return Err(Error::Inconsistent(format!("power leaf {} claims rank {}", l.label, l.rank)));
        }
        if power_coeffs(base, *exponent) != l.coords {
            return Err(Error::Inconsistent(format!("leaf {} is not the stated power", l.label)));
        }
    }
    Ok(())
}

/// Exponent vectors of degree `d` in `n` variables, lexicographically
/// decreasing (x^d first).
pub fn monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of (sum base_i x_i)^d in the basis [`monomials`]`(n, d)`.
pub fn power_coeffs(base: &[Q], d: u32) -> Vec<Q> {
    let n = base.len();
    monomials(n, d)
        .into_iter()
        .map(|e| {
            // multinomial coefficient times the product of powers
            let mut c = Q::from_integer(factorial(d));
            for (b, &k) in base.iter().zip(&e) {
                c /= Q::from_integer(factorial(k));
                c *= num_traits::pow(b.clone(), k as usize);
            }
            c
        })
        .collect()
}

fn factorial(k: u32) -> num_bigint::BigInt {
    (1..=k).fold(num_bigint::BigInt::one(), |a, i| a * i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn power(base: &[i64], d: u32) -> Factor {
        let b: Vec<Q> = base.iter().map(|&x| q(x)).collect();
        Factor::leaf("l", power_coeffs(&b, d), 1, Attestation::Power { base: b, exponent: d })
    }

    #[test]
    fn monomial_order() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        let m = monomials(3, 3);
        assert_eq!(m.len(), 10);
        assert_eq!(m[0], vec![3, 0, 0]);
        assert_eq!(m[4], vec![1, 1, 1]);
        assert_eq!(m[9], vec![0, 0, 3]);
    }

    #[test]
    fn power_expansion() {
        // (x - y)^3 = x^3 - 3x^2y + 3xy^2 - y^3
        assert_eq!(power_coeffs(&[q(1), q(-1)], 3), vec![q(1), q(-3), q(3), q(-1)]);
    }

    #[test]
    fn residual_and_counts() {
        // x^2 (x) y^2 written as a single product of powers, plus a nested sum
        let target = kron_vec(&[q(1), q(0), q(0)], &[q(2), q(2), q(1)]);
        let inner = StructuredDecomposition::build(
            "x^2+... ",
            vec![3],
            vec![q(2), q(2), q(1)],
            BoundKind::Rank,
            vec![Summand::new(q(1), vec![power(&[1, 0], 2)]), Summand::new(q(1), vec![power(&[1, 1], 2)])],
            vec![],
        )
        .unwrap();
        let d = StructuredDecomposition::build(
            "t",
            vec![3, 3],
            target.clone(),
            BoundKind::Rank,
            vec![Summand::new(q(1), vec![power(&[1, 0], 2), Factor::Nested(Box::new(inner))])],
            vec![],
        )
        .unwrap();
        assert_eq!(d.term_count, 2);
        assert_eq!(d.leaves().len(), 3);
        let mut bad = d.clone();
        bad.target_coords[0] += q(1);
        assert!(bad.check().is_err());
        let mut bad = d;
        bad.term_count = 1;
        assert!(bad.check().is_err());
    }
}
