use apolar_core::decomp::{Attestation, Factor};
use apolar_core::matrix::{exact_solve, kron_vec, rank_of, Matrix, Solution};
use apolar_core::{Error, ProjPoint, Result, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// How a point is known to lie on the variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Membership {
    /// Image of parameter `t` under a parametrized curve.
    OnCurve {
        curve: String,
        #[serde(with = "apolar_core::rational::serde_q")]
        t: Q,
    },
    /// A point of a variety given in normal form, e.g. a power of a linear form.
    NormalForm { note: String },
    /// Taken on the caller's word.
    Asserted,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::OnCurve { curve, t } => write!(f, "on {curve} at t = {}", apolar_core::rational::fmt_q(t)),
            Membership::NormalForm { note } => write!(f, "normal form: {note}"),
            Membership::Asserted => f.write_str("asserted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyPoint {
    pub point: ProjPoint,
    pub membership: Membership,
}

impl VarietyPoint {
    pub fn asserted(point: ProjPoint) -> Self {
        VarietyPoint { point, membership: Membership::Asserted }
    }

    pub fn coords(&self) -> &[Q] {
        self.point.coords()
    }

    pub(crate) fn leaf(&self) -> Factor {
        Factor::leaf(
            self.point.to_string(),
            self.coords().to_vec(),
            1,
            Attestation::Point { note: self.membership.to_string() },
        )
    }
}

/// `p = sum c_i q_i` for points `q_i` of a variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantWitness {
    pub points: Vec<VarietyPoint>,
    pub p: ProjPoint,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub coefficients: Vec<Q>,
}

impl SecantWitness {
    /// Express `p` in the span of `points`, failing if it is not there or
    /// the expression is not unique.
    pub fn new(points: Vec<VarietyPoint>, p: ProjPoint) -> Result<Self> {
        let cols: Vec<Vec<Q>> = points.iter().map(|v| v.coords().to_vec()).collect();
        match exact_solve(&Matrix::from_cols(&cols), p.coords()) {
            Solution::Unique(coefficients) => Ok(SecantWitness { points, p, coefficients }),
            Solution::Family { .. } => Err(Error::pre("points are linearly dependent")),
            Solution::Inconsistent => Err(Error::pre(format!("{} is not in the span of the points", p))),
        }
    }

    pub fn check(&self) -> bool {
        let mut acc = vec![Q::zero(); self.p.coords().len()];
        for (c, v) in self.coefficients.iter().zip(&self.points) {
            for (a, x) in acc.iter_mut().zip(v.coords()) {
                *a += c * x;
            }
        }
        acc == self.p.coords()
    }
}

/// A vector in a tensor product of coordinate spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTensor {
    pub dims: Vec<usize>,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub coords: Vec<Q>,
}

impl ProductTensor {
    pub fn new(dims: Vec<usize>, coords: Vec<Q>) -> Result<Self> {
        if dims.iter().product::<usize>() != coords.len() {
            return Err(Error::pre("coordinate length does not match the factor dimensions"));
        }
        Ok(ProductTensor { dims, coords })
    }

    /// v_1 (x) v_2 (x) ...
    pub fn product(factors: &[&[Q]]) -> Self {
        let dims = factors.iter().map(|f| f.len()).collect();
        let coords = factors.iter().fold(vec![Q::one()], |acc, f| kron_vec(&acc, f));
        ProductTensor { dims, coords }
    }
}

pub(crate) fn proportional(a: &[Q], b: &[Q]) -> bool {
    rank_of(&[a.to_vec(), b.to_vec()]) < 2
}

pub(crate) fn in_line(a1: &[Q], a2: &[Q], p: &[Q]) -> bool {
    rank_of(&[a1.to_vec(), a2.to_vec(), p.to_vec()]) == 2
}

/// Coordinates (s, t) of `p = s a1 + t a2`.
pub(crate) fn line_coords(a1: &[Q], a2: &[Q], p: &[Q]) -> Result<[Q; 2]> {
    match exact_solve(&Matrix::from_cols(&[a1.to_vec(), a2.to_vec()]), p) {
        Solution::Unique(v) => Ok([v[0].clone(), v[1].clone()]),
        _ => Err(Error::pre("point is not on the line")),
    }
}
