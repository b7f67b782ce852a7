//! Projective points and parametrized lines.

use crate::error::{Error, Result};
use crate::matrix::rank_of;
use crate::rational::{normalize_first, q, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A point of projective space, stored with its first nonzero coordinate
/// equal to 1, so equality of values is equality up to scale.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct ProjPoint {
    coords: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct RawPoint(#[serde(with = "crate::rational::serde_q::vec")] Vec<Q>);

impl TryFrom<RawPoint> for ProjPoint {
    type Error = Error;
    fn try_from(r: RawPoint) -> Result<Self> {
        ProjPoint::new(r.0)
    }
}

impl From<ProjPoint> for RawPoint {
    fn from(p: ProjPoint) -> Self {
        RawPoint(p.coords)
    }
}

impl ProjPoint {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.iter().all(|x| x.is_zero()) {
            return Err(Error::pre("the zero vector is not a projective point"));
        }
        Ok(ProjPoint { coords: normalize_first(&coords) })
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect()).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    /// Ambient projective dimension N (the point has N+1 coordinates).
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coordinate_point(n_plus_1: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); n_plus_1];
        c[i] = q(1);
        ProjPoint { coords: c }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::rational::fmt_q_short).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// The affine chart t -> base + t * direction of a projective line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineParam {
    pub base: ProjPoint,
    pub direction: ProjPoint,
}

impl LineParam {
    pub fn new(base: ProjPoint, direction: ProjPoint) -> Result<Self> {
        if base.coords.len() != direction.coords.len() {
            return Err(Error::pre("line endpoints live in different spaces"));
        }
        if rank_of(&[base.coords.clone(), direction.coords.clone()]) != 2 {
            return Err(Error::pre("line endpoints must be independent"));
        }
        Ok(LineParam { base, direction })
    }

    pub fn point_at(&self, t: &Q) -> Vec<Q> {
        self.base.coords.iter().zip(&self.direction.coords).map(|(b, d)| b + t * d).collect()
    }
}
