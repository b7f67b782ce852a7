use apolar_core::decomp::power_coeffs;
use apolar_core::matrix::Matrix;
use apolar_core::rational::{random_q, Q};
use apolar_core::{Error, Poly, Result};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A nonzero binary form of degree d >= 1 with coefficients in the basis
/// x^d, x^(d-1) y, ..., y^d.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Raw", into = "Raw")]
pub struct BinaryForm {
    coeffs: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct Raw(#[serde(with = "apolar_core::rational::serde_q::vec")] Vec<Q>);

impl TryFrom<Raw> for BinaryForm {
    type Error = Error;
    fn try_from(r: Raw) -> Result<Self> {
        BinaryForm::new(r.0)
    }
}

impl From<BinaryForm> for Raw {
    fn from(f: BinaryForm) -> Self {
        Raw(f.coeffs)
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::pre("a binary form needs degree at least 1"));
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::pre("the zero form has no rank"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| apolar_core::q(x)).collect()).expect("valid form")
    }

    /// x^a y^b.
    pub fn monomial(a: u32, b: u32) -> Self {
        let d = (a + b) as usize;
        let mut c = vec![Q::zero(); d + 1];
        c[b as usize] = Q::one();
        Self::new(c).expect("nonzero monomial")
    }

    /// (alpha x + beta y)^d.
    pub fn power(ell: &[Q; 2], d: u32) -> Self {
        Self::new(power_coeffs(ell, d)).expect("nonzero power")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let p = Poly::parse_in(text, &["x", "y"])?;
        Self::from_poly(&p)
    }

    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::pre("binary forms have exactly two variables"));
        }
        let (d, _) = p.homogeneous_degree().ok_or_else(|| Error::pre("form is not homogeneous or is zero"))?;
        Self::new(p.to_binary_coeffs(d)?)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_binary_coeffs(&["x", "y"], &self.coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// f - c * other, failing if the result is zero.
    pub fn sub_scaled(&self, c: &Q, other: &BinaryForm) -> Result<Self> {
        assert_eq!(self.degree(), other.degree());
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - c * b).collect())
    }

    /// f(M (x, y)^T).
    pub fn change_vars(&self, m: &Matrix) -> Result<Self> {
        Self::from_poly(&self.to_poly().linear_change(m))
    }

    /// Random form with coefficients p/q, |p| <= bound, 1 <= q <= bound.
    pub fn random<R: Rng>(d: usize, rng: &mut R, bound: i64) -> Self {
        loop {
            let c: Vec<Q> = (0..=d).map(|_| random_q(rng, bound)).collect();
            if let Ok(f) = Self::new(c) {
                return f;
            }
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

fn falling(p: usize, k: usize) -> Q {
    (0..k).fold(Q::one(), |acc, i| acc * Q::from_integer(((p - i) as i64).into()))
}

/// Apolarity action phi o f, where phi has coefficients in the basis
/// dx^e, dx^(e-1) dy, ..., dy^e and f in x^d, ..., y^d. Returns the
/// coefficients of the degree d-e result, or an empty vector when e > d.
pub fn contract(phi: &[Q], f: &[Q]) -> Vec<Q> {
    let e = phi.len() - 1;
    let d = f.len() - 1;
    if e > d {
        return vec![];
    }
    let mut out = vec![Q::zero(); d - e + 1];
    for (j, pc) in phi.iter().enumerate() {
        if pc.is_zero() {
            continue;
        }
        // dx^(e-j) dy^j applied to x^(d-i) y^i
        for (i, fc) in f.iter().enumerate() {
            if fc.is_zero() || i < j || d - i < e - j {
                continue;
            }
            let w = falling(d - i, e - j) * falling(i, j);
            out[i - j] += pc * fc * w;
        }
    }
    out
}

/// phi(alpha, beta) for phi in the dual basis.
pub fn eval_dual(phi: &[Q], alpha: &Q, beta: &Q) -> Q {
    let e = phi.len() - 1;
    phi.iter()
        .enumerate()
        .map(|(j, c)| c * num_traits::pow(alpha.clone(), e - j) * num_traits::pow(beta.clone(), j))
        .sum()
}

/// Product of two binary forms given by coefficient vectors.
pub(crate) fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient a / b of binary forms, or `None` if b does not divide a.
pub(crate) fn div_exact(a: &[Q], b: &[Q]) -> Option<Vec<Q>> {
    // Long division from the x^deg end, with b's leading x-coefficient
    // possibly zero: strip common leading zero rows (factors of y) first.
    let lead_b = b.iter().position(|x| !x.is_zero())?;
    let lead_a = a.iter().position(|x| !x.is_zero());
    let Some(lead_a) = lead_a else {
        return Some(vec![Q::zero(); a.len() + 1 - b.len()]);
    };
    if lead_a < lead_b || a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1 - lead_b;
    let bt = &b[lead_b..];
    let at: Vec<Q> = a[lead_b..].to_vec();
    let qlen = at.len() - db;
    let mut r = at;
    let mut quo = vec![Q::zero(); qlen];
    for k in 0..qlen {
        let c = &r[k] / &bt[0];
        if !c.is_zero() {
            for (j, y) in bt.iter().enumerate() {
                r[k + j] -= &c * y;
            }
        }
        quo[k] = c;
    }
    if r.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(quo)
}
