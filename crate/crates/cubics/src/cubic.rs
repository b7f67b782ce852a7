use apolar_core::decomp::monomials;
use apolar_core::matrix::Matrix;
use apolar_core::rational::random_q;
use apolar_core::{Error, Poly, Result, Q};
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// A nonzero ternary cubic, coefficients in the basis
/// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Raw", into = "Raw")]
pub struct TernaryCubic {
    coeffs: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
struct Raw(#[serde(with = "apolar_core::rational::serde_q::vec")] Vec<Q>);

impl TryFrom<Raw> for TernaryCubic {
    type Error = Error;
    fn try_from(r: Raw) -> Result<Self> {
        TernaryCubic::new(r.0)
    }
}

impl From<TernaryCubic> for Raw {
    fn from(f: TernaryCubic) -> Self {
        Raw(f.coeffs)
    }
}

/// Position of x^a y^b z^c in the cubic basis.
pub fn index(e: [u32; 3]) -> usize {
    monomials(3, 3).iter().position(|m| m[..] == e[..]).expect("degree 3 exponent")
}

impl TernaryCubic {
    pub fn new(coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != 10 {
            return Err(Error::pre("a ternary cubic has 10 coefficients"));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::pre("the zero cubic has no class"));
        }
        Ok(TernaryCubic { coeffs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_poly(&Poly::parse_in(text, &VARS)?)
    }

    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.nvars() != 3 {
            return Err(Error::pre("ternary cubics have exactly three variables"));
        }
        if p.is_zero() {
            return Err(Error::pre("the zero cubic has no class"));
        }
        if p.homogeneous_degree().map(|(d, _)| d) != Some(3) {
            return Err(Error::pre("input is not a homogeneous cubic"));
        }
        Self::new(monomials(3, 3).iter().map(|e| p.coefficient(e)).collect())
    }

    pub fn to_poly(&self) -> Poly {
        let mut p = Poly::zero(&VARS);
        for (e, c) in monomials(3, 3).into_iter().zip(&self.coeffs) {
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u32; 3]) -> &Q {
        &self.coeffs[index(e)]
    }

    /// f(M (x, y, z)^T).
    pub fn change_vars(&self, m: &Matrix) -> Result<Self> {
        Self::from_poly(&self.to_poly().linear_change(m))
    }

    pub fn eval(&self, p: &[Q]) -> Q {
        self.to_poly().eval(p)
    }

    pub fn gradient(&self) -> [Poly; 3] {
        let p = self.to_poly();
        [p.derivative(0), p.derivative(1), p.derivative(2)]
    }

    /// self - c * other, failing if the result is zero.
    pub fn sub_scaled(&self, c: &Q, other: &TernaryCubic) -> Result<Self> {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - c * b).collect())
    }

    /// (a x + b y + c z)^3.
    pub fn cube(l: &[Q]) -> Self {
        Self::new(apolar_core::decomp::power_coeffs(l, 3)).expect("nonzero cube")
    }

    /// A binary cubic in the variables `(u, v)` placed on two of x, y, z:
    /// coefficient j of u^(3-j) v^j goes to the monomial with those exponents.
    pub fn embed_binary(c: &[Q], u: usize, v: usize) -> Result<Self> {
        let mut out = vec![Q::zero(); 10];
        for (j, x) in c.iter().enumerate() {
            out[embed_index(j, u, v)] = x.clone();
        }
        Self::new(out)
    }

    pub fn random<R: Rng>(rng: &mut R, bound: i64) -> Self {
        loop {
            if let Ok(f) = Self::new((0..10).map(|_| random_q(rng, bound)).collect()) {
                return f;
            }
        }
    }
}

/// Index in the cubic basis of u^(3-j) v^j.
pub fn embed_index(j: usize, u: usize, v: usize) -> usize {
    let mut e = [0u32; 3];
    e[u] += 3 - j as u32;
    e[v] += j as u32;
    index(e)
}

impl fmt::Display for TernaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// A random invertible 3x3 matrix with small integer entries.
pub fn random_gl3<R: Rng>(rng: &mut R, bound: i64) -> Matrix {
    loop {
        let rows: Vec<Vec<Q>> =
            (0..3).map(|_| (0..3).map(|_| Q::from_integer(rng.gen_range(-bound..=bound).into())).collect()).collect();
        let m = Matrix::from_rows(&rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}
