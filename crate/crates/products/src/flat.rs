//! Flattening lower bounds for tensor products of forms.

use apolar_binary::{catalecticant, BinaryForm};
use apolar_core::{Error, Matrix, Result};
use apolar_cubics::{cat1, koszul_flattening, TernaryCubic};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A factor of a product tensor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "form", rename_all = "kebab-case")]
pub enum FormFactor {
    Binary(BinaryForm),
    Cubic(TernaryCubic),
}

impl FormFactor {
    pub fn coeffs(&self) -> &[apolar_core::Q] {
        match self {
            FormFactor::Binary(f) => f.coeffs(),
            FormFactor::Cubic(f) => f.coeffs(),
        }
    }

    /// The middle catalecticant for binary forms, the Koszul flattening
    /// for cubics.
    pub fn default_flattening(&self) -> Flattening {
        match self {
            FormFactor::Binary(f) => Flattening::Catalecticant(f.degree() / 2),
            FormFactor::Cubic(_) => Flattening::Koszul,
        }
    }
}

impl fmt::Display for FormFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormFactor::Binary(g) => write!(f, "{g}"),
            FormFactor::Cubic(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flattening {
    /// Contraction by forms of degree e.
    Catalecticant(usize),
    /// The augmented flattening of a plane cubic; a power has rank 2.
    Koszul,
}

/// The flattening matrix and the rank it takes on a single point of the
/// variety.
pub fn flattening_matrix(f: &FormFactor, choice: Flattening) -> Result<(Matrix, usize)> {
    match (f, choice) {
        (FormFactor::Binary(g), Flattening::Catalecticant(e)) => Ok((catalecticant(g, e)?, 1)),
        (FormFactor::Cubic(g), Flattening::Catalecticant(1)) => Ok((cat1(g), 1)),
        (FormFactor::Cubic(g), Flattening::Catalecticant(2)) => Ok((cat1(g).transpose(), 1)),
        (FormFactor::Cubic(g), Flattening::Koszul) => Ok((koszul_flattening(g), 2)),
        (FormFactor::Binary(_), Flattening::Koszul) => {
            Err(Error::pre("the Koszul flattening is defined here only for plane cubics"))
        }
        (FormFactor::Cubic(_), Flattening::Catalecticant(e)) => {
            Err(Error::pre(format!("a cubic has catalecticants of order 1 and 2, not {e}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KronBound {
    pub flattenings: [Flattening; 2],
    pub factor_ranks: [usize; 2],
    /// Rank of the Kronecker product of the two flattening matrices.
    pub kron_rank: usize,
    /// Product of the ranks on single points.
    pub normalizer: usize,
    /// ceil(kron_rank / normalizer), a lower bound on the border rank.
    pub bound: usize,
}

/// Lower bound on the border rank of f (x) g from the Kronecker product of
/// one flattening of each factor.
pub fn kron_flattening_bound(f: &FormFactor, cf: Flattening, g: &FormFactor, cg: Flattening) -> Result<KronBound> {
    let (a, na) = flattening_matrix(f, cf)?;
    let (b, nb) = flattening_matrix(g, cg)?;
    let kron_rank = a.kron(&b).rank();
    let normalizer = na * nb;
    Ok(KronBound {
        flattenings: [cf, cg],
        factor_ranks: [a.rank(), b.rank()],
        kron_rank,
        normalizer,
        bound: kron_rank.div_ceil(normalizer),
    })
}

/// The same bound with each factor's default flattening.
pub fn default_kron_bound(f: &FormFactor, g: &FormFactor) -> Result<KronBound> {
    kron_flattening_bound(f, f.default_flattening(), g, g.default_flattening())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(s: &str) -> FormFactor {
        FormFactor::Binary(BinaryForm::parse(s).unwrap())
    }

    #[test]
    fn binary_examples() {
        let f = bin("x^3+y^3");
        assert_eq!(default_kron_bound(&f, &f).unwrap().bound, 4);
        let m = bin("x*y^2");
        assert_eq!(default_kron_bound(&m, &m).unwrap().bound, 4);
        let p = bin("x^4");
        let g = bin("x^2*y^2");
        assert_eq!(default_kron_bound(&p, &g).unwrap().bound, 3);
    }

    #[test]
    fn invalid_choices() {
        let f = bin("x^3+y^3");
        assert!(kron_flattening_bound(&f, Flattening::Koszul, &f, Flattening::Catalecticant(1)).is_err());
        let c = FormFactor::Cubic(TernaryCubic::parse("x^3+y^3+z^3").unwrap());
        assert!(kron_flattening_bound(&c, Flattening::Catalecticant(3), &f, Flattening::Catalecticant(1)).is_err());
        // a rank-3 cubic: Koszul rank 6 over a point's 2
        assert_eq!(default_kron_bound(&c, &f).unwrap().bound, 6);
    }
}
