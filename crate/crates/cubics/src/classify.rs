use crate::cubic::TernaryCubic;
use crate::flatten::{cat1, koszul_rank};
use crate::singular::{conic_det, is_singular, linear_factor, quotient_conic, LinearFactor, SingularReport};
use apolar_binary::{binary_rank, BinaryForm};
use apolar_core::matrix::{exact_kernel, Matrix};
use apolar_core::{Error, Result, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicTag {
    #[serde(rename = "generic")]
    Generic,
    #[serde(rename = "fermat")]
    Fermat,
    #[serde(rename = "nodal")]
    Nodal,
    #[serde(rename = "cuspidal")]
    Cuspidal,
    #[serde(rename = "conic+secant")]
    ConicSecant,
    #[serde(rename = "conic+tangent")]
    ConicTangent,
    #[serde(rename = "triangle")]
    Triangle,
    #[serde(rename = "concurrent-lines")]
    ConcurrentLines,
    #[serde(rename = "doubleline+line")]
    DoubleLineLine,
    #[serde(rename = "tripleline")]
    TripleLine,
}

impl CubicTag {
    pub const ALL: [CubicTag; 10] = [
        CubicTag::Generic,
        CubicTag::Fermat,
        CubicTag::Nodal,
        CubicTag::Cuspidal,
        CubicTag::ConicSecant,
        CubicTag::ConicTangent,
        CubicTag::Triangle,
        CubicTag::ConcurrentLines,
        CubicTag::DoubleLineLine,
        CubicTag::TripleLine,
    ];

    /// (rank, border rank) of every cubic in the orbit.
    pub fn ranks(self) -> (usize, usize) {
        match self {
            CubicTag::Generic => (4, 4),
            CubicTag::Fermat => (3, 3),
            CubicTag::Nodal => (4, 4),
            CubicTag::Cuspidal => (4, 3),
            CubicTag::ConicSecant => (4, 4),
            CubicTag::ConicTangent => (5, 3),
            CubicTag::Triangle => (4, 4),
            CubicTag::ConcurrentLines => (2, 2),
            CubicTag::DoubleLineLine => (3, 2),
            CubicTag::TripleLine => (1, 1),
        }
    }

    /// A representative of the orbit.
    pub fn normal_form(self) -> &'static str {
        match self {
            CubicTag::Generic => "x^3+y^3+z^3+x*y*z",
            CubicTag::Fermat => "x^3+y^3+z^3",
            CubicTag::Nodal => "x^2*(x-z)+y^2*z",
            CubicTag::Cuspidal => "x^3+y^2*z",
            CubicTag::ConicSecant => "z*(x^2+y^2+z^2)",
            CubicTag::ConicTangent => "z*(x^2+y*z)",
            CubicTag::Triangle => "x*y*z",
            CubicTag::ConcurrentLines => "x*y*(x+y)",
            CubicTag::DoubleLineLine => "x^2*y",
            CubicTag::TripleLine => "x^3",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CubicTag::Generic => "generic",
            CubicTag::Fermat => "fermat",
            CubicTag::Nodal => "nodal",
            CubicTag::Cuspidal => "cuspidal",
            CubicTag::ConicSecant => "conic+secant",
            CubicTag::ConicTangent => "conic+tangent",
            CubicTag::Triangle => "triangle",
            CubicTag::ConcurrentLines => "concurrent-lines",
            CubicTag::DoubleLineLine => "doubleline+line",
            CubicTag::TripleLine => "tripleline",
        }
    }
}

impl fmt::Display for CubicTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub cat1_rank: usize,
    /// Only computed for concise cubics.
    pub koszul_rank: Option<usize>,
    pub singular: Option<SingularReport>,
    pub linear_factor: Option<LinearFactor>,
    /// For non-concise cubics: the binary cubic obtained by dropping the
    /// direction killed by every partial derivative.
    pub binary_reduction: Option<BinaryForm>,
    /// For a rational factor: whether the residual conic is degenerate.
    pub conic_degenerate: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicClass {
    pub tag: CubicTag,
    pub rank: usize,
    pub border_rank: usize,
    pub evidence: Evidence,
}

pub fn classify(f: &TernaryCubic) -> Result<CubicClass> {
    let c1 = cat1(f);
    let cat1_rank = c1.rank();
    let mut ev = Evidence {
        cat1_rank,
        koszul_rank: None,
        singular: None,
        linear_factor: None,
        binary_reduction: None,
        conic_degenerate: None,
    };
    let tag = match cat1_rank {
        0 => return Err(Error::pre("the zero cubic has no class")),
        1 => CubicTag::TripleLine,
        2 => {
            let g = binary_reduction(f, &c1)?;
            let r = binary_rank(&g);
            ev.binary_reduction = Some(g);
            match (r.rank, r.border_rank) {
                (2, 2) => CubicTag::ConcurrentLines,
                (3, 2) => CubicTag::DoubleLineLine,
                other => {
                    return Err(Error::Inconsistent(format!(
                        "binary reduction of a rank-2 flattening has ranks {other:?}"
                    )))
                }
            }
        }
        _ => {
            let k = koszul_rank(f);
            ev.koszul_rank = Some(k);
            let sing = is_singular(f);
            let singular = sing.singular;
            ev.singular = Some(sing);
            let lf = if singular { linear_factor(f) } else { LinearFactor::None };
            if singular {
                ev.linear_factor = Some(lf.clone());
            }
            match (k == 8, singular, &lf) {
                (true, false, _) => CubicTag::Generic,
                (true, true, LinearFactor::None) => CubicTag::Nodal,
                (true, true, LinearFactor::Irrational { .. }) => CubicTag::Triangle,
                (true, true, LinearFactor::Rational { form }) => {
                    let conic = quotient_conic(f, form)
                        .ok_or_else(|| Error::Inconsistent("reported factor does not divide".into()))?;
                    let degenerate = conic_det(&conic).is_zero();
                    ev.conic_degenerate = Some(degenerate);
                    if degenerate {
                        CubicTag::Triangle
                    } else {
                        CubicTag::ConicSecant
                    }
                }
                (false, false, _) => CubicTag::Fermat,
                (false, true, LinearFactor::None) => CubicTag::Cuspidal,
                (false, true, _) => CubicTag::ConicTangent,
            }
        }
    };
    let (rank, border_rank) = tag.ranks();
    Ok(CubicClass { tag, rank, border_rank, evidence: ev })
}

/// f(s a + t b) for a basis (a, b, v) with v spanning the common kernel of
/// the partial derivatives; f does not depend on the v-coordinate.
fn binary_reduction(f: &TernaryCubic, c1: &Matrix) -> Result<BinaryForm> {
    let kernel = exact_kernel(c1);
    let v = kernel.first().ok_or_else(|| Error::Inconsistent("rank-2 flattening with no kernel".into()))?;
    let m = crate::singular::complete_basis(v);
    let p = f.to_poly().linear_change(&m);
    let mut c = vec![Q::zero(); 4];
    for (e, val) in p.terms() {
        if e[2] != 0 {
            return Err(Error::Inconsistent("cubic depends on a killed direction".into()));
        }
        c[e[1] as usize] += val;
    }
    BinaryForm::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        for tag in CubicTag::ALL {
            let f = TernaryCubic::parse(tag.normal_form()).unwrap();
            let c = classify(&f).unwrap();
            assert_eq!(c.tag, tag, "{}", tag.normal_form());
            assert_eq!((c.rank, c.border_rank), tag.ranks());
        }
    }

    #[test]
    fn hesse_pencil_member_splits() {
        let c = classify(&TernaryCubic::parse("x^3+y^3+z^3-3*x*y*z").unwrap()).unwrap();
        assert_eq!(c.tag, CubicTag::Triangle);
        assert_eq!(c.evidence.koszul_rank, Some(8));
        assert!(c.evidence.linear_factor.unwrap().exists());
    }
}
