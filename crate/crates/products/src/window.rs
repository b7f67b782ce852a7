//! Rank windows: a computed lower bound against a checked decomposition.

use apolar_binary::{waring_decomposition, BinaryForm};
use apolar_core::decomp::BoundKind;
use apolar_core::matrix::kron_vec;
use apolar_core::{Attestation, Error, Factor, Result, StructuredDecomposition, Summand, Q};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerMethod {
    Flattening,
    BigradedHf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: usize,
    pub method: LowerMethod,
    /// Which computation produced the value.
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: usize,
    pub decomposition: StructuredDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWindow {
    pub target: String,
    pub lower: Option<LowerBound>,
    pub upper: Option<UpperBound>,
    pub closed: bool,
    /// Values quoted from elsewhere. Never used in the bounds above.
    pub annotations: Vec<String>,
}

impl RankWindow {
    pub fn value(&self) -> Option<usize> {
        self.closed.then(|| self.upper.as_ref().map(|u| u.value)).flatten()
    }
}

/// Checks the decomposition, then assembles the window. A lower bound above
/// the constructed upper bound is an internal contradiction.
pub fn certify_window(
    target: impl Into<String>,
    lower: Option<LowerBound>,
    upper: Option<StructuredDecomposition>,
    annotations: Vec<String>,
) -> Result<RankWindow> {
    let target = target.into();
    let upper = match upper {
        Some(d) => {
            if d.bound != BoundKind::Rank {
                return Err(Error::pre("a border rank decomposition does not bound the rank"));
            }
            d.check()?;
            Some(UpperBound { value: d.term_count, decomposition: d })
        }
        None => None,
    };
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l.value > u.value {
            return Err(Error::Inconsistent(format!(
                "{target}: lower bound {} exceeds the constructed {}",
                l.value, u.value
            )));
        }
    }
    let closed = matches!((&lower, &upper), (Some(l), Some(u)) if l.value == u.value);
    Ok(RankWindow { target, lower, upper, closed, annotations })
}

fn linear_label(l: &[Q; 2]) -> String {
    let p = apolar_core::Poly::from_binary_coeffs(&["x", "y"], &[l[0].clone(), l[1].clone()]);
    format!("({p})")
}

/// A Waring decomposition of `f` with one power leaf per term.
pub fn binary_power_sum(f: &BinaryForm) -> Result<StructuredDecomposition> {
    let d = f.degree() as u32;
    let summands = waring_decomposition(f)?
        .into_iter()
        .map(|(c, l)| {
            let coords = BinaryForm::power(&l, d).coeffs().to_vec();
            let leaf = Factor::leaf(
                format!("{}^{d}", linear_label(&l)),
                coords,
                1,
                Attestation::Power { base: l.to_vec(), exponent: d },
            );
            Summand::new(c, vec![leaf])
        })
        .collect();
    StructuredDecomposition::build(
        f.to_string(),
        vec![f.degree() + 1],
        f.coeffs().to_vec(),
        BoundKind::Rank,
        summands,
        vec![],
    )
}

/// The termwise product of two single-factor decompositions.
pub fn product_decomposition(
    a: &StructuredDecomposition,
    b: &StructuredDecomposition,
) -> Result<StructuredDecomposition> {
    let mut summands = Vec::new();
    for s in &a.summands {
        for t in &b.summands {
            let factors = s.factors.iter().chain(&t.factors).cloned().collect();
            summands.push(Summand::new(&s.coeff * &t.coeff, factors));
        }
    }
    let dims = a.dims.iter().chain(&b.dims).copied().collect();
    let bound =
        if a.bound == BoundKind::Rank && b.bound == BoundKind::Rank { BoundKind::Rank } else { BoundKind::BorderRank };
    StructuredDecomposition::build(
        format!("({})⊗({})", a.target, b.target),
        dims,
        kron_vec(&a.target_coords, &b.target_coords),
        bound,
        summands,
        vec!["product of the factor decompositions".into()],
    )
}
