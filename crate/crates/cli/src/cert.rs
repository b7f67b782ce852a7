//! Certificates carry their inputs next to their claims so that `verify`
//! can recompute every claim from scratch.

use apolar_binary::{binary_rank, BinaryForm, RankReport};
use apolar_core::decomp::{power_coeffs, BoundKind};
use apolar_core::matrix::kron_vec;
use apolar_core::{Attestation, Error, Factor, Leaf, ProjPoint, Result, StructuredDecomposition, Q};
use apolar_cubics::{classify, CubicClass, TernaryCubic};
use apolar_curves::{
    multiplicity_gap, project_curve, trisecants_through, verify_trisecant, HypersurfacePoly, MultiplicityReport,
    Projection, RationalCurve, TrisecantReport,
};
use apolar_products::{
    bigraded_hf, default_kron_bound, hf_row_sum, kron_flattening_bound, monomial_product_bound, BigradedIdeal,
    FormFactor, KronBound, MonomialBound, RankWindow,
};
use apolar_secant::{
    multidrop_product_identity, nonproduct_decomposition, rank2_product_decision, DropFactor, MultidropIdentity,
    NonProduct, Rank2Verdict, SecantPair, VarietyPoint,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HfQuery {
    At { i: u32, j: u32 },
    RowSum { j: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    BinaryRank { form: BinaryForm, report: RankReport },
    CubicClass { cubic: TernaryCubic, class: CubicClass },
    Decomposition { decomposition: StructuredDecomposition },
    Trisecants { curve: RationalCurve, report: TrisecantReport },
    Multiplicity { hypersurface: HypersurfacePoly, point: ProjPoint, report: MultiplicityReport },
    Projection { curve: RationalCurve, center: ProjPoint, witnesses: Option<Vec<ProjPoint>>, projection: Projection },
    KronBound { factors: [FormFactor; 2], bound: KronBound },
    MonomialBound { exponents: [u32; 4], bound: MonomialBound },
    HilbertFunction { ideal: BigradedIdeal, query: HfQuery, value: usize },
    Window { form: FormFactor, kron: KronBound, monomial: Option<MonomialBound>, window: RankWindow },
    Multidrop { first: DropFactor, second: DropFactor, identity: MultidropIdentity },
    NonProduct { a: [VarietyPoint; 3], b: [VarietyPoint; 2], result: NonProduct },
    Rank2 { first: SecantPair, second: SecantPair, third: Option<[VarietyPoint; 2]>, verdict: Rank2Verdict },
}

fn mismatch(what: &str) -> Error {
    Error::Inconsistent(format!("{what} does not match the recomputation"))
}

fn ensure(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(mismatch(what))
    }
}

/// Re-derives the rank claim of one leaf from its attestation.
fn check_leaf(leaf: &Leaf, bound: BoundKind) -> Result<()> {
    let claim = |actual: usize| {
        if actual <= leaf.rank {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("leaf {} claims {} but has {actual}", leaf.label, leaf.rank)))
        }
    };
    match &leaf.attestation {
        Attestation::Power { base, exponent } => {
            ensure(power_coeffs(base, *exponent) == leaf.coords, &format!("power leaf {}", leaf.label))?;
            claim(1)
        }
        Attestation::BinaryForm => {
            let r = binary_rank(&BinaryForm::new(leaf.coords.clone())?);
            claim(if bound == BoundKind::Rank { r.rank } else { r.border_rank })
        }
        Attestation::TernaryCubic => {
            let c = classify(&TernaryCubic::new(leaf.coords.clone())?)?;
            claim(if bound == BoundKind::Rank { c.rank } else { c.border_rank })
        }
        // Points of the variety are attested by construction; a nonzero
        // point has rank 1.
        Attestation::Point { .. } => claim(1),
    }
}

/// Zero residual, consistent term count, and every leaf rechecked.
pub fn check_decomposition(d: &StructuredDecomposition) -> Result<()> {
    d.check()?;
    for s in &d.summands {
        for f in &s.factors {
            match f {
                Factor::Leaf(l) => check_leaf(l, d.bound)?,
                Factor::Nested(n) => check_decomposition(n)?,
            }
        }
    }
    Ok(())
}

fn is_power(v: &[Q]) -> Result<bool> {
    Ok(binary_rank(&BinaryForm::new(v.to_vec())?).rank == 1)
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::BinaryRank { .. } => "binary-rank",
            Certificate::CubicClass { .. } => "cubic-class",
            Certificate::Decomposition { .. } => "decomposition",
            Certificate::Trisecants { .. } => "trisecants",
            Certificate::Multiplicity { .. } => "multiplicity",
            Certificate::Projection { .. } => "projection",
            Certificate::KronBound { .. } => "kron-bound",
            Certificate::MonomialBound { .. } => "monomial-bound",
            Certificate::HilbertFunction { .. } => "hilbert-function",
            Certificate::Window { .. } => "window",
            Certificate::Multidrop { .. } => "multidrop",
            Certificate::NonProduct { .. } => "non-product",
            Certificate::Rank2 { .. } => "rank2",
        }
    }

    /// Recomputes the claim. Any disagreement is `Error::Inconsistent`.
    pub fn verify(&self) -> Result<()> {
        match self {
            Certificate::BinaryRank { form, report } => ensure(&binary_rank(form) == report, "rank report"),
            Certificate::CubicClass { cubic, class } => ensure(&classify(cubic)? == class, "cubic class"),
            Certificate::Decomposition { decomposition } => check_decomposition(decomposition),
            Certificate::Trisecants { curve, report } => {
                ensure(&trisecants_through(curve, &report.t1)? == report, "trisecant report")?;
                ensure(
                    report.lines.iter().all(|l| l.verified && verify_trisecant(curve, &report.t1, l)),
                    "trisecant line",
                )
            }
            Certificate::Multiplicity { hypersurface, point, report } => {
                let again = multiplicity_gap(hypersurface, point, report.trials.len(), report.seed)?;
                ensure(&again == report, "multiplicity report")
            }
            Certificate::Projection { curve, center, witnesses, projection } => {
                let again = project_curve(curve, center, witnesses.as_deref())?;
                ensure(&again == projection, "projection")
            }
            Certificate::KronBound { factors, bound } => {
                let [cf, cg] = bound.flattenings;
                ensure(&kron_flattening_bound(&factors[0], cf, &factors[1], cg)? == bound, "Kronecker bound")
            }
            Certificate::MonomialBound { exponents: [a1, b1, a2, b2], bound } => {
                let again = monomial_product_bound(*a1, *b1, *a2, *b2);
                ensure(&again == bound, "monomial bound")
            }
            Certificate::HilbertFunction { ideal, query, value } => {
                let again = match query {
                    HfQuery::At { i, j } => bigraded_hf(ideal, (*i, *j)),
                    HfQuery::RowSum { j } => hf_row_sum(ideal, *j)?,
                };
                ensure(again == *value, "Hilbert function value")
            }
            Certificate::Window { form, kron, monomial, window } => {
                verify_window(form, kron, monomial.as_ref(), window)
            }
            Certificate::Multidrop { first, second, identity } => {
                for f in [first, second] {
                    ensure(f.attestation == Attestation::BinaryForm, "drop factor attestation")?;
                    ensure(is_power(f.z.coords())?, "z is a power")?;
                    let q1: Vec<Q> = f.q0.iter().zip(f.z.coords()).map(|(a, b)| a + b).collect();
                    for v in [&f.q0, &q1] {
                        let b = binary_rank(&BinaryForm::new(v.clone())?).border_rank;
                        ensure(b <= f.r, "drop factor border rank")?;
                    }
                }
                ensure(&multidrop_product_identity(first, second)? == identity, "multidrop identity")?;
                check_decomposition(&identity.decomposition)
            }
            Certificate::NonProduct { a, b, result } => {
                let again = nonproduct_decomposition([&a[0], &a[1], &a[2]], [&b[0], &b[1]])?;
                ensure(&again == result, "non-product decomposition")?;
                check_decomposition(&result.decomposition)
            }
            Certificate::Rank2 { first, second, third, verdict } => {
                let again = rank2_product_decision(first, second, third.as_ref().map(|[a, b]| (a, b)))?;
                ensure(&again == verdict, "rank-2 verdict")?;
                if let Rank2Verdict::Rank3Certified { decomposition, .. } = verdict {
                    check_decomposition(decomposition)?;
                }
                Ok(())
            }
        }
    }
}

fn verify_window(form: &FormFactor, kron: &KronBound, monomial: Option<&MonomialBound>, w: &RankWindow) -> Result<()> {
    ensure(&default_kron_bound(form, form)? == kron, "Kronecker bound")?;
    let mut best = kron.bound;
    if let Some(m) = monomial {
        let FormFactor::Binary(f) = form else { return Err(mismatch("monomial bound on a cubic")) };
        let (a, b) = monomial_exponents(f).ok_or_else(|| mismatch("monomial bound on a non-monomial"))?;
        ensure(&monomial_product_bound(a, b, a, b) == m, "monomial bound")?;
        best = best.max(m.value);
    }
    ensure(w.lower.as_ref().map(|l| l.value) == Some(best), "lower bound")?;
    if let Some(u) = &w.upper {
        ensure(u.decomposition.bound == BoundKind::Rank, "upper bound kind")?;
        ensure(u.value == u.decomposition.term_count, "upper bound value")?;
        let c = form.coeffs();
        ensure(u.decomposition.target_coords == kron_vec(c, c), "upper bound target")?;
        check_decomposition(&u.decomposition)?;
        ensure(best <= u.value, "window order")?;
    }
    ensure(w.closed == w.upper.as_ref().is_some_and(|u| u.value == best), "closed flag")
}

/// (a, b) when `f` is a nonzero multiple of x^a y^b.
pub fn monomial_exponents(f: &BinaryForm) -> Option<(u32, u32)> {
    let mut nz = f.coeffs().iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c));
    let (j, _) = nz.next()?;
    if nz.next().is_some() {
        return None;
    }
    let d = f.degree() as u32;
    Some((d - j as u32, j as u32))
}
