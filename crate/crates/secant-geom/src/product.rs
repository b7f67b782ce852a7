use crate::witness::{proportional, ProductTensor, VarietyPoint};
use apolar_core::decomp::{Attestation, BoundKind, Factor, StructuredDecomposition, Summand};
use apolar_core::matrix::{in_span, kron_vec, rank_of};
use apolar_core::{q, Error, ProjPoint, Result, Q};
use serde::{Deserialize, Serialize};

/// One factor of the multidrop construction: a point `z` of the variety and
/// a point `q0` of border rank `r` such that `q0 + z` also has border rank
/// at most `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DropFactor {
    pub z: VarietyPoint,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub q0: Vec<Q>,
    pub r: usize,
    /// How the border ranks of q0 and q0 + z are known. `Point` means the
    /// caller asserts them; form attestations can be rechecked.
    pub attestation: Attestation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultidropIdentity {
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub p1: Vec<Q>,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub p2: Vec<Q>,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub q11: Vec<Q>,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub q21: Vec<Q>,
    pub decomposition: StructuredDecomposition,
    /// r1 r2 + r1 + r2.
    pub bound: usize,
    /// (r1 + 1)(r2 + 1), the bound without the construction.
    pub product_bound: usize,
    pub provenance: String,
}

/// p1 (x) p2 = q10 (x) q20 + 2 q11 (x) z2 + 2 z1 (x) q21 with
/// q_i1 = q_i0 + z_i and p_i = q_i0 + 2 z_i.
pub fn multidrop_product_identity(f1: &DropFactor, f2: &DropFactor) -> Result<MultidropIdentity> {
    for (f, which) in [(f1, "first"), (f2, "second")] {
        if f.q0.len() != f.z.coords().len() {
            return Err(Error::pre(format!("{which} factor: q0 and z have different lengths")));
        }
        if proportional(&f.q0, f.z.coords()) {
            return Err(Error::pre(format!("{which} factor: q0 coincides with z")));
        }
        if f.r == 0 {
            return Err(Error::pre(format!("{which} factor: border rank must be positive")));
        }
    }
    let shift =
        |f: &DropFactor, k: i64| -> Vec<Q> { f.q0.iter().zip(f.z.coords()).map(|(a, b)| a + b * q(k)).collect() };
    let (q11, q21) = (shift(f1, 1), shift(f2, 1));
    let (p1, p2) = (shift(f1, 2), shift(f2, 2));
    let leaf = |name: &str, v: &[Q], f: &DropFactor| Factor::leaf(name, v.to_vec(), f.r, f.attestation.clone());
    let summands = vec![
        Summand::new(q(1), vec![leaf("q10", &f1.q0, f1), leaf("q20", &f2.q0, f2)]),
        Summand::new(q(2), vec![leaf("q11", &q11, f1), f2.z.leaf()]),
        Summand::new(q(2), vec![f1.z.leaf(), leaf("q21", &q21, f2)]),
    ];
    let decomposition = StructuredDecomposition::build(
        "p1⊗p2",
        vec![p1.len(), p2.len()],
        kron_vec(&p1, &p2),
        BoundKind::BorderRank,
        summands,
        vec!["p_i = q_i0 + 2 z_i and q_i1 = q_i0 + z_i".into()],
    )?;
    let asserted = |a: &Attestation| matches!(a, Attestation::Point { .. });
    let provenance = if asserted(&f1.attestation) || asserted(&f2.attestation) {
        "conditional on asserted r_i"
    } else {
        "border ranks of the q leaves carry recheckable attestations"
    };
    let (r1, r2) = (f1.r, f2.r);
    Ok(MultidropIdentity {
        p1,
        p2,
        q11,
        q21,
        bound: decomposition.term_count,
        product_bound: (r1 + 1) * (r2 + 1),
        decomposition,
        provenance: provenance.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonProduct {
    pub decomposition: StructuredDecomposition,
    #[serde(with = "apolar_core::rational::serde_q::vec")]
    pub a4: Vec<Q>,
    /// The left factors paired with b1 differ from those paired with b2, so
    /// the summands are not of the form S1 x S2.
    pub non_product: bool,
}

/// (a1 + a2) (x) (b1 + b2) = a1 b1 + a2 b1 + a3 b2 + a4 b2 with
/// a4 = a1 + a2 - a3.
pub fn nonproduct_decomposition(a: [&VarietyPoint; 3], b: [&VarietyPoint; 2]) -> Result<NonProduct> {
    let av: Vec<Vec<Q>> = a.iter().map(|x| x.coords().to_vec()).collect();
    let bv: Vec<Vec<Q>> = b.iter().map(|x| x.coords().to_vec()).collect();
    if rank_of(&av) < 3 {
        return Err(Error::pre("a1, a2, a3 must be linearly independent"));
    }
    if rank_of(&bv) < 2 {
        return Err(Error::pre("b1, b2 must be linearly independent"));
    }
    let a4: Vec<Q> = (0..av[0].len()).map(|i| &av[0][i] + &av[1][i] - &av[2][i]).collect();
    let a4_point = VarietyPoint::asserted(ProjPoint::new(a4.clone())?);
    let a4_leaf =
        Factor::leaf("a4 = a1+a2-a3", a4.clone(), 1, Attestation::Point { note: a4_point.membership.to_string() });
    let sum = |u: &[Q], v: &[Q]| -> Vec<Q> { u.iter().zip(v).map(|(x, y)| x + y).collect() };
    let summands = vec![
        Summand::new(q(1), vec![a[0].leaf(), b[0].leaf()]),
        Summand::new(q(1), vec![a[1].leaf(), b[0].leaf()]),
        Summand::new(q(1), vec![a[2].leaf(), b[1].leaf()]),
        Summand::new(q(1), vec![a4_leaf, b[1].leaf()]),
    ];
    let decomposition = StructuredDecomposition::build(
        "(a1+a2)⊗(b1+b2)",
        vec![av[0].len(), bv[0].len()],
        kron_vec(&sum(&av[0], &av[1]), &sum(&bv[0], &bv[1])),
        BoundKind::Rank,
        summands,
        vec!["a4 = a1 + a2 - a3".into()],
    )?;
    let left_b1 = [&av[0], &av[1]];
    let left_b2 = [&av[2], &a4];
    let same_set = left_b2.iter().all(|x| left_b1.iter().any(|y| proportional(x, y)));
    Ok(NonProduct { decomposition, a4, non_product: !same_set })
}

/// True when no summand can be dropped: p is outside the span of every
/// S minus one element. By monotonicity of spans this covers every proper
/// subset.
pub fn nonredundancy_check(s: &[ProductTensor], p: &ProductTensor) -> Result<bool> {
    if s.iter().any(|t| t.dims != p.dims) {
        return Err(Error::pre("summands and p live in different product spaces"));
    }
    let vecs: Vec<Vec<Q>> = s.iter().map(|t| t.coords.clone()).collect();
    if !in_span(&vecs, &p.coords) {
        return Err(Error::pre("p is not in the span of S"));
    }
    Ok((0..vecs.len()).all(|i| {
        let rest: Vec<Vec<Q>> = vecs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        !in_span(&rest, &p.coords)
    }))
}

/// For a decomposition of p1 (x) p2 into products a_i (x) b_i: p1 lies in
/// the span of the a_i and p2 in the span of the b_i.
pub fn factors_span(d: &StructuredDecomposition, p1: &[Q], p2: &[Q]) -> bool {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for s in &d.summands {
        match s.factors.as_slice() {
            [Factor::Leaf(a), Factor::Leaf(b)] => {
                left.push(a.coords.clone());
                right.push(b.coords.clone());
            }
            _ => return false,
        }
    }
    in_span(&left, p1) && in_span(&right, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vp(c: &[i64]) -> VarietyPoint {
        VarietyPoint::asserted(ProjPoint::from_i64(c))
    }

    fn qv(c: &[i64]) -> Vec<Q> {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn multidrop_bound_for_two_and_two() {
        let f = |z: &[i64], q0: &[i64]| DropFactor {
            z: vp(z),
            q0: qv(q0),
            r: 2,
            attestation: Attestation::Point { note: "asserted border rank 2".into() },
        };
        let m = multidrop_product_identity(&f(&[1, 0, 0], &[0, 1, 1]), &f(&[0, 0, 1], &[2, -1, 3])).unwrap();
        assert_eq!((m.bound, m.product_bound), (8, 9));
        assert_eq!(m.provenance, "conditional on asserted r_i");
        assert!(multidrop_product_identity(&f(&[1, 0, 0], &[2, 0, 0]), &f(&[0, 0, 1], &[2, -1, 3])).is_err());
    }

    #[test]
    fn non_product_in_plane_times_line() {
        let (a1, a2, a3) = (vp(&[1, 0, 0]), vp(&[0, 1, 0]), vp(&[0, 0, 1]));
        let (b1, b2) = (vp(&[1, 0]), vp(&[0, 1]));
        let np = nonproduct_decomposition([&a1, &a2, &a3], [&b1, &b2]).unwrap();
        assert!(np.non_product);
        assert_eq!(np.a4, qv(&[1, 1, -1]));
        assert_eq!(np.decomposition.term_count, 4);
        assert!(factors_span(&np.decomposition, &qv(&[1, 1, 0]), &qv(&[1, 1])));
        assert!(nonproduct_decomposition([&a1, &a2, &a1], [&b1, &b2]).is_err());
    }

    #[test]
    fn redundancy() {
        let a = [qv(&[1, 0]), qv(&[0, 1])];
        let grid: Vec<ProductTensor> =
            a.iter().flat_map(|x| a.iter().map(move |y| ProductTensor::product(&[x, y]))).collect();
        let p = ProductTensor::product(&[&qv(&[1, 1]), &qv(&[1, 1])]);
        assert!(nonredundancy_check(&grid, &p).unwrap());
        let mut rep = grid.clone();
        rep.push(grid[0].clone());
        assert!(!nonredundancy_check(&rep, &p).unwrap());
        assert!(!nonredundancy_check(&grid, &grid[0]).unwrap());
        assert!(nonredundancy_check(&grid[..2], &p).is_err());
    }
}
