use apolar_binary::{binary_rank, BinaryForm};
use apolar_core::decomp::Attestation;
use apolar_core::matrix::{kron_vec, Matrix};
use apolar_core::{q, Poly, ProjPoint, Q};
use apolar_secant::*;
use num_traits::Zero;
use proptest::prelude::*;

fn vp(c: &[i64]) -> VarietyPoint {
    VarietyPoint::asserted(ProjPoint::from_i64(c))
}

fn qv(c: &[i64]) -> Vec<Q> {
    c.iter().map(|&x| q(x)).collect()
}

/// Points base + t * dir on a fixed line of P^3.
fn on_line(t: i64) -> VarietyPoint {
    let base = [1i64, 2, 0, -1];
    let dir = [0i64, 1, 3, 2];
    let c: Vec<i64> = base.iter().zip(dir).map(|(b, d)| b + t * d).collect();
    VarietyPoint {
        point: ProjPoint::from_i64(&c),
        membership: Membership::OnCurve { curve: "test line".into(), t: q(t) },
    }
}

#[test]
fn powers_on_a_line_use_r_plus_one_terms() {
    for r in 1..=4 {
        let pts: Vec<VarietyPoint> = (0..=r as i64).map(on_line).collect();
        let p = on_line(-3).point;
        let d = power_decomposition_on_line(&pts, &p, r).unwrap();
        assert_eq!(d.term_count, r + 1);
        assert!(d.residual().iter().all(Zero::is_zero));
    }
}

#[test]
fn line_coordinates_do_not_matter() {
    let pts: Vec<VarietyPoint> = (0..4).map(on_line).collect();
    let p = on_line(7).point;
    let d = power_decomposition_on_line(&pts, &p, 3).unwrap();
    let mut rev = pts.clone();
    rev.reverse();
    let e = power_decomposition_on_line(&rev, &p, 3).unwrap();
    let mut c: Vec<Q> = e.summands.iter().map(|s| s.coeff.clone()).collect();
    c.reverse();
    assert_eq!(c, d.summands.iter().map(|s| s.coeff.clone()).collect::<Vec<_>>());
}

#[test]
fn plane_counts() {
    for r in 1..=3usize {
        let n = r + 1;
        let z: Vec<VarietyPoint> = (0..n)
            .map(|i| {
                let mut c = vec![0i64; n];
                c[i] = 1;
                vp(&c)
            })
            .collect();
        let w = vp(&vec![1; n]);
        let p: Vec<i64> = (1..=n as i64).collect();
        let d = multisecant_plane_decomposition(&z, &w, &ProjPoint::from_i64(&p)).unwrap();
        assert_eq!(d.term_count, (n).pow(n as u32) - (1..=n).product::<usize>() + 1);
        assert!(d.residual().iter().all(Zero::is_zero));
    }
}

#[test]
fn multidrop_with_binary_certificates() {
    // z = x^5 and q0 = x^4 y; q1 = x^5 + x^4 y
    let z = BinaryForm::parse("x^5").unwrap();
    let q0 = BinaryForm::parse("x^4*y").unwrap();
    let q1 = BinaryForm::parse("x^5+x^4*y").unwrap();
    assert_eq!(binary_rank(&q0).border_rank, 2);
    assert_eq!(binary_rank(&q1).border_rank, 2);
    let f = DropFactor {
        z: VarietyPoint {
            point: ProjPoint::new(z.coeffs().to_vec()).unwrap(),
            membership: Membership::NormalForm { note: "x^5".into() },
        },
        q0: q0.coeffs().to_vec(),
        r: 2,
        attestation: Attestation::BinaryForm,
    };
    let m = multidrop_product_identity(&f, &f).unwrap();
    assert_eq!(m.bound, 8);
    assert_eq!(m.product_bound, 9);
    assert_eq!(m.q11, q1.coeffs().to_vec());
    assert_eq!(m.decomposition.expand(), kron_vec(&m.p1, &m.p2));
    assert_ne!(m.provenance, "conditional on asserted r_i");
}

/// The multidrop identity as a polynomial identity in all coordinates.
#[test]
fn multidrop_identity_is_bilinear() {
    let names = ["q", "z", "s", "w"];
    let v = |i| Poly::var(&names, i);
    let two = Poly::constant(&names, q(2));
    let (q10, z1, q20, z2) = (v(0), v(1), v(2), v(3));
    let p1 = q10.add(&two.mul(&z1));
    let p2 = q20.add(&two.mul(&z2));
    let rhs = q10.mul(&q20).add(&two.mul(&q10.add(&z1)).mul(&z2)).add(&two.mul(&z1).mul(&q20.add(&z2)));
    assert!(p1.mul(&p2).sub(&rhs).is_zero());
}

#[test]
fn two_minimal_decompositions() {
    let (a1, a2, a3) = (vp(&[1, 0, 0]), vp(&[0, 1, 0]), vp(&[0, 0, 1]));
    let (b1, b2) = (vp(&[1, 0]), vp(&[0, 1]));
    let np = nonproduct_decomposition([&a1, &a2, &a3], [&b1, &b2]).unwrap();
    assert!(np.non_product);
    // the same point has no rank-3 certificate from these third points
    let first = SecantPair { a1: a1.clone(), a2: a2.clone(), p: ProjPoint::from_i64(&[1, 1, 0]) };
    let second = SecantPair { a1: b1.clone(), a2: b2.clone(), p: ProjPoint::from_i64(&[1, 1]) };
    let (w1, w2) = (vp(&[1, 2, 0]), vp(&[1, 3]));
    match rank2_product_decision(&first, &second, Some((&w1, &w2))).unwrap() {
        Rank2Verdict::NoCertificate { cross_ratio_a, cross_ratio_b, .. } => {
            assert_eq!(cross_ratio_a, Some(apolar_core::qf(1, 2)));
            assert_eq!(cross_ratio_b, Some(apolar_core::qf(1, 3)));
        }
        other => panic!("{other:?}"),
    }
    // the product decomposition over {a1, a2} x {b1, b2} is also minimal
    let grid: Vec<ProductTensor> =
        [&a1, &a2].iter().flat_map(|a| [&b1, &b2].map(|b| ProductTensor::product(&[a.coords(), b.coords()]))).collect();
    let p = ProductTensor::product(&[&qv(&[1, 1, 0]), &qv(&[1, 1])]);
    assert!(nonredundancy_check(&grid, &p).unwrap());
    let ns: Vec<ProductTensor> = np
        .decomposition
        .summands
        .iter()
        .map(|s| {
            ProductTensor::new(vec![3, 2], apolar_core::decomp::Summand::new(q(1), s.factors.clone()).expand()).unwrap()
        })
        .collect();
    assert!(nonredundancy_check(&ns, &p).unwrap());
}

#[test]
fn certified_rank_three_spans_its_factors() {
    let first = SecantPair { a1: vp(&[1, 0, 1]), a2: vp(&[0, 1, 1]), p: ProjPoint::from_i64(&[1, 2, 3]) };
    let second = SecantPair { a1: vp(&[1, 0]), a2: vp(&[0, 1]), p: ProjPoint::from_i64(&[1, 2]) };
    let (w1, w2) = (vp(&[1, 1, 2]), vp(&[1, 1]));
    let Rank2Verdict::Rank3Certified { decomposition, .. } =
        rank2_product_decision(&first, &second, Some((&w1, &w2))).unwrap()
    else {
        panic!("equal cross-ratios expected");
    };
    assert!(factors_span(&decomposition, first.p.coords(), second.p.coords()));
}

proptest! {
    #[test]
    fn cross_ratio_is_projective(
        m in proptest::collection::vec(-7i64..=7, 4),
        t in proptest::collection::vec(-20i64..=20, 2),
    ) {
        let mat = Matrix::from_i64(&[&m[..2], &m[2..]]);
        prop_assume!(!mat.det().is_zero());
        let pts = [qv(&[1, 0]), qv(&[0, 1]), qv(&[1, t[0]]), qv(&[1, t[1]])];
        prop_assume!(t[0] != 0 && t[1] != 0 && t[0] != t[1]);
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let moved: Vec<Vec<Q>> = pts.iter().map(|p| mat.mul_vec(p)).collect();
        let after = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn multidrop_identity_holds(v in proptest::collection::vec(-9i64..=9, 10)) {
        let f1 = DropFactor { z: VarietyPoint::asserted(match ProjPoint::new(qv(&v[0..3])) { Ok(p) => p, Err(_) => return Ok(()) }), q0: qv(&v[3..6]), r: 2, attestation: Attestation::Point { note: "asserted".into() } };
        let f2 = DropFactor { z: VarietyPoint::asserted(match ProjPoint::new(qv(&v[6..8])) { Ok(p) => p, Err(_) => return Ok(()) }), q0: qv(&v[8..10]), r: 3, attestation: Attestation::Point { note: "asserted".into() } };
        if let Ok(m) = multidrop_product_identity(&f1, &f2) {
            prop_assert_eq!(m.decomposition.expand(), kron_vec(&m.p1, &m.p2));
            prop_assert_eq!(m.bound, 2 * 3 + 2 + 3);
        }
    }
}
