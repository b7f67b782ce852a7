use apolar_core::rational::random_nonzero_q;
use apolar_core::{q, qf, ProjPoint, Q};
use apolar_curves::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quartic() -> RationalCurve {
    RationalCurve::monomial(4, &[0, 1, 3, 4]).unwrap()
}

#[test]
fn twisted_cubic_has_no_trisecants() {
    let c = RationalCurve::rational_normal(3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let t1 = random_nonzero_q(&mut rng, 100);
        let r = trisecants_through(&c, &t1).unwrap();
        assert!(r.certified_empty());
        assert_eq!(r.eliminant.len(), 1);
    }
}

#[test]
fn projected_quartic_has_a_trisecant_through_each_point() {
    let c = quartic();
    for t1 in [q(2), q(-3), qf(1, 2), qf(-5, 3), q(7)] {
        let r = trisecants_through(&c, &t1).unwrap();
        let lines: Vec<_> = r.reduced_lines().collect();
        assert!(!lines.is_empty(), "t1 = {t1}");
        for l in lines {
            assert!(verify_trisecant(&c, &t1, l));
        }
    }
}

#[test]
fn ramification_gives_a_tangent_line() {
    // t -> t^3 ramifies at 0, where the three parameters collide
    let r = trisecants_through(&quartic(), &q(0)).unwrap();
    assert_eq!(r.reduced_lines().count(), 0);
    let tangent: Vec<_> = r.lines.iter().filter(|l| !l.reduced).collect();
    assert!(!tangent.is_empty());
    assert!(tangent.iter().all(|l| verify_trisecant(&quartic(), &q(0), l)));
}

#[test]
fn quintic_four_secant_line() {
    // (1, t, t^4, t^5) lies on x0*x3 = x1*x2 and the ruling through g(1)
    // meets it at the fourth roots of unity
    let c = RationalCurve::monomial(5, &[0, 1, 4, 5]).unwrap();
    let t1 = q(1);
    let r = trisecants_through(&c, &t1).unwrap();
    assert_eq!(r.lines.len(), 1);
    let l = &r.lines[0];
    assert!(verify_trisecant(&c, &t1, l));
    assert_eq!(l.params, SecantParams::Quadratic { s1: q(0), s2: q(1), discriminant: q(-4) });
    let minus_one = c.eval(&Param::Finite(q(-1))).point;
    let span = [l.line[0].coords().to_vec(), l.line[1].coords().to_vec(), minus_one.coords().to_vec()];
    assert_eq!(apolar_core::matrix::rank_of(&span), 2);
    // the pairs {-1, i} and {-1, -i} have conjugate s1, left as an eliminant
    assert_eq!(r.unresolved.len(), 1);
    assert_eq!(r.unresolved[0].eliminant, vec![q(2), q(2), q(1)]);
}

#[test]
fn search_limits() {
    let c = RationalCurve::monomial(7, &[0, 1, 6, 7]).unwrap();
    assert!(trisecants_through(&c, &q(1)).is_err());
    let plane = RationalCurve::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
    assert!(trisecants_through(&plane, &q(1)).is_err());
    let cusp = RationalCurve::monomial(3, &[0, 2, 3, 3]).unwrap();
    assert!(trisecants_through(&cusp, &q(0)).is_err());
}

#[test]
fn normal_curve_gaps_are_one() {
    for k in 1..=3 {
        let f = rnc_secant_determinant(k).unwrap();
        let c = RationalCurve::rational_normal(2 * k);
        for t in [q(0), q(2), Q::zero() - qf(1, 3)] {
            let z = c.eval(&Param::Finite(t)).point;
            let r = multiplicity_gap(&f, &z, 8, 1).unwrap();
            assert_eq!(r.degree as usize, k + 1);
            assert_eq!(r.multiplicity, k, "k = {k}");
            assert_eq!(r.gap, 1);
            assert!(r.multidrop.is_none());
        }
    }
}

#[test]
fn smooth_cubic_has_gap_two() {
    let f = HypersurfacePoly::new(apolar_core::Poly::parse("x^3+y^3+z^3").unwrap(), "Fermat cubic").unwrap();
    let r = multiplicity_gap(&f, &ProjPoint::from_i64(&[1, -1, 0]), 8, 0).unwrap();
    assert_eq!((r.degree, r.multiplicity, r.gap), (3, 1, 2));
    let w = r.multidrop.expect("a line meeting the cubic twice more");
    assert!(w.further_points >= 2);
}

#[test]
fn gap_reports_replay() {
    let f = rnc_secant_determinant(2).unwrap();
    let z = ProjPoint::from_i64(&[1, 1, 1, 1, 1]);
    let a = multiplicity_gap(&f, &z, 8, 42).unwrap();
    let b = multiplicity_gap(&f, &z, 8, 42).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let short = multiplicity_gap(&f, &z, 3, 42).unwrap();
    assert_eq!(short.trials[..], a.trials[..3]);
    assert!(a.estimates.windows(2).all(|w| w[1] <= w[0]));
    assert!(multiplicity_gap(&f, &ProjPoint::from_i64(&[1, 1, 0, 0, 1]), 8, 0).is_err());
}

#[test]
fn projecting_the_quartic_normal_curve() {
    let c4 = RationalCurve::rational_normal(4);
    let w = ProjPoint::from_i64(&[0, 0, 1, 0, 0]);
    let p = project_curve(&c4, &w, None).unwrap();
    assert_eq!(p.curve, quartic());
    assert!(p.nondegenerate);

    // a point in the span of three curve points
    let ys: Vec<ProjPoint> = [q(0), q(1), q(-1)].map(|t| c4.eval(&Param::Finite(t)).point).to_vec();
    let w: Vec<Q> =
        (0..5).map(|i| ys[0].coords()[i].clone() + q(2) * &ys[1].coords()[i] - &ys[2].coords()[i]).collect();
    let w = ProjPoint::new(w).unwrap();
    let p = project_curve(&c4, &w, Some(&ys)).unwrap();
    assert_eq!(p.span.unwrap().rank, 2);
    assert_eq!(p.curve.degree(), 4);

    let on = c4.eval(&Param::Finite(qf(2, 3))).point;
    assert!(project_curve(&c4, &on, None).is_err());
    assert!(project_curve(&c4, &ProjPoint::from_i64(&[0, 0, 0, 0, 1]), None).is_err());
}

proptest! {
    #[test]
    fn hankel_vanishes_on_the_curve(n in -50i64..=50, d in 1i64..=50, k in 1usize..=3) {
        let f = rnc_secant_determinant(k).unwrap();
        let z = RationalCurve::rational_normal(2 * k).eval(&Param::Finite(qf(n, d))).point;
        prop_assert!(f.poly().eval(z.coords()).is_zero());
    }

    #[test]
    fn projection_keeps_the_degree(w in proptest::collection::vec(-9i64..=9, 5)) {
        let c4 = RationalCurve::rational_normal(4);
        let Ok(wp) = ProjPoint::new(w.iter().map(|&x| q(x)).collect()) else { return Ok(()) };
        if let Ok(p) = project_curve(&c4, &wp, None) {
            prop_assert_eq!(p.curve.degree(), 4);
            prop_assert!(p.nondegenerate);
        } else {
            prop_assert!(c4.contains(&wp).unwrap());
        }
    }

    #[test]
    fn more_trials_never_raise_the_estimate(seed in 0u64..1000) {
        let f = rnc_secant_determinant(2).unwrap();
        let z = ProjPoint::from_i64(&[1, 0, 0, 0, 0]);
        let a = multiplicity_gap(&f, &z, 2, seed).unwrap();
        let b = multiplicity_gap(&f, &z, 6, seed).unwrap();
        prop_assert!(b.multiplicity <= a.multiplicity);
    }
}
