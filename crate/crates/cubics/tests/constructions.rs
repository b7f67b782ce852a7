use apolar_core::decomp::{Attestation, Factor};
use apolar_core::matrix::kron_vec;
use apolar_cubics::{classify, random_gl3, submult_square_cubic, CubicTag, TernaryCubic};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cubic(s: &str) -> TernaryCubic {
    TernaryCubic::parse(s).unwrap()
}

/// Every cubic leaf is re-ranked by the classifier and every nested block
/// is checked on its own.
fn assert_honest(d: &apolar_core::decomp::StructuredDecomposition) {
    d.check().unwrap();
    for leaf in d.leaves() {
        if leaf.attestation == Attestation::TernaryCubic {
            let c = classify(&TernaryCubic::new(leaf.coords.clone()).unwrap()).unwrap();
            assert!(c.rank <= leaf.rank, "{} has rank {}", leaf.label, c.rank);
        }
    }
}

#[test]
fn cusp_fifteen() {
    let f = cubic("x^3+y^2*z");
    let d = submult_square_cubic(&f).unwrap();
    assert_eq!(d.term_count, 15);
    assert_eq!(d.expand(), kron_vec(f.coeffs(), f.coeffs()));
    assert!(d.residual().iter().all(Zero::is_zero));
    let blocks: Vec<usize> = d.summands.iter().map(|s| s.count()).collect();
    assert_eq!(blocks, vec![1, 3, 3, 8]);
    assert_honest(&d);
}

#[test]
fn conic_and_tangent_twenty_four() {
    let f = cubic("z*(x^2+y*z)");
    let d = submult_square_cubic(&f).unwrap();
    assert_eq!(d.term_count, 24);
    assert_eq!(d.expand(), kron_vec(f.coeffs(), f.coeffs()));
    assert_honest(&d);
    // the shift uses l = y first
    let Factor::Leaf(l) = &d.summands[1].factors[1] else { panic!("cube leaf") };
    assert_eq!(l.label, "(y)^3");
}

#[test]
fn transformed_orbits() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (s, terms) in [("x^3+y^2*z", 15), ("z*(x^2+y*z)", 24), ("x^2*y", 8)] {
        for _ in 0..4 {
            let f = cubic(s).change_vars(&random_gl3(&mut rng, 3)).unwrap();
            let d = submult_square_cubic(&f).unwrap();
            assert_eq!(d.term_count, terms, "{f}");
            assert_honest(&d);
        }
    }
}

#[test]
fn multiplicative_classes_are_rejected() {
    for tag in CubicTag::ALL {
        let (r, b) = tag.ranks();
        let res = submult_square_cubic(&cubic(tag.normal_form()));
        if r == b {
            assert_eq!(res.unwrap_err().exit_code(), 2, "{tag}");
        } else {
            assert!(res.unwrap().term_count < r * r, "{tag}");
        }
    }
}
