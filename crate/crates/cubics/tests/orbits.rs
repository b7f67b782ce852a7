use apolar_core::rational::random_nonzero_q;
use apolar_core::Q;
use apolar_cubics::{cat1_rank, classify, koszul_rank, random_gl3, CubicTag, TernaryCubic};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn classes_are_orbit_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for tag in CubicTag::ALL {
        let f = TernaryCubic::parse(tag.normal_form()).unwrap();
        for _ in 0..20 {
            let g = f.change_vars(&random_gl3(&mut rng, 4)).unwrap();
            let c = classify(&g).unwrap();
            assert_eq!(c.tag, tag, "{g}");
            assert_eq!((c.rank, c.border_rank), tag.ranks());
        }
    }
}

#[test]
fn koszul_detects_border_rank_four() {
    for tag in CubicTag::ALL {
        let f = TernaryCubic::parse(tag.normal_form()).unwrap();
        if cat1_rank(&f) < 3 {
            continue;
        }
        let k = koszul_rank(&f);
        assert_eq!(k == 8, tag.ranks().1 == 4, "{tag}: koszul rank {k}");
        assert!(k <= 8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cubes_have_koszul_rank_two(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9) {
        prop_assume!(a != 0 || b != 0 || c != 0);
        let l: Vec<Q> = [a, b, c].iter().map(|&x| Q::from_integer(x.into())).collect();
        prop_assert_eq!(koszul_rank(&TernaryCubic::cube(&l)), 2);
    }

    #[test]
    fn flattening_ranks_are_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = TernaryCubic::random(&mut rng, 7);
        let m = random_gl3(&mut rng, 3);
        let g = f.change_vars(&m).unwrap();
        prop_assert_eq!(cat1_rank(&f), cat1_rank(&g));
        prop_assert_eq!(koszul_rank(&f), koszul_rank(&g));
    }

    #[test]
    fn random_cubics_are_generic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<Q> = (0..10).map(|_| random_nonzero_q(&mut rng, 50)).collect();
        let f = TernaryCubic::new(coeffs).unwrap();
        prop_assert_eq!(classify(&f).unwrap().tag, CubicTag::Generic);
    }
}
