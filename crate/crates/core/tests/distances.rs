use fractalcube::hyperspace::common_prefix;
use fractalcube::metric::{hausdorff_distance, min_distance, verify_sandwich, word_distance};
use fractalcube::{BinaryWord, FractalCube};
use proptest::prelude::*;

#[test]
fn sandwich_holds_for_all_pairs_up_to_length_two() {
    let cube = FractalCube::cross_frame();
    for k in 1..=2 {
        let words = BinaryWord::all_of_length(k);
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let r = verify_sandwich(&cube, a, b, 1e-4).unwrap();
                assert!(r.passed(), "{a} {b}: {r:?}");
                assert_eq!(r.s, common_prefix(a, b));
                assert!(r.distance.width() <= 1e-4 * (1.0 + 1e-6));
            }
        }
    }
}

#[test]
fn distances_are_symmetric() {
    let cube = FractalCube::cross_frame();
    let (a, b): (BinaryWord, BinaryWord) = ("011".parse().unwrap(), "010".parse().unwrap());
    let ab = word_distance(&cube, &a, &b, 1e-5).unwrap();
    let ba = word_distance(&cube, &b, &a, 1e-5).unwrap();
    assert_eq!(ab.d_min_exact, ba.d_min_exact);
    assert!(ab.d_hausdorff_lo <= ba.d_hausdorff_hi && ba.d_hausdorff_lo <= ab.d_hausdorff_hi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn prefix_reduction_matches_direct_brackets(a in proptest::collection::vec(0u8..2, 3), b in proptest::collection::vec(0u8..2, 3)) {
        prop_assume!(a != b);
        let cube = FractalCube::cross_frame();
        let (wa, wb) = (BinaryWord::new(a).unwrap(), BinaryWord::new(b).unwrap());
        let (va, vb) = (cube.iterate(&wa).unwrap(), cube.iterate(&wb).unwrap());
        let fast = word_distance(&cube, &wa, &wb, 1e-4).unwrap();
        let direct = hausdorff_distance(&va, &vb, 1e-4).unwrap();
        prop_assert_eq!(fast.d_min_exact, min_distance(&va, &vb).unwrap());
        prop_assert!(fast.d_hausdorff_lo <= direct.d_hausdorff_hi);
        prop_assert!(direct.d_hausdorff_lo <= fast.d_hausdorff_hi);
    }
}
