use fractalcube::topology::{components, opposite_faces_congruent, Adjacency};
use fractalcube::{BinaryWord, CubeSymmetry, FractalCube, VoxelSet};
use num_bigint::BigUint;
use proptest::prelude::*;

fn words_up_to(k: usize) -> impl Iterator<Item = BinaryWord> {
    (1..=k).flat_map(BinaryWord::all_of_length)
}

#[test]
fn counts_follow_the_product_formula() {
    let cube = FractalCube::cross_frame();
    for w in words_up_to(3) {
        let v = cube.iterate(&w).unwrap();
        let m = w.zeros() as u32;
        let k = w.len() as u32;
        let expect = BigUint::from(13u32).pow(m) * BigUint::from(44u32).pow(k - m);
        assert_eq!(BigUint::from(v.len()), expect, "{w}");
    }
}

#[test]
fn iterates_are_connected_with_congruent_faces() {
    let cube = FractalCube::cross_frame();
    for w in words_up_to(3) {
        let v = cube.iterate(&w).unwrap();
        assert_eq!(components(&v, Adjacency::Plain).component_count(), 1, "{w}");
        assert!(opposite_faces_congruent(&v), "{w}");
    }
}

#[test]
fn refining_a_word_shrinks_its_iterate() {
    let cube = FractalCube::cross_frame();
    for w in words_up_to(3) {
        let parent = cube.iterate(&w).unwrap();
        for l in 0..2 {
            let child = cube.iterate(&w.append(l).unwrap()).unwrap();
            assert!(child.coarsen().unwrap().is_subset(&parent), "{w}{l}");
        }
    }
}

#[test]
fn distinct_words_give_disjoint_iterates() {
    let cube = FractalCube::cross_frame();
    for k in 1..=3 {
        let sets: Vec<VoxelSet> = BinaryWord::all_of_length(k)
            .iter()
            .map(|w| cube.iterate(w).unwrap())
            .collect();
        let total: usize = sets.iter().map(VoxelSet::len).sum();
        let union = sets
            .iter()
            .skip(1)
            .fold(sets[0].clone(), |acc, s| acc.union(s).unwrap());
        assert_eq!(union.len(), total);
        assert_eq!(union, cube.full_iterate(k as u32).unwrap());
    }
}

#[test]
fn iterates_are_invariant_under_cube_symmetries() {
    let cube = FractalCube::cross_frame();
    for w in words_up_to(2) {
        let v = cube.iterate(&w).unwrap();
        for sym in CubeSymmetry::all() {
            assert_eq!(v.transformed(&sym), v, "{w} under {sym:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_words_of_length_three_are_symmetric(letters in proptest::collection::vec(0u8..2, 3), idx in 0usize..48) {
        let cube = FractalCube::cross_frame();
        let v = cube.iterate(&BinaryWord::new(letters).unwrap()).unwrap();
        let sym = CubeSymmetry::all()[idx];
        prop_assert_eq!(v.transformed(&sym), v);
    }

    #[test]
    fn prefix_cells_contain_the_longer_iterate(letters in proptest::collection::vec(0u8..2, 1..4)) {
        let cube = FractalCube::cross_frame();
        let w = BinaryWord::new(letters).unwrap();
        let v = cube.iterate(&w).unwrap();
        let p = cube.iterate(&w.prefix(w.len() - 1)).unwrap();
        prop_assert!(v.coarsen().unwrap().is_subset(&p));
    }
}
