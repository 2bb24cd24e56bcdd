use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_core::format::{parse_poset, write_poset};
use witt_core::poset::{check_presentable, random_poset, FinitePointedPoset};

#[test]
fn randomized_fleet_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut weakly = 0;
    let mut tried = 0;
    while weakly < 200 {
        tried += 1;
        assert!(tried < 20_000, "too few weakly presentable draws");
        let p = random_poset(&mut rng, 8);
        let r = check_presentable(&p).unwrap();
        if r.weakly_presentable {
            weakly += 1;
            assert_eq!(r.equivalence_agrees, Some(true), "{}", write_poset(&p));
            assert_eq!(r.unique_representation, Some(r.all_minimals_compact));
        }
    }
}

#[test]
fn pierced_powersets_are_unions() {
    for width in 1..=5 {
        let p = FinitePointedPoset::pierced_powerset(width, 0).unwrap();
        let mask = |x: usize| p.subset_mask(x).unwrap();
        let minimals = p.minimals();
        assert!(minimals.iter().all(|&x| mask(x).count_ones() == 1));
        assert_eq!(minimals.len(), width);
        for a in 0..p.len() {
            for b in 0..p.len() {
                let s = p.supremum(&[a, b]).unwrap().unwrap();
                assert_eq!(mask(s), mask(a) | mask(b));
            }
        }
    }
}

proptest! {
    #[test]
    fn singleton_supremum(seed in any::<u64>()) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        for x in 0..p.len() {
            prop_assert_eq!(p.supremum(&[x]).unwrap(), Some(x));
        }
    }

    #[test]
    fn poset_documents_round_trip(seed in any::<u64>()) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        let q = parse_poset(&write_poset(&p)).unwrap();
        prop_assert_eq!(q.relation_pairs(), p.relation_pairs());
        prop_assert_eq!(q.basepoint(), p.basepoint());
        prop_assert_eq!(q.names(), p.names());
    }

    #[test]
    fn compactness_matches_unique_representation(seed in any::<u64>()) {
        let p = random_poset(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        let r = check_presentable(&p).unwrap();
        if r.weakly_presentable {
            prop_assert_eq!(r.equivalence_agrees, Some(true));
        }
    }
}
