mod common;

use proptest::prelude::*;

use common::{gf, qhf};
use witt_core::bitset::ElemSet;
use witt_core::builtins::euclidean3;
use witt_core::hyperfield::{
    check_hyperfield, field_square_quotient, from_field, prime_hyperfield, quotient_by_subgroup, FiniteHyperfield,
};

fn small_fleet() -> Vec<(String, FiniteHyperfield)> {
    let mut v = vec![("euclidean3".to_string(), euclidean3())];
    for q in [2, 3, 4, 5, 7, 8, 9] {
        v.push((format!("GF({q})"), from_field(&gf(q)).unwrap()));
        v.push((format!("Q(GF({q}))"), qhf(q)));
    }
    v
}

/// Nonempty subsets of the nonzero elements closed under products; in a
/// finite group these are exactly the subgroups.
fn subgroups(f: &FiniteHyperfield) -> Vec<Vec<usize>> {
    let nz: Vec<usize> = f.nonzero().collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << nz.len()) {
        let t: Vec<usize> = (0..nz.len()).filter(|i| mask >> i & 1 == 1).map(|i| nz[i]).collect();
        if t.iter().all(|&a| t.iter().all(|&b| t.contains(&f.mul(a, b)))) {
            out.push(t);
        }
    }
    out
}

#[test]
fn prime_addition_contains_the_summand() {
    for (name, f) in small_fleet() {
        let p = prime_hyperfield(&f).unwrap();
        for a in p.nonzero() {
            for b in 0..p.len() {
                assert!(p.add(a, b).contains(a), "{name}: {} not in {} +' {}", p.name(a), p.name(a), p.name(b));
            }
        }
    }
}

#[test]
fn every_subgroup_quotient_is_a_hyperfield() {
    let mut count = 0;
    for (name, f) in small_fleet() {
        for t in subgroups(&f) {
            let g = quotient_by_subgroup(&f, &t).unwrap();
            let r = check_hyperfield(&g);
            assert!(r.passed(), "{name} / {t:?}: {:?}", r.failures);
            count += 1;
        }
    }
    assert!(count > 30);
}

#[test]
fn negation_and_zero() {
    for (name, f) in small_fleet() {
        for a in 0..f.len() {
            assert_eq!(f.neg(f.neg(a)), a, "{name}");
            assert_eq!(f.add(a, f.zero()), ElemSet::singleton(a), "{name}");
        }
    }
}

/// First triple where the square quotient and its prime addition differ.
fn first_difference(q: usize) -> Option<(usize, usize, usize)> {
    let before = field_square_quotient(&gf(q));
    let after = qhf(q);
    for y in 0..before.len() {
        for z in 0..before.len() {
            let (s, t) = (before.add(y, z), after.add(y, z));
            if s != t {
                let x = (0..before.len()).find(|&x| s.contains(x) != t.contains(x)).unwrap();
                return Some((x, y, z));
            }
        }
    }
    None
}

#[test]
fn prime_step_is_redundant_beyond_five() {
    for q in [7, 9, 11, 13, 17, 19, 23, 25, 27] {
        assert_eq!(first_difference(q), None, "q = {q}");
    }
    for q in [4, 8, 16] {
        assert_eq!(first_difference(q), None, "q = {q}");
    }
}

#[test]
fn prime_step_matters_for_two_three_and_five() {
    for q in [2, 3, 5] {
        let (x, y, z) = first_difference(q).unwrap_or_else(|| panic!("q = {q} should need the prime step"));
        let before = field_square_quotient(&gf(q));
        let after = qhf(q);
        assert!(after.add(y, z).contains(x) && !before.add(y, z).contains(x), "q = {q}: witness ({x}, {y}, {z})");
    }
}

#[test]
fn quadratic_fleet_passes() {
    for q in [2, 3, 4, 5, 7, 9, 13] {
        let f = qhf(q);
        assert!(check_hyperfield(&f).passed(), "Q(GF({q}))");
        assert!(check_hyperfield(&prime_hyperfield(&f).unwrap()).passed());
    }
}

proptest! {
    #[test]
    fn passing_mutations_stay_associative(q in prop::sample::select(vec![3usize, 5, 7]), a in 1usize..3, b in 1usize..3, bits in 1u8..7) {
        let f = qhf(q);
        let set: ElemSet = (0..3).filter(|i| bits >> i & 1 == 1).collect();
        let g = f.with_sum(a, b, set);
        let r = check_hyperfield(&g);
        if set != f.add(a, b) && r.passed() {
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        let left: ElemSet = g.add_sets(g.add(x, y), ElemSet::singleton(z));
                        let right: ElemSet = g.add_sets(ElemSet::singleton(x), g.add(y, z));
                        prop_assert_eq!(left, right);
                    }
                }
            }
        }
    }
}
