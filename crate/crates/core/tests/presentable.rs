mod common;

use proptest::prelude::*;

use common::{gf, qhf};
use witt_core::builtins::{euclidean3, example_sq_7};
use witt_core::format::{parse_presentable, write_presentable};
use witt_core::hyperfield::{from_field, hyperfield_isomorphic, prime_hyperfield, quadratic_hyperfield, FiniteHyperfield};
use witt_core::presentable::{
    check_presentable, powerset_of_hyperfield, squares_pipeline, supercompact_hyperfield, ExplicitPresentableRing,
    PresentableLevel, SquaresMode,
};
use witt_core::quadratic::check_prequadratic;

fn bases() -> Vec<FiniteHyperfield> {
    let mut v = vec![euclidean3()];
    for q in [2, 3, 4, 5, 7] {
        v.push(from_field(&gf(q)).unwrap());
        v.push(qhf(q));
    }
    v
}

fn mask_of(r: &ExplicitPresentableRing, x: usize) -> u32 {
    r.poset().subset_mask(x).unwrap()
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Elementwise sum of two subsets, straight from the hyperfield.
fn set_sum(f: &FiniteHyperfield, a: u32, b: u32) -> u32 {
    let mut out = 0;
    for x in members(a) {
        for y in members(b) {
            out |= f.add(x, y).bits() as u32;
        }
    }
    out
}

fn set_product(f: &FiniteHyperfield, a: u32, b: u32) -> u32 {
    let mut out = 0;
    for x in members(a) {
        for y in members(b) {
            out |= 1 << f.mul(x, y);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn operations_preserve_suprema(base in 0usize..11, picks in prop::collection::vec(any::<u16>(), 1..5), other in any::<u16>()) {
        let f = &bases()[base];
        let r = powerset_of_hyperfield(f).unwrap();
        let n = r.len();
        let family: Vec<usize> = picks.iter().map(|&p| p as usize % n).collect();
        let x = other as usize % n;
        let sup = r.poset().supremum(&family).unwrap().unwrap();
        let union = family.iter().fold(0, |acc, &s| acc | mask_of(&r, s));
        prop_assert_eq!(mask_of(&r, sup), union);

        let sums: Vec<usize> = family.iter().map(|&s| r.add(s, x)).collect();
        let sum_sup = r.poset().supremum(&sums).unwrap().unwrap();
        prop_assert_eq!(r.add(sup, x), sum_sup);
        prop_assert_eq!(mask_of(&r, sum_sup), set_sum(f, union, mask_of(&r, x)));

        let prods: Vec<usize> = family.iter().map(|&s| r.mul(s, x)).collect();
        let prod_sup = r.poset().supremum(&prods).unwrap().unwrap();
        prop_assert_eq!(r.mul(sup, x), prod_sup);
        prop_assert_eq!(mask_of(&r, prod_sup), set_product(f, union, mask_of(&r, x)));

        let negs: Vec<usize> = family.iter().map(|&s| r.neg(s)).collect();
        prop_assert_eq!(r.neg(sup), r.poset().supremum(&negs).unwrap().unwrap());
    }
}

#[test]
fn powersets_are_presentable_fields() {
    for f in bases() {
        let r = powerset_of_hyperfield(&f).unwrap();
        let rep = check_presentable(&r).unwrap();
        assert_eq!(rep.level_passed, PresentableLevel::Field, "{:?}", rep.failures);
    }
}

#[test]
fn supercompacts_recover_the_base() {
    for f in bases().into_iter().filter(|f| f.len() <= 6) {
        let r = powerset_of_hyperfield(&f).unwrap();
        let g = supercompact_hyperfield(&r).unwrap();
        assert!(hyperfield_isomorphic(&f, &g).unwrap().is_some());
    }
}

#[test]
fn presentable_documents_round_trip() {
    let mut rings = vec![example_sq_7()];
    rings.extend(bases().iter().filter(|f| f.len() <= 4).map(|f| powerset_of_hyperfield(f).unwrap()));
    for r in rings {
        let text = write_presentable(&r);
        let back = parse_presentable(&text).unwrap();
        assert_eq!(write_presentable(&back), text);
        assert_eq!(back.add_table(), r.add_table());
        assert_eq!(back.mul_table(), r.mul_table());
        assert_eq!(back.one(), r.one());
    }
}

#[test]
fn pipeline_is_prequadratic_and_matches_the_square_classes() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
        let k = gf(q);
        let p = prime_hyperfield(&from_field(&k).unwrap()).unwrap();
        let s = squares_pipeline(&p, SquaresMode::Supercompact).unwrap();
        assert!(check_prequadratic(&s).passed(), "q = {q}");
        assert!(hyperfield_isomorphic(&s, &quadratic_hyperfield(&k)).unwrap().is_some(), "q = {q}");
    }
}

#[test]
fn pipeline_through_the_powerset() {
    for q in [2, 3, 4, 5, 7, 9] {
        let k = gf(q);
        let r = powerset_of_hyperfield(&from_field(&k).unwrap()).unwrap();
        let sc = supercompact_hyperfield(&r).unwrap();
        let s = squares_pipeline(&prime_hyperfield(&sc).unwrap(), SquaresMode::Supercompact).unwrap();
        assert!(hyperfield_isomorphic(&s, &quadratic_hyperfield(&k)).unwrap().is_some(), "q = {q}");
    }
}

#[test]
fn literal_squares_collapse_to_two_points() {
    for q in [3, 5, 7] {
        let p = prime_hyperfield(&from_field(&gf(q)).unwrap()).unwrap();
        let s = squares_pipeline(&p, SquaresMode::Literal).unwrap();
        assert_eq!(s.len(), 2, "q = {q}");
    }
}

#[test]
fn pipeline_needs_the_prime_step() {
    let f = from_field(&gf(5)).unwrap();
    assert!(squares_pipeline(&f, SquaresMode::Supercompact).unwrap_err().is_mathematical());
}

#[test]
fn broken_sum_is_caught() {
    let r = powerset_of_hyperfield(&qhf(3)).unwrap();
    let (a, b) = (r.one(), r.one());
    let wrong = (0..r.len()).find(|&c| c != r.add(a, b)).unwrap();
    let rep = check_presentable(&r.with_sum(a, b, wrong)).unwrap();
    assert!(!rep.passed());
    assert!(rep.level_passed < PresentableLevel::Field);
}
