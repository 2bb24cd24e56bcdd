//! Shipped structures given by literal tables.

use crate::bitset::ElemSet;
use crate::hyperfield::FiniteHyperfield;
use crate::poset::FinitePointedPoset;
use crate::presentable::ExplicitPresentableRing;

pub const BUILTIN_NAMES: &[&str] = &["euclidean3", "walking-supremum", "example-sq-7"];

/// The quadratic hyperfield of a Euclidean field: `{0, 1, -1}` with
/// `1 + 1 = 1`, `-1 + -1 = -1` and `1 + -1` the whole carrier.
pub fn euclidean3() -> FiniteHyperfield {
    let names = vec!["0".to_string(), "1".to_string(), "-1".to_string()];
    let all: ElemSet = [0, 1, 2].into_iter().collect();
    let s = ElemSet::singleton;
    #[rustfmt::skip]
    let add = vec![
        s(0), s(1), s(2),
        s(1), s(1), all,
        s(2), all,  s(2),
    ];
    #[rustfmt::skip]
    let mul = vec![
        0, 0, 0,
        0, 1, 2,
        0, 2, 1,
    ];
    FiniteHyperfield::new(names, 0, 1, vec![0, 2, 1], mul, add).expect("literal table is well formed")
}

pub const EXAMPLE_SQ_NAMES: [&str; 7] = ["θ", "I", "κ", "α1", "α2", "α3", "β"];

/// Addition table of the 7-element presentable field, rows and columns in
/// the order θ, I, κ, α1, α2, α3, β.
#[rustfmt::skip]
pub const EXAMPLE_SQ_ADD: [[usize; 7]; 7] = [
    [0, 1, 2, 3, 4, 5, 6],
    [1, 1, 6, 1, 6, 6, 6],
    [2, 6, 2, 6, 2, 6, 6],
    [3, 1, 6, 3, 6, 6, 6],
    [4, 6, 2, 6, 4, 6, 6],
    [5, 6, 6, 6, 6, 6, 6],
    [6, 6, 6, 6, 6, 6, 6],
];

#[rustfmt::skip]
pub const EXAMPLE_SQ_MUL: [[usize; 7]; 7] = [
    [0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 6],
    [0, 2, 1, 4, 3, 5, 6],
    [0, 3, 4, 3, 4, 6, 6],
    [0, 4, 3, 4, 3, 6, 6],
    [0, 5, 5, 6, 6, 5, 6],
    [0, 6, 6, 6, 6, 6, 6],
];

/// Covering pairs generating the order: singletons below the pairs that
/// contain them, and every pair below β.
pub const EXAMPLE_SQ_COVERS: [(usize, usize); 9] = [(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)];

/// Inversion of the 7-element field: swaps I with κ and α1 with α2.
pub const EXAMPLE_SQ_NEG: [usize; 7] = [0, 2, 1, 4, 3, 5, 6];

pub fn example_sq_7() -> ExplicitPresentableRing {
    let names = EXAMPLE_SQ_NAMES.iter().map(|s| s.to_string()).collect();
    let poset = FinitePointedPoset::from_covers(names, &EXAMPLE_SQ_COVERS, 0).expect("covers generate a poset");
    let add = EXAMPLE_SQ_ADD.iter().flatten().copied().collect();
    let mul = EXAMPLE_SQ_MUL.iter().flatten().copied().collect();
    ExplicitPresentableRing::new(poset, add, EXAMPLE_SQ_NEG.to_vec(), mul, 1, true).expect("literal tables are well formed")
}

pub fn walking_supremum() -> FinitePointedPoset {
    FinitePointedPoset::walking_supremum()
}

/// The ring `Z/n` with singleton sums, as a hyperstructure.
pub fn integers_mod(n: usize) -> FiniteHyperfield {
    assert!((2..=crate::bitset::ELEMSET_CAPACITY).contains(&n));
    let names = (0..n).map(|a| a.to_string()).collect();
    let neg = (0..n).map(|a| (n - a) % n).collect();
    let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
    FiniteHyperfield::from_fn(names, 0, 1, neg, mul, |a, b| ElemSet::singleton((a + b) % n))
}
