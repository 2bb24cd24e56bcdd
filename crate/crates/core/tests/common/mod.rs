#![allow(dead_code)]

use witt_core::builtins::euclidean3;
use witt_core::finite_field::{ff_make, FiniteField};
use witt_core::hyperfield::{quadratic_hyperfield, FiniteHyperfield};
use witt_core::oracle::field_of_size;

pub fn gf(q: usize) -> FiniteField {
    field_of_size(q).unwrap()
}

pub fn gf_pn(p: u32, n: u32) -> FiniteField {
    ff_make(p, n, None).unwrap()
}

pub fn qhf(q: usize) -> FiniteHyperfield {
    quadratic_hyperfield(&gf(q))
}

/// Pre-quadratic hyperfields exercised by the form-theory suites.
pub fn quadratic_fleet() -> Vec<(String, FiniteHyperfield)> {
    let mut v = vec![("euclidean3".to_string(), euclidean3())];
    for q in [2, 3, 5] {
        v.push((format!("Q(GF({q}))"), qhf(q)));
    }
    v
}

/// Every tuple of length `len` over `elems`.
pub fn tuples(elems: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| elems.iter().map(move |&e| [t.clone(), vec![e]].concat()))
            .collect();
    }
    out
}
