mod common;

use proptest::prelude::*;

use common::{gf, qhf, quadratic_fleet, tuples};
use witt_core::finite_field::FiniteField;
use witt_core::hyperfield::FiniteHyperfield;
use witt_core::oracle::classical_isometric;
use witt_core::quadratic::{
    check_quadratic, isometric, orthogonal_sum, tensor_product, witt_equivalent, witt_ring, BinaryIsometry, Form,
    HyperfieldIsometry, IsometryEngine, Normalization, WittContext,
};

fn forms_up_to(f: &FiniteHyperfield, dmax: usize) -> Vec<Vec<usize>> {
    let elems: Vec<usize> = f.nonzero().collect();
    (1..=dmax).flat_map(|d| tuples(&elems, d)).collect()
}

fn product(f: &FiniteHyperfield, phi: &[usize]) -> usize {
    phi.iter().fold(f.one(), |acc, &a| f.mul(acc, a))
}

fn mk(f: &FiniteHyperfield, v: &[usize]) -> Form {
    Form::new(f, v.to_vec()).unwrap()
}

/// Field representative of a square class of `Q(k)`.
fn rep(k: &FiniteField, f: &FiniteHyperfield, x: usize) -> usize {
    k.elements().find(|&e| k.element_name(e) == f.name(x)).unwrap()
}

/// Classical Witt invariants over a finite field of odd order: dimension
/// parity and signed discriminant modulo squares.
fn classical_witt_invariant(k: &FiniteField, v: &[usize]) -> (usize, bool) {
    let n = v.len();
    let mut d = v.iter().fold(k.one(), |acc, &a| k.mul(acc, a));
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        d = k.neg(d);
    }
    (n % 2, k.nonzero_squares().contains(&d))
}

#[test]
fn isometric_forms_have_equal_products() {
    for (name, f) in quadratic_fleet() {
        let rule = HyperfieldIsometry::new(&f);
        let mut engine = IsometryEngine::new(&rule, Normalization::Exact);
        let forms = forms_up_to(&f, 4);
        for a in &forms {
            for b in forms.iter().filter(|b| b.len() == a.len()) {
                engine.isometric(a, b);
            }
        }
        let mut checked = 0;
        for (a, b, iso) in engine.memo_entries() {
            if iso {
                assert_eq!(product(&f, a), product(&f, b), "{name}: {a:?} {b:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn isometry_ignores_entry_order() {
    for (name, f) in quadratic_fleet() {
        let rule = HyperfieldIsometry::new(&f);
        let mut engine = IsometryEngine::new(&rule, Normalization::Exact);
        let forms = forms_up_to(&f, 4);
        for a in &forms {
            let mut rotated = a.clone();
            rotated.rotate_left(1);
            let mut swapped = a.clone();
            swapped.swap(0, a.len() - 1);
            for b in forms.iter().filter(|b| b.len() == a.len()) {
                let base = engine.isometric(a, b);
                assert_eq!(engine.isometric(&rotated, b), base, "{name}: {a:?} {b:?}");
                assert_eq!(engine.isometric(&swapped, b), base, "{name}: {a:?} {b:?}");
            }
        }
    }
}

#[test]
fn fleet_is_quadratic_up_to_four() {
    for (name, f) in quadratic_fleet() {
        let c = check_quadratic(&f, 4).unwrap();
        assert!(c.report.passed(), "{name}: {:?}", c.report.failures);
        assert!(c.low_dims_hold());
    }
}

#[test]
fn sums_and_products_respect_isometry() {
    for (name, f) in quadratic_fleet().into_iter().filter(|(_, f)| f.len() > 2) {
        let rule = HyperfieldIsometry::new(&f);
        let mut engine = IsometryEngine::new(&rule, Normalization::Exact);
        let left = forms_up_to(&f, 3);
        let right = forms_up_to(&f, 2);
        for a in &left {
            for a2 in left.iter().filter(|x| x.len() == a.len()) {
                if !engine.isometric(a, a2) {
                    continue;
                }
                for b in &right {
                    for b2 in right.iter().filter(|x| x.len() == b.len()) {
                        if !engine.isometric(b, b2) {
                            continue;
                        }
                        let (s, s2) = (orthogonal_sum(&mk(&f, a), &mk(&f, b)), orthogonal_sum(&mk(&f, a2), &mk(&f, b2)));
                        assert!(engine.isometric(s.entries(), s2.entries()), "{name}: {a:?}+{b:?} vs {a2:?}+{b2:?}");
                        let (t, t2) = (tensor_product(&f, &mk(&f, a), &mk(&f, b)), tensor_product(&f, &mk(&f, a2), &mk(&f, b2)));
                        assert!(engine.isometric(t.entries(), t2.entries()), "{name}: {a:?}x{b:?} vs {a2:?}x{b2:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn witt_cancellation_in_low_dimensions() {
    for (name, f) in quadratic_fleet() {
        let rule = HyperfieldIsometry::new(&f);
        let mut engine = IsometryEngine::new(&rule, Normalization::Exact);
        let forms = forms_up_to(&f, 2);
        for a in &forms {
            for b in forms.iter().filter(|b| b.len() == a.len()) {
                for c in &forms {
                    let (ac, bc) = ([a.as_slice(), c].concat(), [b.as_slice(), c].concat());
                    if engine.isometric(&ac, &bc) {
                        assert!(engine.isometric(a, b), "{name}: {a:?} {b:?} cancel {c:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn witt_equivalence_is_a_congruence() {
    for (name, f) in quadratic_fleet() {
        let mut ctx = WittContext::new(&f).unwrap();
        let forms = forms_up_to(&f, 3);
        let n = forms.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = ctx.witt_equivalent(&forms[i], &forms[j]).unwrap();
            }
        }
        for i in 0..n {
            assert!(rel[i * n + i]);
            for j in 0..n {
                assert_eq!(rel[i * n + j], rel[j * n + i], "{name}");
                for k in 0..n {
                    if rel[i * n + j] && rel[j * n + k] {
                        assert!(rel[i * n + k], "{name}: {:?} {:?} {:?}", forms[i], forms[j], forms[k]);
                    }
                }
            }
        }
        let small = forms_up_to(&f, 1);
        for i in 0..n {
            for j in (0..n).filter(|&j| rel[i * n + j]) {
                for c in &small {
                    let (a, b) = (&forms[i], &forms[j]);
                    assert!(ctx.witt_equivalent(&[a.as_slice(), c].concat(), &[b.as_slice(), c].concat()).unwrap(), "{name}");
                    let (ta, tb) = (tensor_product(&f, &mk(&f, a), &mk(&f, c)), tensor_product(&f, &mk(&f, b), &mk(&f, c)));
                    assert!(ctx.witt_equivalent(ta.entries(), tb.entries()).unwrap(), "{name}");
                }
            }
        }
    }
}

#[test]
fn witt_ring_units() {
    for q in [2, 3, 5, 7] {
        let f = qhf(q);
        let w = witt_ring(&f, 4).unwrap();
        assert!(w.is_finite(), "q = {q}");
        for a in 0..w.len() {
            assert_eq!(w.add(w.zero, a), Some(a));
            assert_eq!(w.mul(w.one, a), Some(a));
        }
        for x in f.nonzero() {
            let c = w
                .classes
                .iter()
                .position(|c| c.representative == [f.name(x).to_string()])
                .unwrap_or_else(|| panic!("q = {q}: <{}> has no class", f.name(x)));
            assert_eq!(w.mul(c, c), Some(w.one), "q = {q}");
        }
    }
}

#[test]
fn witt_equivalence_matches_classical_invariants() {
    for q in [3, 5, 7, 9] {
        let (k, f) = (gf(q), qhf(q));
        let mut ctx = WittContext::new(&f).unwrap();
        let forms = forms_up_to(&f, 4);
        for a in &forms {
            let ra: Vec<usize> = a.iter().map(|&x| rep(&k, &f, x)).collect();
            for b in &forms {
                let rb: Vec<usize> = b.iter().map(|&x| rep(&k, &f, x)).collect();
                let expected = classical_witt_invariant(&k, &ra) == classical_witt_invariant(&k, &rb);
                assert_eq!(ctx.witt_equivalent(a, b).unwrap(), expected, "q = {q}: {ra:?} {rb:?}");
            }
        }
    }
}

#[test]
fn free_functions_agree_with_the_context() {
    let f = qhf(5);
    let h = mk(&f, &[f.one(), f.minus_one()]);
    let z = mk(&f, &[f.one(), f.one()]);
    assert!(witt_equivalent(&f, &h, &orthogonal_sum(&h, &h)).unwrap());
    assert!(isometric(&f, &h, &h).unwrap());
    assert!(isometric(&f, &h, &mk(&f, &[f.one()])).is_err());
    let mut ctx = WittContext::new(&f).unwrap();
    assert_eq!(ctx.witt_equivalent(z.entries(), h.entries()).unwrap(), witt_equivalent(&f, &z, &h).unwrap());
}

proptest! {
    #[test]
    fn isometry_matches_discriminants(q in prop::sample::select(vec![3usize, 5, 7, 9, 11, 13, 25]), raw in prop::collection::vec((any::<bool>(), any::<bool>()), 1..5)) {
        let (k, f) = (gf(q), qhf(q));
        let nz: Vec<usize> = f.nonzero().collect();
        let a: Vec<usize> = raw.iter().map(|&(x, _)| nz[x as usize]).collect();
        let b: Vec<usize> = raw.iter().map(|&(_, y)| nz[y as usize]).collect();
        let ra: Vec<usize> = a.iter().map(|&x| rep(&k, &f, x)).collect();
        let rb: Vec<usize> = b.iter().map(|&x| rep(&k, &f, x)).collect();
        prop_assert_eq!(isometric(&f, &mk(&f, &a), &mk(&f, &b)).unwrap(), classical_isometric(&k, &ra, &rb).unwrap());
    }

    #[test]
    fn sorted_and_exact_engines_agree(q in prop::sample::select(vec![3usize, 5, 7]), raw in prop::collection::vec((any::<bool>(), any::<bool>()), 1..5)) {
        let f = qhf(q);
        let nz: Vec<usize> = f.nonzero().collect();
        let a: Vec<usize> = raw.iter().map(|&(x, _)| nz[x as usize]).collect();
        let b: Vec<usize> = raw.iter().map(|&(_, y)| nz[y as usize]).collect();
        let rule = HyperfieldIsometry::new(&f);
        prop_assert_eq!(rule.elements().len(), 2);
        let mut exact = IsometryEngine::new(&rule, Normalization::Exact);
        let mut sorted = IsometryEngine::new(&rule, Normalization::Sorted);
        prop_assert_eq!(exact.isometric(&a, &b), sorted.isometric(&a, &b));
    }
}
