use crate::bitset::{ElemSet, ELEMSET_CAPACITY};
use crate::error::{Error, Result};
use crate::finite_field::{square_classes, FiniteField};

use super::{require_hyperfield, FiniteHyperfield};

/// A field viewed as a hyperfield with singleton sums.
pub fn from_field(k: &FiniteField) -> Result<FiniteHyperfield> {
    let q = k.size();
    if q > ELEMSET_CAPACITY {
        return Err(Error::guard(format!("from_field supports fields of size <= {ELEMSET_CAPACITY}, got {q}")));
    }
    let names = k.elements().map(|a| k.element_name(a)).collect();
    let neg = k.elements().map(|a| k.neg(a)).collect();
    let mut mul = Vec::with_capacity(q * q);
    for a in k.elements() {
        for b in k.elements() {
            mul.push(k.mul(a, b));
        }
    }
    Ok(FiniteHyperfield::from_fn(names, k.zero(), k.one(), neg, mul, |a, b| ElemSet::singleton(k.add(a, b))))
}

/// Multiplicative classes `x ~ y <=> xs = yt` for `s, t ∈ T`, ordered by
/// their smallest member. Returns `(class_of, min representative per class)`.
fn cosets(f: &FiniteHyperfield, t: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = f.len();
    let mut class_of = vec![usize::MAX; m];
    let mut reps = Vec::new();
    for x in 0..m {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &s in t {
            class_of[f.mul(x, s)] = id;
        }
        class_of[x] = id;
    }
    (class_of, reps)
}

fn validate_subgroup(f: &FiniteHyperfield, t: &[usize]) -> Result<ElemSet> {
    if t.is_empty() {
        return Err(Error::input("subgroup must be nonempty"));
    }
    let mut set = ElemSet::EMPTY;
    for &s in t {
        if s >= f.len() {
            return Err(Error::input(format!("subgroup element id {s} outside the carrier")));
        }
        if s == f.zero() {
            return Err(Error::precondition("subgroup contains zero"));
        }
        set.insert(s);
    }
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(f.mul(a, b)) {
                return Err(Error::precondition(format!(
                    "subset is not multiplicatively closed: {} * {} = {}",
                    f.name(a),
                    f.name(b),
                    f.name(f.mul(a, b))
                )));
            }
        }
        match f.inverse(a) {
            Some(inv) if set.contains(inv) => {}
            _ => return Err(Error::precondition(format!("inverse of {} is missing from the subset", f.name(a)))),
        }
    }
    Ok(set)
}

/// Quotient hyperfield `F/T`: classes of `x ~ y <=> xs = yt`, with
/// `x̄ ∈ ȳ + z̄` iff `xs ∈ yt + zu` for some `s, t, u ∈ T`.
pub fn quotient_by_subgroup(f: &FiniteHyperfield, t: &[usize]) -> Result<FiniteHyperfield> {
    require_hyperfield(f, "quotient by a subgroup")?;
    let tset = validate_subgroup(f, t)?;
    let t: Vec<usize> = tset.iter().collect();
    let (class_of, reps) = cosets(f, &t);
    let n = reps.len();
    let names = reps.iter().map(|&r| f.name(r).to_string()).collect();
    let neg = reps.iter().map(|&r| class_of[f.neg(r)]).collect();
    let mut mul = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            mul.push(class_of[f.mul(a, b)]);
        }
    }
    let add = |a: usize, b: usize| {
        let (y, z) = (reps[a], reps[b]);
        let mut out = ElemSet::EMPTY;
        for &s in &t {
            for &u in &t {
                out = out.union(f.add(f.mul(y, s), f.mul(z, u)));
            }
        }
        out.map(|x| class_of[x])
    };
    Ok(FiniteHyperfield::from_fn(names, class_of[f.zero()], class_of[f.one()], neg, mul, add))
}

/// Replaces the addition by `+′`: unchanged when an argument is zero,
/// `(a + b) ∪ {a, b}` for `a ≠ −b`, and the whole carrier for `a = −b ≠ 0`.
pub fn prime_hyperfield(f: &FiniteHyperfield) -> Result<FiniteHyperfield> {
    require_hyperfield(f, "prime_hyperfield")?;
    Ok(prime_unchecked(f))
}

fn prime_unchecked(f: &FiniteHyperfield) -> FiniteHyperfield {
    let full = f.carrier();
    FiniteHyperfield::from_fn(
        f.names().to_vec(),
        f.zero(),
        f.one(),
        f.neg_table().to_vec(),
        f.mul_table().to_vec(),
        |a, b| {
            if a == f.zero() || b == f.zero() {
                f.add(a, b)
            } else if a == f.neg(b) {
                full
            } else {
                let mut s = f.add(a, b);
                s.insert(a);
                s.insert(b);
                s
            }
        },
    )
}

/// `k/_m k*²` computed from field arithmetic: `x̄ ∈ ȳ + z̄` iff
/// `x = s²y + t²z` for nonzero `s, t`.
pub fn field_square_quotient(k: &FiniteField) -> FiniteHyperfield {
    if k.size() <= ELEMSET_CAPACITY {
        let f = from_field(k).expect("size checked");
        let squares = k.nonzero_squares();
        return quotient_by_subgroup(&f, &squares).expect("nonzero squares form a subgroup of a field");
    }
    let part = square_classes(k);
    let n = part.classes.len();
    let reps: Vec<usize> = part.classes.iter().map(|c| c[0]).collect();
    let names = reps.iter().map(|&r| k.element_name(r)).collect();
    let neg = reps.iter().map(|&r| part.class_of[k.neg(r)]).collect();
    let mut mul = Vec::with_capacity(n * n);
    for &a in &reps {
        for &b in &reps {
            mul.push(part.class_of[k.mul(a, b)]);
        }
    }
    let squares = k.nonzero_squares();
    let add = |a: usize, b: usize| {
        let (y, z) = (reps[a], reps[b]);
        // scaling by s² does not change classes, so one coefficient suffices
        squares.iter().map(|&w| part.class_of[k.add(y, k.mul(z, w))]).collect()
    };
    FiniteHyperfield::from_fn(names, part.zero_class, part.class_of[k.one()], neg, mul, add)
}

/// The quadratic hyperfield `Q(k)`: square classes with the prime addition.
pub fn quadratic_hyperfield(k: &FiniteField) -> FiniteHyperfield {
    prime_unchecked(&field_square_quotient(k))
}
