use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::hyperfield::{check_hyperfield, FiniteHyperfield};

use super::{check_presentable, ExplicitPresentableRing, PresentableLevel};

/// The hyperfield of supercompacts: `a ∈ b + c` iff `a ≤ b + c` in `R`.
pub fn supercompact_hyperfield(r: &ExplicitPresentableRing) -> Result<FiniteHyperfield> {
    let report = check_presentable(r)?;
    if report.level_passed < PresentableLevel::Field {
        let first = report.failures.first().map(|f| f.to_string()).unwrap_or_default();
        return Err(Error::precondition(format!("not a presentable field: {first}")));
    }
    let sc = r.supercompacts();
    let m = sc.len();
    let mut pos = vec![usize::MAX; r.len()];
    for (i, &s) in sc.iter().enumerate() {
        pos[s] = i;
    }
    let lookup = |x: usize| {
        let p = pos[x];
        debug_assert!(p != usize::MAX, "field level guarantees closure on supercompacts");
        p
    };
    for &s in &sc {
        if pos[r.neg(s)] == usize::MAX {
            return Err(Error::precondition(format!("-{} is not a supercompact", r.name(s))));
        }
    }
    let names = sc.iter().map(|&s| r.name(s).to_string()).collect();
    let neg = sc.iter().map(|&s| lookup(r.neg(s))).collect();
    let mut mul = Vec::with_capacity(m * m);
    for &a in &sc {
        for &b in &sc {
            let p = pos[r.mul(a, b)];
            if p == usize::MAX {
                return Err(Error::precondition(format!("{} * {} is not a supercompact", r.name(a), r.name(b))));
            }
            mul.push(p);
        }
    }
    let add = |i: usize, j: usize| {
        let sum = r.add(sc[i], sc[j]);
        (0..m).filter(|&k| r.leq(sc[k], sum)).collect::<ElemSet>()
    };
    Ok(FiniteHyperfield::from_fn(names, lookup(r.zero()), lookup(r.one()), neg, mul, add))
}

fn validate_multiplicative(f: &FiniteHyperfield, t: &[usize]) -> Result<Vec<usize>> {
    if t.is_empty() {
        return Err(Error::input("multiplicative set must be nonempty"));
    }
    let mut set = ElemSet::EMPTY;
    for &s in t {
        if s >= f.len() {
            return Err(Error::input(format!("element id {s} outside the carrier")));
        }
        if s == f.zero() {
            return Err(Error::precondition("multiplicative set contains 0"));
        }
        set.insert(s);
    }
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(f.mul(a, b)) {
                return Err(Error::precondition(format!(
                    "not multiplicatively closed: {} * {} = {}",
                    f.name(a),
                    f.name(b),
                    f.name(f.mul(a, b))
                )));
            }
        }
    }
    Ok(set.iter().collect())
}

/// Class ids for `a ~ b <=> as = bt` (`s, t ∈ T`), numbered by smallest member.
fn multiplicative_classes(f: &FiniteHyperfield, t: &[usize]) -> Vec<usize> {
    let m = f.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for a in 0..m {
        for b in 0..m {
            if t.iter().any(|&s| t.iter().any(|&u| f.mul(a, s) == f.mul(b, u))) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut ids = vec![usize::MAX; m];
    let mut next = 0;
    let mut class_of = vec![0; m];
    for (x, c) in class_of.iter_mut().enumerate() {
        let root = find(&mut parent, x);
        if ids[root] == usize::MAX {
            ids[root] = next;
            next += 1;
        }
        *c = ids[root];
    }
    class_of
}

fn classes_from(class_of: &[usize]) -> Vec<Vec<usize>> {
    let n = class_of.iter().max().map_or(0, |&c| c + 1);
    let mut classes = vec![Vec::new(); n];
    for (x, &c) in class_of.iter().enumerate() {
        classes[c].push(x);
    }
    classes
}

/// Quotient of the supercompact hyperfield by a multiplicative set `T`:
/// `a ~ b <=> as = bt`, and `ā ∈ b̄ + c̄` iff `as ∈ bt + cu` for some
/// `s, t, u ∈ T`.
///
/// The sum is computed from every choice of representatives and the result
/// is rejected if two choices disagree.
pub fn quotient_mod_multiplicative_set(f: &FiniteHyperfield, t: &[usize]) -> Result<FiniteHyperfield> {
    let t = validate_multiplicative(f, t)?;
    let class_of = multiplicative_classes(f, &t);
    let classes = classes_from(&class_of);
    let n = classes.len();
    let sum_of = |b: usize, c: usize| {
        let mut out = ElemSet::EMPTY;
        for &s in &t {
            for &u in &t {
                out = out.union(f.add(f.mul(b, s), f.mul(c, u)));
            }
        }
        out.map(|x| class_of[x])
    };
    let mut table = vec![ElemSet::EMPTY; n * n];
    for i in 0..n {
        for j in 0..n {
            let first = sum_of(classes[i][0], classes[j][0]);
            for &b in &classes[i] {
                for &c in &classes[j] {
                    let other = sum_of(b, c);
                    if other != first {
                        return Err(Error::law(
                            "quotient.representative independence",
                            format!("{} + {} gives {first} but {} + {} gives {other}", f.name(classes[i][0]), f.name(classes[j][0]), f.name(b), f.name(c)),
                        ));
                    }
                }
            }
            table[i * n + j] = first;
        }
    }
    Ok(build_quotient(f, &class_of, &classes, |i, j| table[i * n + j]))
}

fn build_quotient(
    f: &FiniteHyperfield,
    class_of: &[usize],
    classes: &[Vec<usize>],
    add: impl FnMut(usize, usize) -> ElemSet,
) -> FiniteHyperfield {
    let n = classes.len();
    let names = classes.iter().map(|c| f.name(c[0]).to_string()).collect();
    let neg = classes.iter().map(|c| class_of[f.neg(c[0])]).collect();
    let mut mul = Vec::with_capacity(n * n);
    for a in classes {
        for b in classes {
            mul.push(class_of[f.mul(a[0], b[0])]);
        }
    }
    FiniteHyperfield::from_fn(names, class_of[f.zero()], class_of[f.one()], neg, mul, add)
}

/// Which compatibility conditions a partition must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CongruenceMode {
    /// Products and negation respect the partition.
    MulNeg,
    /// Also `a ~ a'`, `b ~ b'` imply that `a + b` and `a' + b'` meet the same classes.
    Strict,
}

/// Hyperfield on the classes of a congruence, with `ā ∈ b̄ + c̄` iff
/// `a' ∈ b' + c'` for some representatives.
pub fn quotient_by_congruence(f: &FiniteHyperfield, partition: &[Vec<usize>], mode: CongruenceMode) -> Result<FiniteHyperfield> {
    let m = f.len();
    let mut class_of = vec![usize::MAX; m];
    for (i, class) in partition.iter().enumerate() {
        if class.is_empty() {
            return Err(Error::input(format!("class {i} is empty")));
        }
        for &x in class {
            if x >= m {
                return Err(Error::input(format!("element id {x} outside the carrier")));
            }
            if class_of[x] != usize::MAX {
                return Err(Error::input(format!("{} appears in two classes", f.name(x))));
            }
            class_of[x] = i;
        }
    }
    if let Some(x) = class_of.iter().position(|&c| c == usize::MAX) {
        return Err(Error::input(format!("{} is not covered by the partition", f.name(x))));
    }
    if class_of[f.zero()] == class_of[f.one()] {
        return Err(Error::precondition("0 ∼ 1"));
    }
    // renumber by smallest member so results do not depend on class order
    let mut order: Vec<usize> = (0..partition.len()).collect();
    order.sort_by_key(|&i| partition[i].iter().min().copied());
    let mut rename = vec![0; partition.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    let class_of: Vec<usize> = class_of.iter().map(|&c| rename[c]).collect();
    let classes = classes_from(&class_of);

    for a in 0..m {
        for a2 in 0..m {
            if class_of[a] != class_of[a2] || a == a2 {
                continue;
            }
            if class_of[f.neg(a)] != class_of[f.neg(a2)] {
                return Err(Error::law("congruence.negation", format!("{} ∼ {} but -{} ≁ -{}", f.name(a), f.name(a2), f.name(a), f.name(a2))));
            }
            for b in 0..m {
                if class_of[f.mul(a, b)] != class_of[f.mul(a2, b)] {
                    return Err(Error::law(
                        "congruence.product",
                        format!("{} ∼ {} but {}·{} ≁ {}·{}", f.name(a), f.name(a2), f.name(a), f.name(b), f.name(a2), f.name(b)),
                    ));
                }
                if mode == CongruenceMode::Strict && f.add(a, b).map(|x| class_of[x]) != f.add(a2, b).map(|x| class_of[x]) {
                    return Err(Error::law(
                        "congruence.sum",
                        format!("{} ∼ {} but {} + {} and {} + {} meet different classes", f.name(a), f.name(a2), f.name(a), f.name(b), f.name(a2), f.name(b)),
                    ));
                }
            }
        }
    }

    let q = build_quotient(f, &class_of, &classes, |i, j| {
        let mut out = ElemSet::EMPTY;
        for &b in &classes[i] {
            for &c in &classes[j] {
                out = out.union(f.add(b, c).map(|x| class_of[x]));
            }
        }
        out
    });
    let report = check_hyperfield(&q);
    if let Some(fail) = report.failures.first() {
        return Err(Error::law(fail.axiom.clone(), format!("quotient is not a hyperfield: {fail}")));
    }
    Ok(q)
}

/// How the square set `T` of the squares pipeline is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquaresMode {
    /// `T = { t² : t a nonzero supercompact }`.
    Supercompact,
    /// `T = { s ≠ 0 : s ≤ A² for some A ∈ P*(F) }`, which is every nonzero element.
    Literal,
}

pub fn squares_subset(f: &FiniteHyperfield, mode: SquaresMode) -> Vec<usize> {
    let mut t = ElemSet::EMPTY;
    match mode {
        SquaresMode::Supercompact => {
            for a in f.nonzero() {
                t.insert(f.mul(a, a));
            }
        }
        SquaresMode::Literal => {
            // the largest A is the whole carrier, whose square holds every xy
            for x in 0..f.len() {
                for y in 0..f.len() {
                    t.insert(f.mul(x, y));
                }
            }
            t.remove(f.zero());
        }
    }
    t.iter().collect()
}

/// The quotient of `F` by its squares, which is pre-quadratic when
/// `a ∈ a + b` holds for every nonzero `a`.
pub fn squares_pipeline(f: &FiniteHyperfield, mode: SquaresMode) -> Result<FiniteHyperfield> {
    for a in f.nonzero() {
        for b in 0..f.len() {
            if !f.add(a, b).contains(a) {
                return Err(Error::precondition(format!(
                    "{} is not in {} + {}; apply the prime addition first",
                    f.name(a),
                    f.name(a),
                    f.name(b)
                )));
            }
        }
    }
    quotient_mod_multiplicative_set(f, &squares_subset(f, mode))
}
