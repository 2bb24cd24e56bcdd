use crate::error::{Error, Result};

use super::{require_hyperfield, FiniteHyperfield};

pub const MAX_ISOMORPHISM_SIZE: usize = 12;

/// Per-element invariants preserved by any isomorphism.
fn profile(f: &FiniteHyperfield, a: usize) -> (usize, bool, usize, usize, usize) {
    let order = if a == f.zero() {
        0
    } else {
        let mut x = a;
        let mut k = 1;
        while x != f.one() && k <= f.len() {
            x = f.mul(x, a);
            k += 1;
        }
        k
    };
    (order, f.neg(a) == a, f.add(a, a).len(), f.add(a, f.neg(a)).len(), f.add(a, f.one()).len())
}

/// Searches for a bijection `F1 -> F2` preserving zero, one, negation,
/// multiplication and set-valued addition. `map[i]` is the image of `i`.
pub fn hyperfield_isomorphic(f1: &FiniteHyperfield, f2: &FiniteHyperfield) -> Result<Option<Vec<usize>>> {
    for f in [f1, f2] {
        if f.len() > MAX_ISOMORPHISM_SIZE {
            return Err(Error::guard(format!(
                "isomorphism search supports carriers of size <= {MAX_ISOMORPHISM_SIZE}, got {}",
                f.len()
            )));
        }
        require_hyperfield(f, "isomorphism search")?;
    }
    if f1.len() != f2.len() {
        return Ok(None);
    }
    let m = f1.len();
    let p1: Vec<_> = (0..m).map(|a| profile(f1, a)).collect();
    let p2: Vec<_> = (0..m).map(|a| profile(f2, a)).collect();
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; m];
    map[f1.zero()] = f2.zero();
    used[f2.zero()] = true;
    if p1[f1.one()] != p2[f2.one()] {
        return Ok(None);
    }
    map[f1.one()] = f2.one();
    used[f2.one()] = true;
    let order: Vec<usize> = (0..m).filter(|&a| map[a] == usize::MAX).collect();
    let ctx = Search { f1, f2, p1: &p1, p2: &p2, order: &order };
    Ok(ctx.extend(0, &mut map, &mut used).then_some(map))
}

struct Search<'a> {
    f1: &'a FiniteHyperfield,
    f2: &'a FiniteHyperfield,
    p1: &'a [(usize, bool, usize, usize, usize)],
    p2: &'a [(usize, bool, usize, usize, usize)],
    order: &'a [usize],
}

impl Search<'_> {
    fn consistent(&self, map: &[usize], a: usize) -> bool {
        let (f1, f2) = (self.f1, self.f2);
        let img = |x: usize| map[x];
        let na = f1.neg(a);
        if img(na) != usize::MAX && img(na) != f2.neg(img(a)) {
            return false;
        }
        for b in 0..f1.len() {
            if img(b) == usize::MAX {
                continue;
            }
            let ab = f1.mul(a, b);
            if img(ab) != usize::MAX && img(ab) != f2.mul(img(a), img(b)) {
                return false;
            }
            let s1 = f1.add(a, b);
            if s1.iter().all(|x| img(x) != usize::MAX) && s1.map(img) != f2.add(img(a), img(b)) {
                return false;
            }
        }
        true
    }

    fn full_check(&self, map: &[usize]) -> bool {
        let (f1, f2) = (self.f1, self.f2);
        let m = f1.len();
        (0..m).all(|a| {
            map[f1.neg(a)] == f2.neg(map[a])
                && (0..m).all(|b| {
                    map[f1.mul(a, b)] == f2.mul(map[a], map[b]) && f1.add(a, b).map(|x| map[x]) == f2.add(map[a], map[b])
                })
        })
    }

    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return self.full_check(map);
        }
        let a = self.order[depth];
        for c in 0..self.f2.len() {
            if used[c] || self.p1[a] != self.p2[c] {
                continue;
            }
            map[a] = c;
            used[c] = true;
            if self.consistent(map, a) && self.extend(depth + 1, map, used) {
                return true;
            }
            map[a] = usize::MAX;
            used[c] = false;
        }
        false
    }
}
