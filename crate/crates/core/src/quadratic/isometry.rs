//! The inductive isometry relation, generic over the binary rule.

use std::collections::HashMap;

use crate::hyperfield::FiniteHyperfield;

/// A group with a binary isometry relation on pairs, from which `≅_n` is
/// built inductively.
pub trait BinaryIsometry {
    /// Ids usable as form entries.
    fn elements(&self) -> &[usize];
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    fn one(&self) -> usize;
    fn minus_one(&self) -> usize;
    /// `⟨a1, a2⟩ ≅ ⟨b1, b2⟩`.
    fn binary(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> bool;
    fn name(&self, a: usize) -> String;
}

impl<T: BinaryIsometry + ?Sized> BinaryIsometry for &T {
    fn elements(&self) -> &[usize] {
        (**self).elements()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        (**self).mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        (**self).inv(a)
    }
    fn one(&self) -> usize {
        (**self).one()
    }
    fn minus_one(&self) -> usize {
        (**self).minus_one()
    }
    fn binary(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> bool {
        (**self).binary(a1, a2, b1, b2)
    }
    fn name(&self, a: usize) -> String {
        (**self).name(a)
    }
}

/// Binary rule of a hyperfield: `a1 a2 = b1 b2` and `b1 ∈ a1 + a2`.
pub struct HyperfieldIsometry<'a> {
    f: &'a FiniteHyperfield,
    elems: Vec<usize>,
    inv: Vec<usize>,
}

impl<'a> HyperfieldIsometry<'a> {
    pub fn new(f: &'a FiniteHyperfield) -> Self {
        let elems: Vec<usize> = f.nonzero().collect();
        let inv = (0..f.len()).map(|a| f.inverse(a).unwrap_or(usize::MAX)).collect();
        HyperfieldIsometry { f, elems, inv }
    }

    pub fn field(&self) -> &FiniteHyperfield {
        self.f
    }
}

impl BinaryIsometry for HyperfieldIsometry<'_> {
    fn elements(&self) -> &[usize] {
        &self.elems
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.f.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    fn one(&self) -> usize {
        self.f.one()
    }

    fn minus_one(&self) -> usize {
        self.f.minus_one()
    }

    fn binary(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> bool {
        self.f.mul(a1, a2) == self.f.mul(b1, b2) && self.f.add(a1, a2).contains(b1)
    }

    fn name(&self, a: usize) -> String {
        self.f.name(a).to_string()
    }
}

/// How forms are keyed and how the `c3..cn` entries are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Forms are sorted and candidate tails are multisets. Sound when
    /// isometry is invariant under permuting entries.
    Sorted,
    /// Forms are used as given and every tail tuple is tried.
    Exact,
}

/// Memoized decision procedure for `≅_n`.
pub struct IsometryEngine<B: BinaryIsometry> {
    rule: B,
    mode: Normalization,
    memo: HashMap<(Vec<usize>, Vec<usize>), bool>,
}

impl<B: BinaryIsometry> IsometryEngine<B> {
    pub fn new(rule: B, mode: Normalization) -> Self {
        IsometryEngine { rule, mode, memo: HashMap::new() }
    }

    pub fn rule(&self) -> &B {
        &self.rule
    }

    pub fn mode(&self) -> Normalization {
        self.mode
    }

    /// Every memoized `(φ, ψ, φ ≅ ψ)`.
    pub fn memo_entries(&self) -> impl Iterator<Item = (&[usize], &[usize], bool)> {
        self.memo.iter().map(|((a, b), &v)| (a.as_slice(), b.as_slice(), v))
    }

    fn normalize(&self, phi: &[usize]) -> Vec<usize> {
        let mut v = phi.to_vec();
        if self.mode == Normalization::Sorted {
            v.sort_unstable();
        }
        v
    }

    /// Decides `φ ≅ ψ` for forms of equal dimension.
    pub fn isometric(&mut self, phi: &[usize], psi: &[usize]) -> bool {
        assert_eq!(phi.len(), psi.len(), "isometry compares forms of equal dimension");
        let (a, b) = (self.normalize(phi), self.normalize(psi));
        self.decide(a, b)
    }

    fn decide(&mut self, a: Vec<usize>, b: Vec<usize>) -> bool {
        match a.len() {
            0 => return true,
            1 => return a[0] == b[0],
            2 => return self.rule.binary(a[0], a[1], b[0], b[1]),
            _ => {}
        }
        if let Some(&v) = self.memo.get(&(a.clone(), b.clone())) {
            return v;
        }
        let v = self.search(&a, &b);
        self.memo.insert((a, b), v);
        v
    }

    fn search(&mut self, a: &[usize], b: &[usize]) -> bool {
        let n = a.len();
        let elems = self.rule.elements().to_vec();
        let (a1, b1) = (a[0], b[0]);
        let binv = self.rule.inv(b1);
        let tails = self.tails(n - 2, &elems);
        for &x in &elems {
            let y = self.rule.mul(self.rule.mul(a1, x), binv);
            if !self.rule.binary(a1, x, b1, y) {
                continue;
            }
            for c in &tails {
                let mut left = Vec::with_capacity(n - 1);
                left.push(x);
                left.extend_from_slice(c);
                let mut right = Vec::with_capacity(n - 1);
                right.push(y);
                right.extend_from_slice(c);
                let (la, lb) = (self.normalize(&a[1..]), self.normalize(&left));
                if !self.decide(la, lb) {
                    continue;
                }
                let (ra, rb) = (self.normalize(&b[1..]), self.normalize(&right));
                if self.decide(ra, rb) {
                    return true;
                }
            }
        }
        false
    }

    fn tails(&self, len: usize, elems: &[usize]) -> Vec<Vec<usize>> {
        match self.mode {
            Normalization::Exact => all_tuples(elems, len),
            Normalization::Sorted => multisets(elems, len),
        }
    }
}

pub(crate) fn all_tuples(elems: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |&e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    out
}

/// Nondecreasing tuples over `elems` (taken in their given order).
pub(crate) fn multisets(elems: &[usize], len: usize) -> Vec<Vec<usize>> {
    fn rec(elems: &[usize], start: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..elems.len() {
            cur.push(elems[i]);
            rec(elems, i, len, cur, out);
            cur.pop();
        }
    }
    let mut sorted = elems.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    rec(&sorted, 0, len, &mut Vec::new(), &mut out);
    out
}
