//! Explicit presentable rings and fields: a presentable poset carrying
//! addition, inversion and multiplication tables.

mod quotient;

pub use quotient::{
    quotient_by_congruence, quotient_mod_multiplicative_set, squares_pipeline, squares_subset, supercompact_hyperfield,
    CongruenceMode, SquaresMode,
};

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::hyperfield::{check_hyperfield, FiniteHyperfield};
use crate::poset::{self, mask_name, subset_masks, FinitePointedPoset};
use crate::report::{Collector, Report};

/// Largest hyperfield accepted by [`powerset_of_hyperfield`].
pub const MAX_POWERSET_BASE: usize = 10;
/// Largest carrier of an explicit presentable structure.
pub const MAX_PRESENTABLE_SIZE: usize = 1023;
/// Largest supercompact count for exhaustive family checks.
pub const MAX_FAMILY_SUPERCOMPACTS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitPresentableRing {
    poset: FinitePointedPoset,
    add: Vec<usize>,
    neg: Vec<usize>,
    mul: Vec<usize>,
    one: usize,
    is_field: bool,
}

impl ExplicitPresentableRing {
    /// Validates shapes and that `0` (the basepoint) and `1` are distinct
    /// minimal elements. The algebraic laws are left to [`check_presentable`].
    pub fn new(
        poset: FinitePointedPoset,
        add: Vec<usize>,
        neg: Vec<usize>,
        mul: Vec<usize>,
        one: usize,
        is_field: bool,
    ) -> Result<Self> {
        let n = poset.len();
        if n > MAX_PRESENTABLE_SIZE {
            return Err(Error::guard(format!("presentable structures are capped at {MAX_PRESENTABLE_SIZE} elements, got {n}")));
        }
        if add.len() != n * n || mul.len() != n * n || neg.len() != n {
            return Err(Error::input(format!("tables must have {n}x{n} (add, mul) and {n} (neg) entries")));
        }
        if add.iter().chain(&mul).chain(&neg).any(|&x| x >= n) || one >= n {
            return Err(Error::input(format!("table entry outside 0..{n}")));
        }
        let zero = poset.basepoint();
        if zero == one {
            return Err(Error::input("0 and 1 must be distinct"));
        }
        for (label, x) in [("0", zero), ("1", one)] {
            if !poset.is_minimal(x) {
                return Err(Error::input(format!("{label} = {} is not a supercompact", poset.name(x))));
            }
        }
        Ok(ExplicitPresentableRing { poset, add, neg, mul, one, is_field })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn poset(&self) -> &FinitePointedPoset {
        &self.poset
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn name(&self, a: usize) -> &str {
        self.poset.name(a)
    }

    pub fn zero(&self) -> usize {
        self.poset.basepoint()
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.len() + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn supercompacts(&self) -> Vec<usize> {
        self.poset.minimals()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// Copy with `a + b` replaced (the mirrored entry is left alone).
    pub fn with_sum(&self, a: usize, b: usize, sum: usize) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.add[a * n + b] = sum;
        out
    }

    pub fn with_product(&self, a: usize, b: usize, product: usize) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.mul[a * n + b] = product;
        out
    }
}

/// The pierced powerset `P*(F)` with `A + B = ⋃ {a + b}`, elementwise
/// products and negation, based at `{0}` with identity `{1}`.
///
/// Element ids follow the subset order of [`FinitePointedPoset::pierced_powerset`]
/// (by size, then lexicographically), names are `{a,b}` with `F`'s names.
pub fn powerset_of_hyperfield(f: &FiniteHyperfield) -> Result<ExplicitPresentableRing> {
    let m = f.len();
    if m > MAX_POWERSET_BASE {
        return Err(Error::guard(format!("powerset construction supports hyperfields of size <= {MAX_POWERSET_BASE}, got {m}")));
    }
    let names: Vec<String> = subset_masks(m).iter().map(|&mask| mask_name(mask, f.names())).collect();
    let poset = FinitePointedPoset::pierced_powerset(m, f.zero())?.with_names(names)?;
    let n = poset.len();
    let full = 1usize << m;
    let id = |mask: u32| poset.subset_id(mask).expect("nonempty mask");
    let to_mask = |s: ElemSet| s.bits() as u32;

    // single[a][B] = a + B, built by peeling off the lowest element of B
    let mut single = vec![vec![0u32; full]; m];
    for (a, row) in single.iter_mut().enumerate() {
        for b_mask in 1..full {
            let low = b_mask.trailing_zeros() as usize;
            row[b_mask] = row[b_mask & (b_mask - 1)] | to_mask(f.add(a, low));
        }
    }
    let mut add = vec![0usize; n * n];
    let mut mul = vec![0usize; n * n];
    let masks: Vec<u32> = (0..n).map(|x| poset.subset_mask(x).expect("inclusion order")).collect();
    for (i, &am) in masks.iter().enumerate() {
        for (j, &bm) in masks.iter().enumerate() {
            let mut s = 0u32;
            let mut p = 0u32;
            for a in (0..m).filter(|&a| am >> a & 1 == 1) {
                s |= single[a][bm as usize];
                for b in (0..m).filter(|&b| bm >> b & 1 == 1) {
                    p |= 1 << f.mul(a, b);
                }
            }
            add[i * n + j] = id(s);
            mul[i * n + j] = id(p);
        }
    }
    let neg = masks
        .iter()
        .map(|&am| id((0..m).filter(|&a| am >> a & 1 == 1).fold(0u32, |acc, a| acc | 1 << f.neg(a))))
        .collect();
    let one = id(1 << f.one());
    let is_field = check_hyperfield(f).passed();
    ExplicitPresentableRing::new(poset, add, neg, mul, one, is_field)
}

/// Levels of the presentable ladder, lowest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PresentableLevel {
    None,
    Poset,
    Monoid,
    Group,
    Ring,
    Field,
}

pub type PresentableAxiomReport = Report<PresentableLevel>;

struct Ctx<'a> {
    r: &'a ExplicitPresentableRing,
    sc: Vec<usize>,
    below: Vec<Vec<usize>>,
    families: Vec<(Vec<usize>, usize)>,
}

impl Ctx<'_> {
    fn sup(&self, xs: &[usize]) -> Option<usize> {
        self.r.poset.supremum(xs).ok().flatten()
    }

    fn names(&self, xs: &[usize]) -> String {
        let parts: Vec<&str> = xs.iter().map(|&x| self.r.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Checks the poset, monoid, group, ring and field layers in order and
/// stops at the first failing one.
///
/// Suprema preservation of `+` and `−` is tested on every nonempty family of
/// supercompacts; the exchange law `s ≤ t + u ⇒ t ≤ s + (−u)` on
/// supercompacts only.
pub fn check_presentable(r: &ExplicitPresentableRing) -> Result<PresentableAxiomReport> {
    let n = r.len();
    let (zero, one) = (r.zero(), r.one());

    let preport = poset::check_presentable(&r.poset)?;
    if !preport.passed() {
        let failures = preport
            .witnesses
            .iter()
            .map(|w| crate::report::Failure {
                axiom: format!("poset.{}", w.axiom),
                witness: w.elements.iter().chain(&w.subset).copied().collect(),
                detail: format!("elements {:?}, subset {:?}", w.elements, w.subset),
                count: 1,
            })
            .collect();
        return Ok(Report { level_passed: PresentableLevel::None, failures });
    }

    let sc = r.supercompacts();
    if sc.len() > MAX_FAMILY_SUPERCOMPACTS {
        return Err(Error::guard(format!(
            "suprema checks enumerate families of supercompacts; {} exceed the limit {MAX_FAMILY_SUPERCOMPACTS}",
            sc.len()
        )));
    }
    let below: Vec<Vec<usize>> = (0..n).map(|x| r.poset.minimals_below(x)).collect::<Result<_>>()?;
    let mut families = Vec::new();
    for mask in 1u32..(1 << sc.len()) {
        let fam: Vec<usize> = (0..sc.len()).filter(|i| mask >> i & 1 == 1).map(|i| sc[i]).collect();
        if let Some(x) = r.poset.supremum(&fam)? {
            families.push((fam, x));
        }
    }
    let ctx = Ctx { r, sc, below, families };

    let mut c = Collector::new();
    for (fam, x) in &ctx.families {
        for b in 0..n {
            let parts: Vec<usize> = fam.iter().map(|&s| r.add(s, b)).collect();
            let expect = ctx.sup(&parts);
            c.check(expect == Some(r.add(*x, b)), "monoid.suprema-preserving addition", &[*x, b], || {
                format!(
                    "{} + {} = {} but the supremum of {} is {}",
                    r.name(*x),
                    r.name(b),
                    r.name(r.add(*x, b)),
                    ctx.names(&parts),
                    expect.map_or("undefined", |e| r.name(e))
                )
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = r.add(a, b);
            for x in 0..n {
                let (l, rt) = (r.add(a, r.add(b, x)), r.add(ab, x));
                c.check(l == rt, "monoid.i associativity", &[a, b, x], || {
                    format!("{} + ({} + {}) = {} but ({} + {}) + {} = {}", r.name(a), r.name(b), r.name(x), r.name(l), r.name(a), r.name(b), r.name(x), r.name(rt))
                });
            }
        }
    }
    for a in 0..n {
        let ok = r.add(a, zero) == a && r.add(zero, a) == a;
        c.check(ok, "monoid.ii neutral", &[a, zero], || {
            format!("{} + {} = {}, {} + {} = {}", r.name(a), r.name(zero), r.name(r.add(a, zero)), r.name(zero), r.name(a), r.name(r.add(zero, a)))
        });
        for b in 0..n {
            c.check(r.add(a, b) == r.add(b, a), "monoid.iii commutativity", &[a, b], || {
                format!("{} + {} = {} but {} + {} = {}", r.name(a), r.name(b), r.name(r.add(a, b)), r.name(b), r.name(a), r.name(r.add(b, a)))
            });
        }
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: PresentableLevel::Poset, failures: c.into_failures() });
    }

    let mut c = Collector::new();
    for a in 0..n {
        c.check(r.neg(r.neg(a)) == a, "group.involution", &[a], || format!("-(-{}) = {}", r.name(a), r.name(r.neg(r.neg(a)))));
    }
    for (fam, x) in &ctx.families {
        let parts: Vec<usize> = fam.iter().map(|&s| r.neg(s)).collect();
        let expect = ctx.sup(&parts);
        c.check(expect == Some(r.neg(*x)), "group.suprema-preserving inversion", &[*x], || {
            format!("-{} = {} but the supremum of {} is {}", r.name(*x), r.name(r.neg(*x)), ctx.names(&parts), expect.map_or("undefined", |e| r.name(e)))
        });
    }
    for &s in &ctx.sc {
        for &t in &ctx.sc {
            for &u in &ctx.sc {
                if r.leq(s, r.add(t, u)) {
                    let rhs = r.add(s, r.neg(u));
                    c.check(r.leq(t, rhs), "group.exchange", &[s, t, u], || {
                        format!("{} <= {} + {} but {} is not below {} + (-{}) = {}", r.name(s), r.name(t), r.name(u), r.name(t), r.name(s), r.name(u), r.name(rhs))
                    });
                }
            }
        }
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: PresentableLevel::Monoid, failures: c.into_failures() });
    }

    let mut c = Collector::new();
    for a in 0..n {
        c.check(r.mul(one, a) == a, "ring.monoid identity", &[a], || format!("{} * {} = {}", r.name(one), r.name(a), r.name(r.mul(one, a))));
        for b in 0..n {
            c.check(r.mul(a, b) == r.mul(b, a), "ring.monoid commutativity", &[a, b], String::new);
        }
    }
    for a in 0..n {
        let supercompact = r.poset.is_minimal(a);
        for b in 0..n {
            let ab = r.mul(a, b);
            for x in 0..n {
                c.check(r.mul(ab, x) == r.mul(a, r.mul(b, x)), "ring.monoid associativity", &[a, b, x], String::new);
                let (l, rt) = (r.mul(a, r.add(b, x)), r.add(ab, r.mul(a, x)));
                let (ok, axiom) = if supercompact { (l == rt, "ring.distributivity") } else { (r.leq(l, rt), "ring.subdistributivity") };
                c.check(ok, axiom, &[a, b, x], || {
                    format!("{} * ({} + {}) = {} against {} * {} + {} * {} = {}", r.name(a), r.name(b), r.name(x), r.name(l), r.name(a), r.name(b), r.name(a), r.name(x), r.name(rt))
                });
            }
        }
    }
    for (a, b) in r.poset.covers() {
        for x in 0..n {
            c.check(r.leq(r.mul(a, x), r.mul(b, x)), "ring.compatible with order", &[a, b, x], || {
                format!("{} <= {} but {} * {} is not below {} * {}", r.name(a), r.name(b), r.name(a), r.name(x), r.name(b), r.name(x))
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            c.check(r.mul(r.neg(a), b) == r.neg(r.mul(a, b)), "ring.compatible with inversion", &[a, b], || {
                format!("(-{}) * {} = {} but -({} * {}) = {}", r.name(a), r.name(b), r.name(r.mul(r.neg(a), b)), r.name(a), r.name(b), r.name(r.neg(r.mul(a, b))))
            });
            let mut products: Vec<usize> = ctx.below[a].iter().flat_map(|&s| ctx.below[b].iter().map(move |&t| r.mul(s, t))).collect();
            products.sort_unstable();
            products.dedup();
            let actual = &ctx.below[r.mul(a, b)];
            c.check(&products == actual, "ring.supercompacts of products", &[a, b], || {
                format!("S({} * {}) = {} but the products of supercompacts are {}", r.name(a), r.name(b), ctx.names(actual), ctx.names(&products))
            });
        }
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: PresentableLevel::Group, failures: c.into_failures() });
    }

    let mut c = Collector::new();
    let nonzero: Vec<usize> = ctx.sc.iter().copied().filter(|&s| s != zero).collect();
    for &s in &nonzero {
        for &t in &nonzero {
            let st = r.mul(s, t);
            c.check(st != zero && r.poset.is_minimal(st), "field.group closure", &[s, t], || {
                format!("{} * {} = {} is not a nonzero supercompact", r.name(s), r.name(t), r.name(st))
            });
        }
        c.check(nonzero.iter().any(|&t| r.mul(s, t) == one), "field.group inverse", &[s], || {
            format!("{} has no supercompact inverse", r.name(s))
        });
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: PresentableLevel::Ring, failures: c.into_failures() });
    }
    Ok(Report { level_passed: PresentableLevel::Field, failures: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{euclidean3, example_sq_7, integers_mod};
    use crate::finite_field::ff_make;
    use crate::hyperfield::from_field;

    #[test]
    fn powerset_of_euclidean_matches_the_literal_tables() {
        let built = powerset_of_hyperfield(&euclidean3()).unwrap();
        let literal = example_sq_7();
        assert_eq!(built.len(), 7);
        assert_eq!(built.add_table(), literal.add_table());
        assert_eq!(built.mul_table(), literal.mul_table());
        assert_eq!(built.neg_table(), literal.neg_table());
        assert_eq!(built.one(), literal.one());
        let (i, kappa, a1, a2, a3, beta) = (1, 2, 3, 4, 5, 6);
        assert_eq!(built.add(i, kappa), beta);
        assert_eq!(built.add(a1, a2), beta);
        assert_eq!(built.mul(kappa, a1), a2);
        assert_eq!(built.mul(a3, a3), a3);
    }

    #[test]
    fn example_sq_is_a_presentable_field() {
        let r = check_presentable(&example_sq_7()).unwrap();
        assert_eq!(r.level_passed, PresentableLevel::Field, "{:?}", r.failures);
    }

    #[test]
    fn broken_neutral_element() {
        let r = example_sq_7();
        let (theta, a3, beta) = (0, 5, 6);
        let broken = r.with_sum(a3, theta, beta);
        let report = check_presentable(&broken).unwrap();
        assert_eq!(report.level_passed, PresentableLevel::Poset);
        let f = report.failure("monoid.ii neutral").unwrap();
        assert_eq!(f.witness, vec![a3, theta]);
    }

    #[test]
    fn powerset_of_gf2() {
        let f = from_field(&ff_make(2, 1, None).unwrap()).unwrap();
        let r = powerset_of_hyperfield(&f).unwrap();
        assert_eq!(r.names(), &["{0}", "{1}", "{0,1}"]);
        for a in 0..3 {
            for b in 0..3 {
                let mask = r.poset().subset_mask(a).unwrap() | r.poset().subset_mask(b).unwrap();
                assert_eq!(r.poset().supremum(&[a, b]).unwrap(), r.poset().subset_id(mask));
            }
        }
        assert_eq!(check_presentable(&r).unwrap().level_passed, PresentableLevel::Field);
    }

    #[test]
    fn powerset_of_gf5_is_a_field() {
        let f = from_field(&ff_make(5, 1, None).unwrap()).unwrap();
        let report = check_presentable(&powerset_of_hyperfield(&f).unwrap()).unwrap();
        assert_eq!(report.level_passed, PresentableLevel::Field);
    }

    #[test]
    fn exchange_fails_beyond_supercompacts_in_z8() {
        let z8 = integers_mod(8);
        let r = powerset_of_hyperfield(&z8).unwrap();
        let set = |xs: &[usize]| r.poset().subset_id(xs.iter().fold(0u32, |m, &x| m | 1 << x)).unwrap();
        let (a, b, c) = (set(&[1, 3]), set(&[0, 1]), set(&[0, 2]));
        assert!(r.leq(a, r.add(b, c)));
        assert_eq!(r.add(b, c), set(&[0, 1, 2, 3]));
        assert_eq!(r.add(a, r.neg(c)), set(&[1, 3, 7]));
        assert!(!r.leq(b, r.add(a, r.neg(c))));
        // as a ring Z/8 is not a field, so the ladder stops at the ring level
        let report = check_presentable(&r).unwrap();
        assert_eq!(report.level_passed, PresentableLevel::Ring);
        assert!(!r.is_field());
    }

    #[test]
    fn wrong_product_of_supercompacts_is_caught() {
        let r = example_sq_7();
        // I * α1 should be α1; claim β instead and repair symmetry
        let broken = r.with_product(1, 3, 6).with_product(3, 1, 6);
        let report = check_presentable(&broken).unwrap();
        assert_eq!(report.level_passed, PresentableLevel::Group);
    }

    #[test]
    fn constructor_rejects_non_minimal_one() {
        let r = example_sq_7();
        let err = ExplicitPresentableRing::new(
            r.poset().clone(),
            r.add_table().to_vec(),
            r.neg_table().to_vec(),
            r.mul_table().to_vec(),
            6,
            true,
        );
        assert!(err.is_err());
    }
}
