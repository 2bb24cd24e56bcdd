//! Finite hyperfields: a field-like structure whose addition returns
//! nonempty sets of elements.
//!
//! Addition is stored for `a ≤ b` only and read symmetrically, so a table
//! that made it into a [`FiniteHyperfield`] is commutative. External tables
//! are checked for commutativity when they are ingested.

mod construct;
mod iso;

pub use construct::{
    field_square_quotient, from_field, prime_hyperfield, quadratic_hyperfield, quotient_by_subgroup,
};
pub use iso::{hyperfield_isomorphic, MAX_ISOMORPHISM_SIZE};

use serde::{Deserialize, Serialize};

use crate::bitset::{ElemSet, ELEMSET_CAPACITY};
use crate::error::{Error, Result};
use crate::report::{Collector, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteHyperfield {
    names: Vec<String>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    mul: Vec<usize>,
    add: Vec<ElemSet>,
}

fn tri(a: usize, b: usize) -> usize {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    hi * (hi + 1) / 2 + lo
}

impl FiniteHyperfield {
    /// Builds a hyperfield from full row-major tables.
    ///
    /// Fails on shape errors, out-of-range ids, empty sums, and on a
    /// non-commutative addition table (reported as a `Law` error with the
    /// offending pair).
    pub fn new(
        names: Vec<String>,
        zero: usize,
        one: usize,
        neg: Vec<usize>,
        mul: Vec<usize>,
        add: Vec<ElemSet>,
    ) -> Result<Self> {
        let m = names.len();
        Self::check_shapes(m, zero, one, &neg, &mul)?;
        if add.len() != m * m {
            return Err(Error::input(format!("addition table has {} entries, expected {}", add.len(), m * m)));
        }
        for a in 0..m {
            for b in 0..m {
                let s = add[a * m + b];
                if s.is_empty() {
                    return Err(Error::input(format!("{} + {} is empty", names[a], names[b])));
                }
                if !s.is_subset(ElemSet::full(m)) {
                    return Err(Error::input(format!("{} + {} names an id outside 0..{m}", names[a], names[b])));
                }
                if s != add[b * m + a] {
                    return Err(Error::law(
                        "hypermonoid.ii commutativity",
                        format!("{} + {} = {} but {} + {} = {}", names[a], names[b], s, names[b], names[a], add[b * m + a]),
                    ));
                }
            }
        }
        Ok(Self::from_fn(names, zero, one, neg, mul, |a, b| add[a * m + b]))
    }

    fn check_shapes(m: usize, zero: usize, one: usize, neg: &[usize], mul: &[usize]) -> Result<()> {
        if m == 0 || m > ELEMSET_CAPACITY {
            return Err(Error::guard(format!("hyperfield carrier must have 1..={ELEMSET_CAPACITY} elements, got {m}")));
        }
        if zero >= m || one >= m {
            return Err(Error::input(format!("zero/one ids ({zero}, {one}) outside 0..{m}")));
        }
        if neg.len() != m || neg.iter().any(|&x| x >= m) {
            return Err(Error::input(format!("negation must list {m} ids in 0..{m}")));
        }
        if mul.len() != m * m || mul.iter().any(|&x| x >= m) {
            return Err(Error::input(format!("multiplication table must have {} ids in 0..{m}", m * m)));
        }
        Ok(())
    }

    /// Builds from an addition rule evaluated on `a ≤ b` only.
    pub(crate) fn from_fn(
        names: Vec<String>,
        zero: usize,
        one: usize,
        neg: Vec<usize>,
        mul: Vec<usize>,
        mut add: impl FnMut(usize, usize) -> ElemSet,
    ) -> Self {
        let m = names.len();
        let mut table = vec![ElemSet::EMPTY; m * (m + 1) / 2];
        for b in 0..m {
            for a in 0..=b {
                table[tri(a, b)] = add(a, b);
            }
        }
        FiniteHyperfield { names, zero, one, neg, mul, add: table }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn minus_one(&self) -> usize {
        self.neg[self.one]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b]
    }

    pub fn add(&self, a: usize, b: usize) -> ElemSet {
        self.add[tri(a, b)]
    }

    /// `⋃ {a + b : a ∈ xs, b ∈ ys}`.
    pub fn add_sets(&self, xs: ElemSet, ys: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for a in xs.iter() {
            for b in ys.iter() {
                out = out.union(self.add(a, b));
            }
        }
        out
    }

    pub fn carrier(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| a != self.zero)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.len()).find(|&b| self.mul(a, b) == self.one)
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Element lookup by name, falling back to `-name` meaning the negation
    /// of `name`.
    pub fn parse_element(&self, name: &str) -> Result<usize> {
        let name = name.trim();
        if let Some(id) = self.id_of(name) {
            return Ok(id);
        }
        if let Some(rest) = name.strip_prefix('-') {
            if let Some(id) = self.id_of(rest) {
                return Ok(self.neg(id));
            }
        }
        Err(Error::input(format!("unknown element {name:?}; known: {}", self.names.join(" "))))
    }

    /// Full row-major addition table.
    pub fn add_table(&self) -> Vec<ElemSet> {
        let m = self.len();
        (0..m * m).map(|i| self.add(i / m, i % m)).collect()
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    /// Copy with `a + b` (and `b + a`) replaced.
    pub fn with_sum(&self, a: usize, b: usize, sum: ElemSet) -> Self {
        let mut out = self.clone();
        out.add[tri(a, b)] = sum;
        out
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.len());
        self.names = names;
        self
    }

    pub fn set_name(&self, s: ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Levels of the hyperstructure ladder, lowest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HyperLevel {
    None,
    Hypermonoid,
    Hypergroup,
    Hyperring,
    Hyperfield,
}

pub type AxiomReport = Report<HyperLevel>;

/// Checks the hypermonoid, hypergroup, hyperring and hyperfield axioms in
/// that order, stopping at the first level with a failure. All failed
/// axioms of that level are reported with their first witness.
pub fn check_hyperfield(f: &FiniteHyperfield) -> AxiomReport {
    let m = f.len();
    let zero = f.zero;
    let one = f.one;

    let mut c = Collector::new();
    for a in 0..m {
        c.check(f.add(a, zero) == ElemSet::singleton(a), "hypermonoid.i neutral", &[a], || {
            format!("{} + {} = {}", f.name(a), f.name(zero), f.set_name(f.add(a, zero)))
        });
        for b in 0..m {
            c.check(f.add(a, b) == f.add(b, a), "hypermonoid.ii commutativity", &[a, b], String::new);
        }
    }
    for a in 0..m {
        for b in 0..m {
            let ab = f.add(a, b);
            for x in 0..m {
                let left = f.add_sets(ab, ElemSet::singleton(x));
                let right = f.add_sets(ElemSet::singleton(a), f.add(b, x));
                c.check(left == right, "hypermonoid.iii associativity", &[a, b, x], || {
                    format!("({} + {}) + {} = {} but {} + ({} + {}) = {}", f.name(a), f.name(b), f.name(x), f.set_name(left), f.name(a), f.name(b), f.name(x), f.set_name(right))
                });
            }
        }
    }
    if !c.is_empty() {
        return Report { level_passed: HyperLevel::None, failures: c.into_failures() };
    }

    let mut c = Collector::new();
    for a in 0..m {
        c.check(f.neg(f.neg(a)) == a, "hypergroup.neg involution", &[a], || format!("-(-{}) = {}", f.name(a), f.name(f.neg(f.neg(a)))));
    }
    for a in 0..m {
        c.check(f.add(a, f.neg(a)).contains(zero), "hypergroup.i 0 in a + (-a)", &[a], || {
            format!("{} + {} = {}", f.name(a), f.name(f.neg(a)), f.set_name(f.add(a, f.neg(a))))
        });
    }
    for b in 0..m {
        for x in 0..m {
            for a in f.add(b, x).iter() {
                c.check(f.add(a, f.neg(b)).contains(x), "hypergroup.ii reversibility", &[a, b, x], || {
                    format!("{} in {} + {} but {} not in {} + {}", f.name(a), f.name(b), f.name(x), f.name(x), f.name(a), f.name(f.neg(b)))
                });
            }
        }
    }
    if !c.is_empty() {
        return Report { level_passed: HyperLevel::Hypermonoid, failures: c.into_failures() };
    }

    let mut c = Collector::new();
    for a in 0..m {
        c.check(f.mul(one, a) == a, "hyperring.monoid identity", &[a], || format!("1 * {} = {}", f.name(a), f.name(f.mul(one, a))));
        for b in 0..m {
            c.check(f.mul(a, b) == f.mul(b, a), "hyperring.monoid commutativity", &[a, b], String::new);
            for x in 0..m {
                c.check(f.mul(f.mul(a, b), x) == f.mul(a, f.mul(b, x)), "hyperring.monoid associativity", &[a, b, x], String::new);
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for x in 0..m {
                let left = f.add(b, x).map(|y| f.mul(a, y));
                let right = f.add(f.mul(a, b), f.mul(a, x));
                c.check(left == right, "hyperring.ii distributivity", &[a, b, x], || {
                    format!("{} * ({} + {}) = {} but {} * {} + {} * {} = {}", f.name(a), f.name(b), f.name(x), f.set_name(left), f.name(a), f.name(b), f.name(a), f.name(x), f.set_name(right))
                });
            }
        }
    }
    for a in 0..m {
        c.check(f.mul(zero, a) == zero, "hyperring.i 0 * a = 0", &[a], || format!("0 * {} = {}", f.name(a), f.name(f.mul(zero, a))));
    }
    c.check(zero != one, "hyperring.iii 0 != 1", &[zero], String::new);
    if !c.is_empty() {
        return Report { level_passed: HyperLevel::Hypergroup, failures: c.into_failures() };
    }

    let mut c = Collector::new();
    for a in f.nonzero() {
        c.check(f.inverse(a).is_some(), "hyperfield inverse", &[a], || format!("{} has no inverse", f.name(a)));
    }
    if !c.is_empty() {
        return Report { level_passed: HyperLevel::Hyperring, failures: c.into_failures() };
    }
    Report { level_passed: HyperLevel::Hyperfield, failures: Vec::new() }
}

pub(crate) fn require_hyperfield(f: &FiniteHyperfield, what: &str) -> Result<()> {
    let report = check_hyperfield(f);
    match report.failures.first() {
        None => Ok(()),
        Some(fail) => Err(Error::precondition(format!("{what} needs a hyperfield; {fail}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::euclidean3;
    use crate::finite_field::ff_make;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn euclidean_table_matches_literal_entries() {
        let e = euclidean3();
        assert_eq!(e.add(1, 1), set(&[1]));
        assert_eq!(e.add(2, 2), set(&[2]));
        assert_eq!(e.add(1, 2), set(&[0, 1, 2]));
        assert_eq!(e.add(0, 2), set(&[2]));
        let r = check_hyperfield(&e);
        assert_eq!(r.level_passed, HyperLevel::Hyperfield, "{:?}", r.failures);
    }

    #[test]
    fn collapsing_the_opposite_sum_breaks_associativity() {
        let e = euclidean3();
        let broken = e.with_sum(1, 2, set(&[0]));
        let r = check_hyperfield(&broken);
        assert_eq!(r.level_passed, HyperLevel::None);
        let assoc = r.failure("hypermonoid.iii associativity").expect("associativity must fail");
        // (1 + 1) + (-1) = {0} while 1 + (1 + (-1)) = {1}
        assert_eq!(assoc.witness.len(), 3);
        assert!(r.failures.iter().all(|f| f.axiom.starts_with("hypermonoid")));
    }

    #[test]
    fn non_commutative_ingest_is_rejected() {
        let names: Vec<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
        let add = vec![set(&[0]), set(&[1]), set(&[0]), set(&[0])];
        let err = FiniteHyperfield::new(names, 0, 1, vec![0, 1], vec![0, 0, 0, 1], add).unwrap_err();
        assert!(matches!(err, Error::Law { .. }));
    }

    #[test]
    fn shape_errors() {
        let names: Vec<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
        assert!(FiniteHyperfield::new(names.clone(), 0, 1, vec![0], vec![0, 0, 0, 1], vec![set(&[0]); 4]).is_err());
        let mut add = vec![set(&[0]); 4];
        add[3] = ElemSet::EMPTY;
        assert!(FiniteHyperfield::new(names, 0, 1, vec![0, 1], vec![0, 0, 0, 1], add).is_err());
    }

    #[test]
    fn zero_equal_one_is_reported() {
        let f = FiniteHyperfield::new(vec!["0".into()], 0, 0, vec![0], vec![0], vec![set(&[0])]).unwrap();
        let r = check_hyperfield(&f);
        assert_eq!(r.level_passed, HyperLevel::Hypergroup);
        assert!(r.failure("hyperring.iii 0 != 1").is_some());
    }

    #[test]
    fn element_parsing_with_negation() {
        let k = ff_make(5, 1, None).unwrap();
        let f = from_field(&k).unwrap();
        assert_eq!(f.parse_element("3").unwrap(), 3);
        assert_eq!(f.parse_element("-1").unwrap(), 4);
        assert!(f.parse_element("7").is_err());
        let e = euclidean3();
        assert_eq!(e.parse_element("-1").unwrap(), 2);
        assert_eq!(e.parse_element("--1").unwrap(), 1);
    }
}
