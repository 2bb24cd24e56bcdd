//! Special groups in the sense of Dickmann and Miraglia.

use serde::{Deserialize, Serialize};

use super::isometry::{all_tuples, BinaryIsometry, HyperfieldIsometry, IsometryEngine, Normalization};
use super::FORM_BUDGET;
use crate::error::{Error, Result};
use crate::hyperfield::{require_hyperfield, FiniteHyperfield};
use crate::report::{Collector, Report};

/// An exponent-2 group with distinguished `-1` and a binary isometry
/// relation `(a, b) ≅ (c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialGroupTable {
    names: Vec<String>,
    mul: Vec<usize>,
    one: usize,
    minus_one: usize,
    rel: Vec<bool>,
    #[serde(skip)]
    elems: Vec<usize>,
}

impl SpecialGroupTable {
    pub fn new(names: Vec<String>, mul: Vec<usize>, one: usize, minus_one: usize, rel: Vec<bool>) -> Result<Self> {
        let g = names.len();
        if g == 0 {
            return Err(Error::input("a special group needs at least one element"));
        }
        if mul.len() != g * g || rel.len() != g.pow(4) {
            return Err(Error::input(format!("tables for a group of order {g} have the wrong shape")));
        }
        if one >= g || minus_one >= g || mul.iter().any(|&x| x >= g) {
            return Err(Error::input("group table entry out of range"));
        }
        Ok(SpecialGroupTable { names, mul, one, minus_one, rel, elems: (0..g).collect() })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn idx(&self, a: usize, b: usize, c: usize, d: usize) -> usize {
        let g = self.order();
        ((a * g + b) * g + c) * g + d
    }

    pub fn related(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        self.rel[self.idx(a, b, c, d)]
    }

    /// Copy with one entry of the binary relation overwritten.
    pub fn with_relation(&self, pair: [usize; 4], value: bool) -> Self {
        let mut s = self.clone();
        let i = s.idx(pair[0], pair[1], pair[2], pair[3]);
        s.rel[i] = value;
        s
    }
}

impl BinaryIsometry for SpecialGroupTable {
    fn elements(&self) -> &[usize] {
        &self.elems
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == self.one).unwrap_or(a)
    }

    fn one(&self) -> usize {
        self.one
    }

    fn minus_one(&self) -> usize {
        self.minus_one
    }

    fn binary(&self, a1: usize, a2: usize, b1: usize, b2: usize) -> bool {
        self.related(a1, a2, b1, b2)
    }

    fn name(&self, a: usize) -> String {
        self.names[a].clone()
    }
}

/// The nonzero elements of `F` with the binary isometry of forms.
pub fn special_group_of(f: &FiniteHyperfield) -> Result<SpecialGroupTable> {
    require_hyperfield(f, "special group extraction")?;
    let ids: Vec<usize> = f.nonzero().collect();
    let mut pos = vec![usize::MAX; f.len()];
    for (i, &a) in ids.iter().enumerate() {
        pos[a] = i;
    }
    for &a in &ids {
        if f.mul(a, a) != f.one() {
            return Err(Error::precondition(format!(
                "{}^2 = {} is not 1, so the nonzero elements do not form an exponent-2 group",
                f.name(a),
                f.name(f.mul(a, a))
            )));
        }
    }
    let rule = HyperfieldIsometry::new(f);
    let g = ids.len();
    let names = ids.iter().map(|&a| f.name(a).to_string()).collect();
    let mul = ids.iter().flat_map(|&a| ids.iter().map(|&b| pos[f.mul(a, b)]).collect::<Vec<_>>()).collect();
    let mut rel = Vec::with_capacity(g.pow(4));
    for &a in &ids {
        for &b in &ids {
            for &c in &ids {
                for &d in &ids {
                    rel.push(rule.binary(a, b, c, d));
                }
            }
        }
    }
    SpecialGroupTable::new(names, mul, pos[f.one()], pos[f.minus_one()], rel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpecialGroupLevel {
    None,
    Group,
    PreSpecial,
    Special,
}

/// Group axioms with exponent 2, the pre-special axioms i–vi, then `≅_n`
/// as an equivalence for `3 ≤ n ≤ nmax`.
pub fn check_special_group(s: &SpecialGroupTable, nmax: usize) -> Result<Report<SpecialGroupLevel>> {
    let g = s.order();
    for n in 3..=nmax {
        if g.checked_pow(n as u32).is_none_or(|k| k > FORM_BUDGET) {
            return Err(Error::guard(format!("{g}^{n} tuples exceed the budget of {FORM_BUDGET} per length")));
        }
    }
    let m = |a, b| s.mul(a, b);
    let one = s.one();
    let neg = |a| m(s.minus_one(), a);
    let mut c = Collector::new();
    for a in 0..g {
        c.check(m(one, a) == a && m(a, one) == a, "sg.group identity", &[a], String::new);
        c.check(m(a, a) == one, "sg.group exponent 2", &[a], || format!("{}^2 = {}", s.names[a], s.names[m(a, a)]));
        for b in 0..g {
            c.check(m(a, b) == m(b, a), "sg.group commutativity", &[a, b], String::new);
            for x in 0..g {
                c.check(m(m(a, b), x) == m(a, m(b, x)), "sg.group associativity", &[a, b, x], String::new);
            }
        }
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: SpecialGroupLevel::None, failures: c.into_failures() });
    }
    let r = |a, b, x, d| s.related(a, b, x, d);
    let pairs: Vec<(usize, usize)> = (0..g).flat_map(|a| (0..g).map(move |b| (a, b))).collect();
    for &(a, b) in &pairs {
        c.check(r(a, b, a, b), "sg.i reflexivity", &[a, b], String::new);
        c.check(r(a, b, b, a), "sg.ii (a, b) = (b, a)", &[a, b], String::new);
        for &(x, d) in &pairs {
            if !r(a, b, x, d) {
                continue;
            }
            c.check(r(x, d, a, b), "sg.i symmetry", &[a, b, x, d], String::new);
            for &(e, h) in &pairs {
                if r(x, d, e, h) {
                    c.check(r(a, b, e, h), "sg.i transitivity", &[a, b, x, d, e, h], String::new);
                }
            }
            c.check(m(a, b) == m(x, d), "sg.iv ab = cd", &[a, b, x, d], String::new);
            c.check(r(a, neg(x), neg(b), d), "sg.v (a, -c) = (-b, d)", &[a, b, x, d], String::new);
            for y in 0..g {
                c.check(r(m(y, a), m(y, b), m(y, x), m(y, d)), "sg.vi scaling", &[a, b, x, d, y], String::new);
            }
        }
    }
    for a in 0..g {
        c.check(r(a, neg(a), one, s.minus_one()), "sg.iii (a, -a) = (1, -1)", &[a], || {
            format!("({}, {}) is not related to (1, -1)", s.names[a], s.names[neg(a)])
        });
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: SpecialGroupLevel::Group, failures: c.into_failures() });
    }
    let mut engine = IsometryEngine::new(s, Normalization::Exact);
    for n in 3..=nmax {
        let tuples = all_tuples(&s.elems, n);
        let k = tuples.len();
        let rel: Vec<bool> = (0..k * k).map(|i| engine.isometric(&tuples[i / k], &tuples[i % k])).collect();
        let label = format!("sg.equivalence of n = {n}");
        for i in 0..k {
            c.check(rel[i * k + i], &label, &tuples[i], || "not reflexive".to_string());
            for j in 0..k {
                if !rel[i * k + j] {
                    continue;
                }
                let wit = || [tuples[i].clone(), tuples[j].clone()].concat();
                c.check(rel[j * k + i], &label, &wit(), || "not symmetric".to_string());
                for l in 0..k {
                    if rel[j * k + l] && !rel[i * k + l] {
                        c.record(&label, &[wit(), tuples[l].clone()].concat(), || "not transitive".to_string());
                    }
                }
            }
        }
    }
    if !c.is_empty() {
        return Ok(Report { level_passed: SpecialGroupLevel::PreSpecial, failures: c.into_failures() });
    }
    Ok(Report { level_passed: SpecialGroupLevel::Special, failures: Vec::new() })
}
