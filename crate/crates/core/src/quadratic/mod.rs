//! Forms over pre-quadratic hyperfields: isometry, Witt equivalence, the
//! Witt ring and the special group of nonzero elements.

mod isometry;
mod special;
mod wittring;

pub use isometry::{BinaryIsometry, HyperfieldIsometry, IsometryEngine, Normalization};
pub use special::{check_special_group, special_group_of, SpecialGroupLevel, SpecialGroupTable};
pub use wittring::{anisotropic_part, is_isotropic, witt_equivalent, witt_ring, WittContext, MAX_WITT_DIM};

pub(crate) use isometry::all_tuples;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperfield::{check_hyperfield, FiniteHyperfield};
use crate::report::{Collector, Report};

/// Largest number of forms per dimension enumerated by the exhaustive checks.
pub const FORM_BUDGET: usize = 512;

/// A nonempty tuple of nonzero element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Form(Vec<usize>);

impl Form {
    pub fn new(f: &FiniteHyperfield, entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("a form needs at least one entry"));
        }
        for &a in &entries {
            if a >= f.len() {
                return Err(Error::input(format!("entry id {a} outside the carrier")));
            }
            if a == f.zero() {
                return Err(Error::input("form entries must be nonzero"));
            }
        }
        Ok(Form(entries))
    }

    /// Parses comma-separated element names such as `1,-1,1`.
    pub fn parse(f: &FiniteHyperfield, s: &str) -> Result<Self> {
        let entries = s.split(',').map(|t| f.parse_element(t)).collect::<Result<Vec<_>>>()?;
        Form::new(f, entries)
    }

    pub(crate) fn from_entries(entries: Vec<usize>) -> Self {
        debug_assert!(!entries.is_empty());
        Form(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sorted(&self) -> Form {
        let mut v = self.0.clone();
        v.sort_unstable();
        Form(v)
    }

    pub fn display<'a>(&'a self, f: &'a FiniteHyperfield) -> FormDisplay<'a> {
        FormDisplay { form: self, f }
    }
}

pub struct FormDisplay<'a> {
    form: &'a Form,
    f: &'a FiniteHyperfield,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.form.0.iter().map(|&a| self.f.name(a)).collect();
        write!(out, "<{}>", names.join(","))
    }
}

pub fn orthogonal_sum(phi: &Form, psi: &Form) -> Form {
    Form(phi.0.iter().chain(&psi.0).copied().collect())
}

pub fn tensor_product(f: &FiniteHyperfield, phi: &Form, psi: &Form) -> Form {
    Form(phi.0.iter().flat_map(|&a| psi.0.iter().map(move |&b| f.mul(a, b))).collect())
}

/// Levels of the quadratic ladder, lowest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuadLevel {
    NotHyperfield,
    Hyperfield,
    PreQuadratic,
    Quadratic,
}

pub type QuadReport = Report<QuadLevel>;

fn hyperfield_gate(f: &FiniteHyperfield) -> Option<QuadReport> {
    let r = check_hyperfield(f);
    (!r.passed()).then_some(Report { level_passed: QuadLevel::NotHyperfield, failures: r.failures })
}

/// Axioms i–iii: `a ∈ a + b` for nonzero `a`, the product rule
/// `a ∈ 1 − b, a ∈ 1 − c ⇒ a ∈ 1 − bc`, and `a² = 1`.
pub fn check_prequadratic(f: &FiniteHyperfield) -> QuadReport {
    if let Some(r) = hyperfield_gate(f) {
        return r;
    }
    let m = f.len();
    let one = f.one();
    let mut c = Collector::new();
    for a in f.nonzero() {
        for b in 0..m {
            c.check(f.add(a, b).contains(a), "prequadratic.i a in a + b", &[a, b], || {
                format!("{} + {} = {}", f.name(a), f.name(b), f.set_name(f.add(a, b)))
            });
        }
    }
    for a in 0..m {
        for b in 0..m {
            if !f.add(one, f.neg(b)).contains(a) {
                continue;
            }
            for x in 0..m {
                if f.add(one, f.neg(x)).contains(a) {
                    let bx = f.mul(b, x);
                    c.check(f.add(one, f.neg(bx)).contains(a), "prequadratic.ii product rule", &[a, b, x], || {
                        format!("{} is in 1 - {} and 1 - {} but not in 1 - {}", f.name(a), f.name(b), f.name(x), f.name(bx))
                    });
                }
            }
        }
    }
    for a in f.nonzero() {
        c.check(f.mul(a, a) == one, "prequadratic.iii a^2 = 1", &[a], || format!("{}^2 = {}", f.name(a), f.name(f.mul(a, a))));
    }
    if !c.is_empty() {
        return Report { level_passed: QuadLevel::Hyperfield, failures: c.into_failures() };
    }
    Report { level_passed: QuadLevel::PreQuadratic, failures: Vec::new() }
}

pub(crate) fn require_prequadratic(f: &FiniteHyperfield) -> Result<()> {
    let r = check_prequadratic(f);
    match r.failures.first() {
        None => Ok(()),
        Some(fail) => Err(Error::precondition(format!("needs a pre-quadratic hyperfield; {fail}"))),
    }
}

/// Result of [`check_quadratic`]: the ladder report plus, per dimension,
/// whether `≅` is an equivalence there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCheck {
    pub report: QuadReport,
    pub equivalence_by_dim: Vec<(usize, bool)>,
}

impl QuadraticCheck {
    /// The guaranteed part: `≅` is an equivalence on unary and binary forms.
    pub fn low_dims_hold(&self) -> bool {
        self.equivalence_by_dim.iter().filter(|(d, _)| *d <= 2).all(|(_, ok)| *ok)
    }
}

/// Checks that `≅` is reflexive, symmetric and transitive on all forms of
/// each dimension up to `dmax`, with forms taken as ordered tuples.
pub fn check_quadratic(f: &FiniteHyperfield, dmax: usize) -> Result<QuadraticCheck> {
    let pre = check_prequadratic(f);
    if !pre.passed() {
        return Ok(QuadraticCheck { report: pre, equivalence_by_dim: Vec::new() });
    }
    let rule = HyperfieldIsometry::new(f);
    let elems = rule.elements().to_vec();
    let g = elems.len();
    for d in 1..=dmax {
        if g.checked_pow(d as u32).is_none_or(|n| n > FORM_BUDGET) {
            return Err(Error::guard(format!(
                "{g}^{d} forms of dimension {d} exceed the budget of {FORM_BUDGET} forms per dimension"
            )));
        }
    }
    let mut engine = IsometryEngine::new(&rule, Normalization::Exact);
    let mut c = Collector::new();
    let mut by_dim = Vec::new();
    for d in 1..=dmax {
        let forms = all_tuples(&elems, d);
        let n = forms.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = engine.isometric(&forms[i], &forms[j]);
            }
        }
        let flat = |xs: &[&Vec<usize>]| xs.iter().flat_map(|v| v.iter().copied()).collect::<Vec<_>>();
        let show = |v: &[usize]| Form(v.to_vec()).display(f).to_string();
        let mut ok = true;
        for i in 0..n {
            if !rel[i * n + i] {
                ok = false;
                c.record("quadratic.reflexive", &flat(&[&forms[i]]), || format!("{} is not isometric to itself", show(&forms[i])));
            }
            for j in 0..n {
                if rel[i * n + j] && !rel[j * n + i] {
                    ok = false;
                    c.record("quadratic.symmetric", &flat(&[&forms[i], &forms[j]]), || {
                        format!("{} ≅ {} but not conversely", show(&forms[i]), show(&forms[j]))
                    });
                }
                if !rel[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if rel[j * n + k] && !rel[i * n + k] {
                        ok = false;
                        c.record("quadratic.transitive", &flat(&[&forms[i], &forms[j], &forms[k]]), || {
                            format!("{} ≅ {} ≅ {} but {} ≇ {}", show(&forms[i]), show(&forms[j]), show(&forms[k]), show(&forms[i]), show(&forms[k]))
                        });
                    }
                }
            }
        }
        by_dim.push((d, ok));
    }
    let report = if c.is_empty() {
        Report { level_passed: QuadLevel::Quadratic, failures: Vec::new() }
    } else {
        Report { level_passed: QuadLevel::PreQuadratic, failures: c.into_failures() }
    };
    Ok(QuadraticCheck { report, equivalence_by_dim: by_dim })
}

/// Decides `φ ≅ ψ` over a pre-quadratic hyperfield.
pub fn isometric(f: &FiniteHyperfield, phi: &Form, psi: &Form) -> Result<bool> {
    if phi.dim() != psi.dim() {
        return Err(Error::input(format!("cannot compare forms of dimensions {} and {}", phi.dim(), psi.dim())));
    }
    require_prequadratic(f)?;
    let rule = HyperfieldIsometry::new(f);
    let mut engine = IsometryEngine::new(&rule, Normalization::Sorted);
    Ok(engine.isometric(phi.entries(), psi.entries()))
}
