use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_core::builtins::{euclidean3, example_sq_7, walking_supremum, BUILTIN_NAMES};
use witt_core::finite_field::{ff_make, parse_field_size, FiniteField};
use witt_core::format::{parse_document, write_hyperfield, write_poset, write_presentable, write_witt, Document};
use witt_core::hyperfield::{
    check_hyperfield, from_field, hyperfield_isomorphic, prime_hyperfield, quadratic_hyperfield, FiniteHyperfield,
    MAX_ISOMORPHISM_SIZE,
};
use witt_core::oracle::{
    classical_isometric, classical_witt_ring, congruence_classes, field_of_size, CHAR2_CONVENTION, MAX_ORACLE_DIM,
    ORACLE_FIELDS,
};
use witt_core::poset::{check_presentable as check_poset, random_poset, FinitePointedPoset};
use witt_core::presentable::{
    check_presentable, powerset_of_hyperfield, quotient_mod_multiplicative_set, squares_pipeline, supercompact_hyperfield,
    ExplicitPresentableRing, PresentableLevel, SquaresMode,
};
use witt_core::quadratic::{check_prequadratic, check_quadratic, witt_ring, Form, WittContext, FORM_BUDGET};
use witt_core::witt::ring_isomorphic;
use witt_core::{Error, Result};

use crate::report::Outcome;
use crate::{Command, Source};

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn field_from(size: &str, modulus: Option<&str>) -> Result<FiniteField> {
    let (p, n) = parse_field_size(size)?;
    let coeffs = modulus
        .map(|m| {
            m.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| usage(format!("modulus coefficient `{c}` is not a number"))))
                .collect::<Result<Vec<u32>>>()
        })
        .transpose()?;
    ff_make(p, n, coeffs.as_deref())
}

fn read_document(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse { line, msg } => Error::Parse { line, msg: format!("{}: {msg}", path.display()) },
        other => other,
    })
}

enum Loaded {
    Poset(FinitePointedPoset),
    Hyperfield(FiniteHyperfield),
    Presentable(ExplicitPresentableRing),
}

impl Source {
    fn count(&self) -> usize {
        [self.input.is_some(), self.builtin.is_some(), self.field.is_some()].iter().filter(|&&b| b).count()
    }

    fn load(&self) -> Result<(String, Loaded)> {
        if self.count() != 1 {
            return Err(usage("give exactly one of --input, --builtin, --field"));
        }
        if let Some(path) = &self.input {
            let label = path.display().to_string();
            return match read_document(path)? {
                Document::Poset(p) => Ok((label, Loaded::Poset(p))),
                Document::Hyperfield(f) => Ok((label, Loaded::Hyperfield(f))),
                Document::Presentable(r) => Ok((label, Loaded::Presentable(r))),
                Document::Witt(_) => Err(usage("a Witt ring document is not an input structure")),
            };
        }
        if let Some(name) = &self.builtin {
            let loaded = match name.as_str() {
                "euclidean3" => Loaded::Hyperfield(euclidean3()),
                "walking-supremum" => Loaded::Poset(walking_supremum()),
                "example-sq-7" => Loaded::Presentable(example_sq_7()),
                _ => return Err(usage(format!("unknown builtin `{name}`; expected one of {}", BUILTIN_NAMES.join(", ")))),
            };
            return Ok((name.clone(), loaded));
        }
        let size = self.field.as_deref().expect("one source is present");
        let k = field_from(size, self.modulus.as_deref())?;
        if self.plain {
            Ok((format!("GF({})", k.size()), Loaded::Hyperfield(from_field(&k)?)))
        } else {
            Ok((format!("Q(GF({}))", k.size()), Loaded::Hyperfield(quadratic_hyperfield(&k))))
        }
    }

    fn hyperfield(&self) -> Result<(String, FiniteHyperfield)> {
        match self.load()? {
            (label, Loaded::Hyperfield(f)) => Ok((label, f)),
            (label, Loaded::Presentable(r)) => Ok((format!("supercompacts of {label}"), supercompact_hyperfield(&r)?)),
            (label, Loaded::Poset(_)) => Err(usage(format!("{label} is a poset, not a hyperfield"))),
        }
    }

    fn field_size(&self) -> Option<usize> {
        let size = self.field.as_deref()?;
        let (p, n) = parse_field_size(size).ok()?;
        Some((p as usize).pow(n))
    }
}

pub fn run(cmd: &Command, seed: u64) -> Result<Outcome> {
    let mut out = Outcome::default();
    match cmd {
        Command::CheckPoset { source, random } => cmd_check_poset(&mut out, source, *random, seed)?,
        Command::CheckHyperfield { source } => {
            let (label, f) = source.hyperfield()?;
            out.line(format!("structure: {label}, {} elements", f.len()));
            let r = check_hyperfield(&f);
            out.check("hyperfield", r.level_passed, r.passed(), r.failures);
        }
        Command::CheckPresentable { source } => cmd_check_presentable(&mut out, source)?,
        Command::Qhf { source } => {
            if source.field.is_none() {
                return Err(usage("qhf needs --field"));
            }
            let (label, f) = source.hyperfield()?;
            out.line(format!("structure: {label}, {} elements", f.len()));
            hyperfield_checks(&mut out, &f);
            out.document("hyperfield", write_hyperfield(&f));
            out.line(write_hyperfield(&f));
        }
        Command::Prime { source } => {
            let (label, f) = source.hyperfield()?;
            let g = prime_hyperfield(&f)?;
            out.line(format!("structure: prime addition on {label}, {} elements", g.len()));
            let r = check_hyperfield(&g);
            out.check("hyperfield", r.level_passed, r.passed(), r.failures);
            out.document("hyperfield", write_hyperfield(&g));
            out.line(write_hyperfield(&g));
        }
        Command::Quotient { source, subset } => {
            let (label, f) = source.hyperfield()?;
            let t = subset.split(',').map(|s| f.parse_element(s.trim())).collect::<Result<Vec<_>>>()?;
            let g = quotient_mod_multiplicative_set(&f, &t)?;
            out.line(format!("structure: {label} modulo {{{subset}}}, {} classes", g.len()));
            let r = check_hyperfield(&g);
            out.check("hyperfield", r.level_passed, r.passed(), r.failures);
            out.document("hyperfield", write_hyperfield(&g));
            out.line(write_hyperfield(&g));
        }
        Command::Pipeline { source, literal_squares } => cmd_pipeline(&mut out, source, *literal_squares)?,
        Command::Isom { source, forms } => cmd_isom(&mut out, source, forms)?,
        Command::Witt { source, max_dim } => cmd_witt(&mut out, source, *max_dim)?,
        Command::Oracle { source, max_dim, congruence_dim, forms } => {
            cmd_oracle(&mut out, source, *max_dim, *congruence_dim, forms)?
        }
    }
    Ok(out)
}

fn hyperfield_checks(out: &mut Outcome, f: &FiniteHyperfield) {
    let r = check_hyperfield(f);
    let ok = r.passed();
    out.check("hyperfield", r.level_passed, ok, r.failures);
    if ok {
        let r = check_prequadratic(f);
        out.check("pre-quadratic", r.level_passed, r.passed(), r.failures);
    }
}

#[derive(Debug)]
enum PosetLevel {
    None,
    WeaklyPresentable,
    Presentable,
}

fn cmd_check_poset(out: &mut Outcome, source: &Source, random: Option<usize>, seed: u64) -> Result<()> {
    let (label, p) = match random {
        Some(max) => {
            if source.count() != 0 {
                return Err(usage("--random replaces --input, --builtin and --field"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (format!("random poset (seed {seed})"), random_poset(&mut rng, max))
        }
        None => match source.load()? {
            (label, Loaded::Poset(p)) => (label, p),
            (label, Loaded::Presentable(r)) => (label, r.poset().clone()),
            (label, Loaded::Hyperfield(_)) => return Err(usage(format!("{label} is a hyperfield, not a poset"))),
        },
    };
    out.line(format!("poset: {label}, {} elements, basepoint {}", p.len(), p.name(p.basepoint())));
    let r = check_poset(&p)?;
    out.line(format!("weakly presentable: {}", yes_no(r.weakly_presentable)));
    out.line(format!("basepoint minimal: {}", yes_no(r.basepoint_minimal)));
    out.line(format!("minimals compact: {}", yes_no(r.all_minimals_compact)));
    if let Some(u) = r.unique_representation {
        out.line(format!("unique representation: {}", yes_no(u)));
    }
    if let Some(a) = r.equivalence_agrees {
        out.line(format!("compactness and unique representation agree: {}", yes_no(a)));
    }
    let names = |xs: &[usize]| xs.iter().map(|&x| p.name(x)).collect::<Vec<_>>().join(",");
    let failures = r
        .witnesses
        .iter()
        .map(|w| witt_core::report::Failure {
            axiom: format!("poset.{}", w.axiom),
            witness: w.elements.clone(),
            detail: format!("elements {{{}}}, subset {{{}}}", names(&w.elements), names(&w.subset)),
            count: 1,
        })
        .collect();
    let level = if r.passed() {
        PosetLevel::Presentable
    } else if r.weakly_presentable {
        PosetLevel::WeaklyPresentable
    } else {
        PosetLevel::None
    };
    out.check("presentable poset", level, r.passed() && r.equivalence_agrees != Some(false), failures);
    out.document("poset", write_poset(&p));
    Ok(())
}

fn cmd_check_presentable(out: &mut Outcome, source: &Source) -> Result<()> {
    let (label, r) = match source.load()? {
        (label, Loaded::Presentable(r)) => (label, r),
        (label, Loaded::Hyperfield(f)) => (format!("P*({label})"), powerset_of_hyperfield(&f)?),
        (label, Loaded::Poset(_)) => return Err(usage(format!("{label} is a poset without operations"))),
    };
    out.line(format!("structure: {label}, {} elements, {} supercompacts", r.len(), r.supercompacts().len()));
    out.line(format!("claimed field: {}", yes_no(r.is_field())));
    let rep = check_presentable(&r)?;
    let target = if r.is_field() { PresentableLevel::Field } else { PresentableLevel::Ring };
    let ok = rep.level_passed >= target;
    let failures = if ok { Vec::new() } else { rep.failures };
    out.check("presentable", rep.level_passed, ok, failures);
    out.document("presentable", write_presentable(&r));
    Ok(())
}

fn cmd_pipeline(out: &mut Outcome, source: &Source, literal: bool) -> Result<()> {
    let size = source.field.as_deref().ok_or_else(|| usage("pipeline needs --field"))?;
    if source.input.is_some() || source.builtin.is_some() {
        return Err(usage("pipeline takes only --field"));
    }
    let k = field_from(size, source.modulus.as_deref())?;
    let mode = if literal { SquaresMode::Literal } else { SquaresMode::Supercompact };
    let fk = from_field(&k)?;
    let pk = prime_hyperfield(&fk)?;
    let g = squares_pipeline(&pk, mode)?;
    out.line(format!("pipeline: squares quotient of the prime hyperfield of GF({}), {} elements", k.size(), g.len()));
    hyperfield_checks(out, &g);
    let q = quadratic_hyperfield(&k);
    if g.len() <= MAX_ISOMORPHISM_SIZE && q.len() <= MAX_ISOMORPHISM_SIZE {
        let iso = hyperfield_isomorphic(&g, &q)?;
        out.line(format!("isomorphic to Q(GF({})): {}", k.size(), yes_no(iso.is_some())));
        out.failed |= iso.is_none();
    } else {
        out.line(format!("isomorphic to Q(GF({})): not decided above {MAX_ISOMORPHISM_SIZE} elements", k.size()));
    }
    out.document("hyperfield", write_hyperfield(&g));
    Ok(())
}

fn cmd_isom(out: &mut Outcome, source: &Source, forms: &[String]) -> Result<()> {
    let [a, b] = forms else {
        return Err(usage(format!("isom needs exactly two --form arguments, got {}", forms.len())));
    };
    let (label, f) = source.hyperfield()?;
    let phi = Form::parse(&f, a)?;
    let psi = Form::parse(&f, b)?;
    if phi.dim() != psi.dim() {
        return Err(usage(format!("forms have dimensions {} and {}", phi.dim(), psi.dim())));
    }
    let mut cx = WittContext::new(&f)?;
    let iso = cx.isometric(phi.entries(), psi.entries());
    out.line(format!("structure: {label}"));
    out.line(format!(
        "{} and {}: {}",
        phi.display(&f),
        psi.display(&f),
        if iso { "isometric" } else { "not isometric" }
    ));
    out.line(format!("Witt equivalent: {}", yes_no(cx.witt_equivalent(phi.entries(), psi.entries())?)));
    Ok(())
}

fn cmd_witt(out: &mut Outcome, source: &Source, dmax: usize) -> Result<()> {
    let (label, f) = source.hyperfield()?;
    out.line(format!("structure: {label}, {} elements", f.len()));
    let r = check_hyperfield(&f);
    let ok = r.passed();
    out.check("hyperfield", r.level_passed, ok, r.failures);
    if !ok {
        return Ok(());
    }
    let g = f.len() - 1;
    let qdim = (1..=dmax).take_while(|&d| g.checked_pow(d as u32).is_some_and(|n| n <= FORM_BUDGET)).last().unwrap_or(1);
    let q = check_quadratic(&f, qdim)?;
    let ok = q.report.passed();
    out.check(&format!("quadratic (forms of dim <= {qdim})"), q.report.level_passed, ok, q.report.failures);
    if !ok {
        return Ok(());
    }
    let w = witt_ring(&f, dmax)?;
    out.line(w.summary());
    out.line(write_witt(&w));
    out.document("witt", write_witt(&w));
    match source.field_size().filter(|q| ORACLE_FIELDS.contains(q) && !source.plain) {
        Some(size) if w.is_finite() => {
            let c = classical_witt_ring(size, dmax.min(MAX_ORACLE_DIM))?;
            let matched = c.is_finite() && ring_isomorphic(&w, &c)?.is_some();
            if size % 2 == 0 {
                out.line(format!("oracle convention: {CHAR2_CONVENTION}"));
            }
            out.line(format!("oracle: {}", c.summary()));
            out.line(format!("oracle match: {}", yes_no(matched)));
            out.failed |= !matched;
        }
        _ => out.line("oracle match: n/a"),
    }
    Ok(())
}

fn cmd_oracle(out: &mut Outcome, source: &Source, dmax: usize, cdim: Option<usize>, forms: &[String]) -> Result<()> {
    let size = source.field_size().ok_or_else(|| usage("oracle needs --field"))?;
    out.line(format!("field: GF({size})"));
    if size % 2 == 0 {
        out.line(format!("convention: {CHAR2_CONVENTION}"));
    }
    let w = classical_witt_ring(size, dmax)?;
    out.line(w.summary());
    out.line(write_witt(&w));
    out.document("witt", write_witt(&w));
    if let Some(d) = cdim {
        let classes = congruence_classes(size, d)?;
        out.line(format!("congruence classes of nondegenerate {d}x{d} symmetric matrices: {}", classes.len()));
    }
    match forms {
        [] => {}
        [a, b] => {
            let k = field_of_size(size)?;
            let parse = |s: &str| -> Result<Vec<usize>> {
                s.split(',')
                    .map(|t| {
                        let t = t.trim();
                        k.elements().find(|&x| k.element_name(x) == t).ok_or_else(|| usage(format!("`{t}` is not an element of GF({size})")))
                    })
                    .collect()
            };
            let (phi, psi) = (parse(a)?, parse(b)?);
            let iso = classical_isometric(&k, &phi, &psi)?;
            out.line(format!("<{a}> and <{b}>: {}", if iso { "isometric" } else { "not isometric" }));
        }
        _ => return Err(usage(format!("oracle takes zero or two --form arguments, got {}", forms.len()))),
    }
    Ok(())
}
