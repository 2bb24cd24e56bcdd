//! Line-oriented text documents for posets, hyperfields, presentable rings
//! and Witt rings.
//!
//! A document is a list of `key: value` lines. A key with an empty value
//! opens a block of indented rows, used for tables. Elements are referred
//! to by id, sets are written `{0,2}` with ids ascending, and `#` starts a
//! comment line.
//!
//! ```text
//! kind: hyperfield
//! elements: 0 1 -1
//! zero: 0
//! one: 1
//! neg: 0 2 1
//! mul:
//!   0 0 0
//!   0 1 2
//!   0 2 1
//! add:
//!   {0} {1} {2}
//!   {1} {1} {0,1,2}
//!   {2} {0,1,2} {2}
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::bitset::{ElemSet, ELEMSET_CAPACITY};
use crate::error::{Error, Result};
use crate::hyperfield::FiniteHyperfield;
use crate::poset::FinitePointedPoset;
use crate::presentable::ExplicitPresentableRing;
use crate::witt::{WittClass, WittRing, WittStatus};

/// Any structure a document can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Poset(FinitePointedPoset),
    Hyperfield(FiniteHyperfield),
    Presentable(ExplicitPresentableRing),
    Witt(WittRing),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::Hyperfield(_) => "hyperfield",
            Document::Presentable(_) => "presentable",
            Document::Witt(_) => "witt",
        }
    }

    pub fn render(&self) -> String {
        match self {
            Document::Poset(p) => write_poset(p),
            Document::Hyperfield(f) => write_hyperfield(f),
            Document::Presentable(r) => write_presentable(r),
            Document::Witt(w) => write_witt(w),
        }
    }
}

struct Entry {
    line: usize,
    value: String,
    rows: Vec<(usize, String)>,
}

struct Fields {
    entries: BTreeMap<String, Entry>,
    /// Line of the last nonblank line, for errors about missing keys.
    end: usize,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn split_fields(text: &str) -> Result<Fields> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut current: Option<String> = None;
    let mut end = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        end = line;
        if raw.starts_with(char::is_whitespace) {
            let Some(key) = &current else {
                return Err(perr(line, "indented row outside a table block"));
            };
            entries.get_mut(key).expect("block key was inserted").rows.push((line, trimmed.to_string()));
            continue;
        }
        let Some((key, value)) = trimmed.split_once(':') else {
            return Err(perr(line, format!("expected `key: value`, found `{trimmed}`")));
        };
        let key = key.trim().to_string();
        if entries.contains_key(&key) {
            return Err(perr(line, format!("duplicate key `{key}`")));
        }
        let value = value.trim().to_string();
        current = value.is_empty().then(|| key.clone());
        entries.insert(key, Entry { line, value, rows: Vec::new() });
    }
    Ok(Fields { entries, end })
}

impl Fields {
    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        for (k, e) in &self.entries {
            if !allowed.contains(&k.as_str()) {
                return Err(perr(e.line, format!("unknown key `{k}`")));
            }
        }
        Ok(())
    }

    fn get(&self, key: &str) -> Result<&Entry> {
        self.entries.get(key).ok_or_else(|| perr(self.end, format!("missing key `{key}`")))
    }

    fn value(&self, key: &str) -> Result<(usize, &str)> {
        let e = self.get(key)?;
        Ok((e.line, e.value.as_str()))
    }

    fn id(&self, key: &str, n: usize) -> Result<usize> {
        let (line, v) = self.value(key)?;
        parse_id(line, v, n)
    }

    fn ids(&self, key: &str, n: usize) -> Result<Vec<usize>> {
        let (line, v) = self.value(key)?;
        v.split_whitespace().map(|t| parse_id(line, t, n)).collect()
    }

    /// A square table of `n` rows with `n` cells each.
    fn table<T>(&self, key: &str, n: usize, cell: impl Fn(usize, &str) -> Result<T>) -> Result<Vec<T>> {
        let e = self.get(key)?;
        if !e.value.is_empty() {
            return Err(perr(e.line, format!("`{key}` takes a block of rows")));
        }
        if e.rows.len() != n {
            let line = e.rows.last().map_or(e.line, |r| r.0);
            return Err(perr(line, format!("`{key}` needs {n} rows, found {}", e.rows.len())));
        }
        let mut out = Vec::with_capacity(n * n);
        for (line, row) in &e.rows {
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != n {
                return Err(perr(*line, format!("`{key}` row needs {n} entries, found {}", cells.len())));
            }
            for c in cells {
                out.push(cell(*line, c)?);
            }
        }
        Ok(out)
    }
}

fn parse_id(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v: usize = tok.parse().map_err(|_| perr(line, format!("`{tok}` is not an element id")))?;
    if v >= n {
        return Err(perr(line, format!("element id {v} outside 0..{n}")));
    }
    Ok(v)
}

fn parse_set(line: usize, tok: &str, n: usize) -> Result<ElemSet> {
    let inner = tok
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| perr(line, format!("`{tok}` is not a set like {{0,2}}")))?;
    let mut s = ElemSet::EMPTY;
    if inner.is_empty() {
        return Ok(s);
    }
    for t in inner.split(',') {
        s.insert(parse_id(line, t.trim(), n)?);
    }
    Ok(s)
}

fn kind_of(fields: &Fields) -> Result<String> {
    let (_, v) = fields.value("kind")?;
    Ok(v.to_string())
}

fn expect_kind(fields: &Fields, kind: &str) -> Result<()> {
    let (line, v) = fields.value("kind")?;
    if v != kind {
        return Err(perr(line, format!("expected kind `{kind}`, found `{v}`")));
    }
    Ok(())
}

fn names_of(fields: &Fields) -> Result<Vec<String>> {
    let (line, v) = fields.value("elements")?;
    let names: Vec<String> = v.split_whitespace().map(str::to_string).collect();
    if names.is_empty() {
        return Err(perr(line, "no elements listed"));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(perr(line, format!("element name `{a}` repeated")));
        }
    }
    Ok(names)
}

fn at(fields: &Fields, key: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => perr(fields.entries.get(key).map_or(fields.end, |e| e.line), other.to_string()),
    }
}

fn push_row<T>(out: &mut String, row: &[T], cell: impl Fn(&T) -> String) {
    let cells: Vec<String> = row.iter().map(cell).collect();
    let _ = writeln!(out, "  {}", cells.join(" "));
}

fn set_token(s: ElemSet) -> String {
    let ids: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", ids.join(","))
}

fn join_ids(ids: &[usize]) -> String {
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_hyperfield(f: &FiniteHyperfield) -> String {
    let m = f.len();
    let mut out = String::new();
    let _ = writeln!(out, "kind: hyperfield");
    let _ = writeln!(out, "elements: {}", f.names().join(" "));
    let _ = writeln!(out, "zero: {}", f.zero());
    let _ = writeln!(out, "one: {}", f.one());
    let _ = writeln!(out, "neg: {}", join_ids(f.neg_table()));
    out.push_str("mul:\n");
    for row in f.mul_table().chunks(m) {
        push_row(&mut out, row, |x| x.to_string());
    }
    out.push_str("add:\n");
    for row in f.add_table().chunks(m) {
        push_row(&mut out, row, |&s| set_token(s));
    }
    out
}

pub fn parse_hyperfield(text: &str) -> Result<FiniteHyperfield> {
    let fields = split_fields(text)?;
    expect_kind(&fields, "hyperfield")?;
    fields.check_keys(&["kind", "elements", "zero", "one", "neg", "mul", "add"])?;
    hyperfield_from(&fields)
}

fn hyperfield_from(fields: &Fields) -> Result<FiniteHyperfield> {
    let names = names_of(fields)?;
    let m = names.len();
    if m > ELEMSET_CAPACITY {
        return Err(at(fields, "elements", Error::guard(format!("at most {ELEMSET_CAPACITY} elements"))));
    }
    let zero = fields.id("zero", m)?;
    let one = fields.id("one", m)?;
    let neg = fields.ids("neg", m)?;
    if neg.len() != m {
        return Err(perr(fields.value("neg")?.0, format!("`neg` needs {m} entries, found {}", neg.len())));
    }
    let mul = fields.table("mul", m, |l, t| parse_id(l, t, m))?;
    let add = fields.table("add", m, |l, t| parse_set(l, t, m))?;
    FiniteHyperfield::new(names, zero, one, neg, mul, add).map_err(|e| match e {
        Error::Law { .. } => e,
        other => at(fields, "add", other),
    })
}

pub fn write_poset(p: &FinitePointedPoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind: poset");
    write_poset_fields(&mut out, p);
    out
}

fn write_poset_fields(out: &mut String, p: &FinitePointedPoset) {
    let _ = writeln!(out, "elements: {}", p.names().join(" "));
    let _ = writeln!(out, "basepoint: {}", p.basepoint());
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    let _ = writeln!(out, "covers: {}", covers.join(" "));
}

pub fn parse_poset(text: &str) -> Result<FinitePointedPoset> {
    let fields = split_fields(text)?;
    expect_kind(&fields, "poset")?;
    fields.check_keys(&["kind", "elements", "basepoint", "covers"])?;
    poset_from(&fields)
}

fn poset_from(fields: &Fields) -> Result<FinitePointedPoset> {
    let names = names_of(fields)?;
    let n = names.len();
    let basepoint = fields.id("basepoint", n)?;
    let (line, v) = fields.value("covers")?;
    let mut covers = Vec::new();
    for tok in v.split_whitespace() {
        let (a, b) = tok.split_once('<').ok_or_else(|| perr(line, format!("cover `{tok}` should look like 0<2")))?;
        covers.push((parse_id(line, a, n)?, parse_id(line, b, n)?));
    }
    FinitePointedPoset::from_covers(names, &covers, basepoint).map_err(|e| match e {
        Error::Law { .. } => e,
        other => perr(line, other.to_string()),
    })
}

pub fn write_presentable(r: &ExplicitPresentableRing) -> String {
    let n = r.len();
    let mut out = String::new();
    let _ = writeln!(out, "kind: presentable");
    write_poset_fields(&mut out, r.poset());
    let _ = writeln!(out, "one: {}", r.one());
    let _ = writeln!(out, "field: {}", r.is_field());
    let _ = writeln!(out, "neg: {}", join_ids(r.neg_table()));
    for (key, table) in [("add", r.add_table()), ("mul", r.mul_table())] {
        let _ = writeln!(out, "{key}:");
        for row in table.chunks(n) {
            push_row(&mut out, row, |x| x.to_string());
        }
    }
    out
}

pub fn parse_presentable(text: &str) -> Result<ExplicitPresentableRing> {
    let fields = split_fields(text)?;
    expect_kind(&fields, "presentable")?;
    fields.check_keys(&["kind", "elements", "basepoint", "covers", "one", "field", "neg", "add", "mul"])?;
    presentable_from(&fields)
}

fn presentable_from(fields: &Fields) -> Result<ExplicitPresentableRing> {
    let poset = poset_from(fields)?;
    let n = poset.len();
    let one = fields.id("one", n)?;
    let (line, v) = fields.value("field")?;
    let is_field = match v {
        "true" => true,
        "false" => false,
        _ => return Err(perr(line, format!("`field` must be true or false, found `{v}`"))),
    };
    let neg = fields.ids("neg", n)?;
    let add = fields.table("add", n, |l, t| parse_id(l, t, n))?;
    let mul = fields.table("mul", n, |l, t| parse_id(l, t, n))?;
    ExplicitPresentableRing::new(poset, add, neg, mul, one, is_field).map_err(|e| at(fields, "kind", e))
}

/// Classes are listed as `<a,b>` labels with `0` for the zero class; absent
/// table entries are written `?`.
pub fn write_witt(w: &WittRing) -> String {
    let n = w.len();
    let mut out = String::new();
    let _ = writeln!(out, "kind: witt");
    match w.status {
        WittStatus::Finite => out.push_str("status: finite\n"),
        WittStatus::Truncated { dim } => {
            let _ = writeln!(out, "status: truncated {dim}");
        }
    }
    let _ = writeln!(out, "growth: {}", join_ids(&w.growth));
    let _ = writeln!(out, "zero: {}", w.zero);
    let _ = writeln!(out, "one: {}", w.one);
    out.push_str("classes:\n");
    for c in &w.classes {
        let _ = writeln!(out, "  {}", c.label());
    }
    for (key, table) in [("add", &w.add), ("mul", &w.mul)] {
        let _ = writeln!(out, "{key}:");
        for row in table.chunks(n.max(1)) {
            push_row(&mut out, row, |c| c.map_or("?".to_string(), |c| c.to_string()));
        }
    }
    out
}

pub fn parse_witt(text: &str) -> Result<WittRing> {
    let fields = split_fields(text)?;
    expect_kind(&fields, "witt")?;
    fields.check_keys(&["kind", "status", "growth", "zero", "one", "classes", "add", "mul"])?;
    witt_from(&fields)
}

fn witt_from(fields: &Fields) -> Result<WittRing> {
    let (line, v) = fields.value("status")?;
    let status = match v.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["finite"] => WittStatus::Finite,
        ["truncated", d] => WittStatus::Truncated { dim: d.parse().map_err(|_| perr(line, format!("bad dimension `{d}`")))? },
        _ => return Err(perr(line, format!("status must be `finite` or `truncated D`, found `{v}`"))),
    };
    let (gline, g) = fields.value("growth")?;
    let growth = g
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(gline, format!("`{t}` is not a count"))))
        .collect::<Result<Vec<usize>>>()?;
    let entry = fields.get("classes")?;
    let mut classes = Vec::new();
    for (line, row) in &entry.rows {
        let representative: Vec<String> = if row == "0" {
            Vec::new()
        } else {
            let inner = row
                .strip_prefix('<')
                .and_then(|r| r.strip_suffix('>'))
                .ok_or_else(|| perr(*line, format!("class `{row}` should look like <1,-1> or 0")))?;
            inner.split(',').map(|s| s.trim().to_string()).collect()
        };
        let dim = representative.len();
        classes.push(WittClass { representative, dim });
    }
    let n = classes.len();
    if n == 0 {
        return Err(perr(entry.line, "no classes listed"));
    }
    let cell = |l: usize, t: &str| if t == "?" { Ok(None) } else { parse_id(l, t, n).map(Some) };
    Ok(WittRing {
        status,
        zero: fields.id("zero", n)?,
        one: fields.id("one", n)?,
        add: fields.table("add", n, cell)?,
        mul: fields.table("mul", n, cell)?,
        classes,
        growth,
    })
}

/// Reads any document, dispatching on its `kind`.
pub fn parse_document(text: &str) -> Result<Document> {
    let fields = split_fields(text)?;
    match kind_of(&fields)?.as_str() {
        "poset" => parse_poset(text).map(Document::Poset),
        "hyperfield" => parse_hyperfield(text).map(Document::Hyperfield),
        "presentable" => parse_presentable(text).map(Document::Presentable),
        "witt" => parse_witt(text).map(Document::Witt),
        other => Err(perr(fields.value("kind")?.0, format!("unknown kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{euclidean3, example_sq_7, walking_supremum};
    use crate::finite_field::ff_make;
    use crate::hyperfield::quadratic_hyperfield;

    #[test]
    fn hyperfield_round_trip() {
        for f in [euclidean3(), quadratic_hyperfield(&ff_make(7, 1, None).unwrap())] {
            let text = write_hyperfield(&f);
            assert_eq!(parse_hyperfield(&text).unwrap(), f);
            assert_eq!(write_hyperfield(&parse_hyperfield(&text).unwrap()), text);
        }
    }

    #[test]
    fn documented_example_parses() {
        let text = "kind: hyperfield\nelements: 0 1 -1\nzero: 0\none: 1\nneg: 0 2 1\nmul:\n  0 0 0\n  0 1 2\n  0 2 1\nadd:\n  {0} {1} {2}\n  {1} {1} {0,1,2}\n  {2} {0,1,2} {2}\n";
        assert_eq!(parse_hyperfield(text).unwrap(), euclidean3());
    }

    #[test]
    fn poset_and_presentable_round_trip() {
        let p = walking_supremum();
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        let r = example_sq_7();
        let text = write_presentable(&r);
        assert_eq!(parse_presentable(&text).unwrap(), r);
        assert!(matches!(parse_document(&text).unwrap(), Document::Presentable(_)));
    }

    #[test]
    fn errors_carry_lines() {
        let text = write_hyperfield(&euclidean3()).replace("{1} {1} {0,1,2}", "{1} {1} {0,1,7}");
        assert!(matches!(parse_hyperfield(&text), Err(Error::Parse { line: 12, .. })));
        let text = write_hyperfield(&euclidean3()).replace("  0 1 2\n", "  0 1\n");
        assert!(matches!(parse_hyperfield(&text), Err(Error::Parse { line: 8, .. })));
        assert!(matches!(parse_hyperfield("kind: poset\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_document("kind: hyperfield\nwat\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_document("kind: blob\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn noncommutative_table_is_a_law_error() {
        let text = write_hyperfield(&euclidean3()).replace("  {1} {1} {0,1,2}", "  {2} {1} {0,1,2}");
        assert!(matches!(parse_hyperfield(&text), Err(Error::Law { .. })));
    }

    #[test]
    fn witt_round_trip() {
        let w = crate::quadratic::witt_ring(&euclidean3(), 3).unwrap();
        let text = write_witt(&w);
        assert_eq!(parse_witt(&text).unwrap(), w);
    }
}
