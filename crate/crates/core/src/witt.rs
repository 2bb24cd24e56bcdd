//! Witt ring tables shared by the axiomatic and the classical computation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Collector, Failure};

pub const MAX_RING_ISOMORPHISM_SIZE: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WittStatus {
    Finite,
    /// Some class or table entry lies beyond the inspected dimension.
    Truncated { dim: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittClass {
    /// Entry names of the anisotropic representative; empty for the zero class.
    pub representative: Vec<String>,
    pub dim: usize,
}

impl WittClass {
    pub fn label(&self) -> String {
        if self.representative.is_empty() {
            "0".to_string()
        } else {
            format!("<{}>", self.representative.join(","))
        }
    }
}

/// Classes with addition and multiplication tables. Entries are `None`
/// when the result falls outside the enumerated classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittRing {
    pub status: WittStatus,
    pub classes: Vec<WittClass>,
    pub add: Vec<Option<usize>>,
    pub mul: Vec<Option<usize>>,
    pub zero: usize,
    pub one: usize,
    /// Number of new anisotropic classes at dimensions `1..=dmax`.
    pub growth: Vec<usize>,
}

impl WittRing {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.status == WittStatus::Finite
    }

    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.add[a * self.len() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.mul[a * self.len() + b]
    }

    /// One-line summary such as `W: finite, 4 classes`.
    pub fn summary(&self) -> String {
        match self.status {
            WittStatus::Finite => format!("W: finite, {} classes", self.len()),
            WittStatus::Truncated { dim } => {
                let constant = self.growth.first().filter(|&&g| self.growth.iter().all(|&h| h == g));
                match constant {
                    Some(g) => format!("W: truncated at dim {dim}, growth {g} per dim"),
                    None => format!("W: truncated at dim {dim}, growth {:?}", self.growth),
                }
            }
        }
    }
}

impl fmt::Display for WittRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.summary())?;
        let labels: Vec<String> = self.classes.iter().map(WittClass::label).collect();
        for (name, table) in [("+", &self.add), ("*", &self.mul)] {
            writeln!(f, "{name}: {}", labels.join(" "))?;
            for (i, row) in table.chunks(self.len().max(1)).enumerate() {
                let cells: Vec<String> = row.iter().map(|c| c.map_or("?".to_string(), |c| labels[c].clone())).collect();
                writeln!(f, "  {}: {}", labels[i], cells.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Commutative ring axioms on a finite table: associativity, commutativity,
/// neutral elements, additive inverses and distributivity.
pub fn check_ring_axioms(w: &WittRing) -> Result<Vec<Failure>> {
    if !w.is_finite() {
        return Err(Error::precondition("ring axioms need a finite Witt ring"));
    }
    let n = w.len();
    let add = |a: usize, b: usize| w.add(a, b).expect("finite tables are total");
    let mul = |a: usize, b: usize| w.mul(a, b).expect("finite tables are total");
    let mut c = Collector::new();
    for a in 0..n {
        c.check(add(a, w.zero) == a, "ring.additive identity", &[a], String::new);
        c.check(mul(a, w.one) == a, "ring.multiplicative identity", &[a], String::new);
        c.check((0..n).any(|b| add(a, b) == w.zero), "ring.additive inverse", &[a], String::new);
        for b in 0..n {
            c.check(add(a, b) == add(b, a), "ring.additive commutativity", &[a, b], String::new);
            c.check(mul(a, b) == mul(b, a), "ring.multiplicative commutativity", &[a, b], String::new);
            for x in 0..n {
                c.check(add(add(a, b), x) == add(a, add(b, x)), "ring.additive associativity", &[a, b, x], String::new);
                c.check(mul(mul(a, b), x) == mul(a, mul(b, x)), "ring.multiplicative associativity", &[a, b, x], String::new);
                c.check(mul(a, add(b, x)) == add(mul(a, b), mul(a, x)), "ring.distributivity", &[a, b, x], String::new);
            }
        }
    }
    Ok(c.into_failures())
}

/// Searches for a ring isomorphism `W1 -> W2`; `map[i]` is the image of `i`.
pub fn ring_isomorphic(w1: &WittRing, w2: &WittRing) -> Result<Option<Vec<usize>>> {
    for w in [w1, w2] {
        if !w.is_finite() {
            return Err(Error::precondition("ring isomorphism needs finite Witt rings"));
        }
        if w.len() > MAX_RING_ISOMORPHISM_SIZE {
            return Err(Error::guard(format!("ring isomorphism supports at most {MAX_RING_ISOMORPHISM_SIZE} classes, got {}", w.len())));
        }
    }
    if w1.len() != w2.len() {
        return Ok(None);
    }
    let n = w1.len();
    let p1: Vec<_> = (0..n).map(|a| ring_profile(w1, a)).collect();
    let p2: Vec<_> = (0..n).map(|a| ring_profile(w2, a)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[w1.zero] = w2.zero;
    used[w2.zero] = true;
    if w1.one != w1.zero {
        if w2.one == w2.zero || p1[w1.one] != p2[w2.one] {
            return Ok(None);
        }
        map[w1.one] = w2.one;
        used[w2.one] = true;
    }
    let order: Vec<usize> = (0..n).filter(|&a| map[a] == usize::MAX).collect();
    Ok(extend(w1, w2, &p1, &p2, &order, 0, &mut map, &mut used).then_some(map))
}

fn ring_profile(w: &WittRing, a: usize) -> (usize, bool, bool) {
    let mut k = 1;
    let mut x = a;
    while x != w.zero && k <= w.len() {
        x = w.add(x, a).expect("finite");
        k += 1;
    }
    let unit = (0..w.len()).any(|b| w.mul(a, b) == Some(w.one));
    (k, unit, w.mul(a, a) == Some(a))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    w1: &WittRing,
    w2: &WittRing,
    p1: &[(usize, bool, bool)],
    p2: &[(usize, bool, bool)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        let n = w1.len();
        return (0..n).all(|a| {
            (0..n).all(|b| {
                w1.add(a, b).map(|x| map[x]) == w2.add(map[a], map[b]) && w1.mul(a, b).map(|x| map[x]) == w2.mul(map[a], map[b])
            })
        });
    }
    let a = order[depth];
    for c in 0..w2.len() {
        if used[c] || p1[a] != p2[c] {
            continue;
        }
        map[a] = c;
        used[c] = true;
        if extend(w1, w2, p1, p2, order, depth + 1, map, used) {
            return true;
        }
        map[a] = usize::MAX;
        used[c] = false;
    }
    false
}
