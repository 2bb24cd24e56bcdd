//! Finite pointed posets, suprema, minimal elements and the presentability
//! ladder: weak presentability, a minimal basepoint, and compact minimals.
//!
//! Element ids are dense `0..n`. Names are display metadata only.
//!
//! Two order representations exist: an explicit relation table, and the
//! inclusion order of a pierced powerset which is kept implicit so that
//! carriers up to 16 points (65535 subsets) stay cheap to build.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitRow;
use crate::error::{Error, Result};

/// Largest number of minimal elements the exhaustive checks accept.
pub const MAX_MINIMALS: usize = 16;
/// Largest carrier `check_presentable` will materialize.
pub const MAX_CHECKED_ELEMENTS: usize = 4096;
/// Up to this many elements compactness is tested against every nonempty
/// family of elements; above it only against families of minimals.
pub const EXHAUSTIVE_FAMILY_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Order {
    Table { up: Vec<BitRow>, down: Vec<BitRow> },
    /// Element `i` is the subset `masks[i]` of a `width`-point set.
    Inclusion { width: usize, masks: Vec<u32>, index: HashMap<u32, usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePointedPoset {
    names: Vec<String>,
    order: Order,
    basepoint: usize,
}

/// Builder descriptors accepted by [`build_poset`].
#[derive(Clone, Debug)]
pub enum PosetSpec {
    WalkingSupremum,
    PiercedPowerset { width: usize, basepoint: usize },
    SquarefreeDivisors { n: u64 },
    Explicit { names: Vec<String>, leq: Vec<(usize, usize)>, basepoint: usize },
}

pub fn build_poset(spec: &PosetSpec) -> Result<FinitePointedPoset> {
    match spec {
        PosetSpec::WalkingSupremum => Ok(FinitePointedPoset::walking_supremum()),
        PosetSpec::PiercedPowerset { width, basepoint } => {
            FinitePointedPoset::pierced_powerset(*width, *basepoint)
        }
        PosetSpec::SquarefreeDivisors { n } => FinitePointedPoset::squarefree_divisors(*n),
        PosetSpec::Explicit { names, leq, basepoint } => {
            FinitePointedPoset::explicit(names.clone(), leq, *basepoint)
        }
    }
}

/// Nonempty subsets of `{0..width}` ordered by size, then lexicographically on
/// the sorted element lists.
pub(crate) fn subset_masks(width: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << width)).collect();
    masks.sort_by_key(|&m| {
        let elems: Vec<u32> = (0..width as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), elems)
    });
    masks
}

pub(crate) fn mask_name(mask: u32, names: &[String]) -> String {
    let parts: Vec<&str> = (0..names.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| names[i].as_str())
        .collect();
    format!("{{{}}}", parts.join(","))
}

impl FinitePointedPoset {
    /// A poset from its full relation, given as `(a, b)` pairs meaning `a ≤ b`.
    ///
    /// The pairs must already be reflexive, antisymmetric and transitive;
    /// a violation is reported with the offending pair.
    pub fn explicit(names: Vec<String>, leq: &[(usize, usize)], basepoint: usize) -> Result<Self> {
        let n = names.len();
        check_ids(n, leq, basepoint)?;
        let mut up = vec![BitRow::new(n); n];
        for &(a, b) in leq {
            up[a].set(b);
        }
        for a in 0..n {
            if !up[a].get(a) {
                return Err(Error::law("reflexivity", format!("({}, {}) missing", names[a], names[a])));
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if a != b && up[b].get(a) {
                    return Err(Error::law("antisymmetry", format!("({}, {})", names[a], names[b])));
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if let Some(c) = up[b].iter().find(|&c| !up[a].get(c)) {
                    return Err(Error::law(
                        "transitivity",
                        format!("({}, {}) and ({}, {}) but not ({}, {})", names[a], names[b], names[b], names[c], names[a], names[c]),
                    ));
                }
            }
        }
        Ok(Self::from_up(names, up, basepoint))
    }

    /// A poset generated by `covers` (pairs `a < b`) under reflexive and
    /// transitive closure. Only antisymmetry can fail.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)], basepoint: usize) -> Result<Self> {
        let n = names.len();
        check_ids(n, covers, basepoint)?;
        let mut up = vec![BitRow::new(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            row.set(a);
        }
        for &(a, b) in covers {
            up[a].set(b);
        }
        // Warshall closure on rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.get(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if a != b && up[b].get(a) {
                    return Err(Error::law("antisymmetry", format!("({}, {})", names[a], names[b])));
                }
            }
        }
        Ok(Self::from_up(names, up, basepoint))
    }

    fn from_up(names: Vec<String>, up: Vec<BitRow>, basepoint: usize) -> Self {
        let n = names.len();
        let mut down = vec![BitRow::new(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].set(a);
            }
        }
        FinitePointedPoset { names, order: Order::Table { up, down }, basepoint }
    }

    /// Two minimal points `p`, `q` and their join `x`; the basepoint is `p`.
    pub fn walking_supremum() -> Self {
        let names = vec!["p".to_string(), "q".to_string(), "x".to_string()];
        Self::from_covers(names, &[(0, 2), (1, 2)], 0).expect("walking supremum is a poset")
    }

    /// Nonempty subsets of a `width`-point set under inclusion, based at the
    /// singleton `{basepoint}`.
    pub fn pierced_powerset(width: usize, basepoint: usize) -> Result<Self> {
        if width == 0 || width > 16 {
            return Err(Error::guard(format!("pierced powerset width must be in 1..=16, got {width}")));
        }
        if basepoint >= width {
            return Err(Error::input(format!("basepoint index {basepoint} outside 0..{width}")));
        }
        let masks = subset_masks(width);
        let point_names: Vec<String> = (0..width).map(|i| i.to_string()).collect();
        let names = masks.iter().map(|&m| mask_name(m, &point_names)).collect();
        let index: HashMap<u32, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let basepoint = index[&(1u32 << basepoint)];
        Ok(FinitePointedPoset { names, order: Order::Inclusion { width, masks, index }, basepoint })
    }

    /// Square-free divisors `d ≥ 2` of `n` ordered by division, with the
    /// radical of `n` shown as the adjoined top `top`. The basepoint is the
    /// smallest prime factor.
    pub fn squarefree_divisors(n: u64) -> Result<Self> {
        if !(2..=1_000_000).contains(&n) {
            return Err(Error::guard(format!("square-free divisor poset needs 2 <= N <= 10^6, got {n}")));
        }
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                primes.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        let k = primes.len();
        let mut divisors: Vec<u64> = (1u32..(1 << k))
            .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| primes[i]).product())
            .collect();
        divisors.sort_unstable();
        let radical = *divisors.last().expect("n >= 2 has a prime factor");
        let names = divisors
            .iter()
            .map(|&d| if d == radical { "top".to_string() } else { d.to_string() })
            .collect();
        let mut leq = Vec::new();
        for (i, &a) in divisors.iter().enumerate() {
            for (j, &b) in divisors.iter().enumerate() {
                if b % a == 0 {
                    leq.push((i, j));
                }
            }
        }
        Self::explicit(names, &leq, 0)
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

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Id of the subset with bit mask `mask` in a pierced powerset.
    pub fn subset_id(&self, mask: u32) -> Option<usize> {
        match &self.order {
            Order::Inclusion { index, .. } => index.get(&mask).copied(),
            Order::Table { .. } => None,
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.order {
            Order::Table { up, .. } => up[a].get(b),
            Order::Inclusion { masks, .. } => masks[a] & !masks[b] == 0,
        }
    }

    /// All `(a, b)` with `a ≤ b`.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|a| (0..n).filter(move |&b| self.leq(a, b)).map(move |b| (a, b))).collect()
    }

    /// Covering pairs `a ⋖ b` of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check_id(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::input(format!("unknown element id {x} (poset has {} elements)", self.len())))
        }
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        match &self.order {
            Order::Table { down, .. } => down[x].count() == 1,
            Order::Inclusion { masks, .. } => masks[x].count_ones() == 1,
        }
    }

    pub fn minimals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    /// Minimal elements below `x`.
    pub fn minimals_below(&self, x: usize) -> Result<Vec<usize>> {
        self.check_id(x)?;
        Ok(match &self.order {
            Order::Table { down, .. } => down[x].iter().filter(|&s| self.is_minimal(s)).collect(),
            Order::Inclusion { masks, index, .. } => {
                let m = masks[x];
                let mut out: Vec<usize> = (0..32).filter(|i| m >> i & 1 == 1).map(|i| index[&(1u32 << i)]).collect();
                out.sort_unstable();
                out
            }
        })
    }

    /// Least upper bound of a nonempty set, if one exists.
    pub fn supremum(&self, xs: &[usize]) -> Result<Option<usize>> {
        if xs.is_empty() {
            return Err(Error::input("supremum of the empty set is not defined here"));
        }
        for &x in xs {
            self.check_id(x)?;
        }
        Ok(match &self.order {
            Order::Table { up, down } => sup_in_table(up, down, xs.iter().copied()),
            Order::Inclusion { masks, index, .. } => {
                let union = xs.iter().fold(0u32, |acc, &x| acc | masks[x]);
                Some(index[&union])
            }
        })
    }

    /// Copy of the poset with the order stored as an explicit table.
    pub fn to_table(&self) -> Result<FinitePointedPoset> {
        if let Order::Table { .. } = self.order {
            return Ok(self.clone());
        }
        let n = self.len();
        if n > MAX_CHECKED_ELEMENTS {
            return Err(Error::guard(format!("{n} elements exceed the table limit {MAX_CHECKED_ELEMENTS}")));
        }
        let mut up = vec![BitRow::new(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if self.leq(a, b) {
                    row.set(b);
                }
            }
        }
        Ok(Self::from_up(self.names.clone(), up, self.basepoint))
    }

    /// Bit mask of a pierced-powerset element.
    pub fn subset_mask(&self, x: usize) -> Option<u32> {
        match &self.order {
            Order::Inclusion { masks, .. } => masks.get(x).copied(),
            Order::Table { .. } => None,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::input(format!("expected {} names, got {}", self.len(), names.len())));
        }
        self.names = names;
        Ok(self)
    }

    pub fn is_inclusion_order(&self) -> bool {
        matches!(self.order, Order::Inclusion { .. })
    }

    pub fn inclusion_width(&self) -> Option<usize> {
        match &self.order {
            Order::Inclusion { width, .. } => Some(*width),
            Order::Table { .. } => None,
        }
    }
}

fn check_ids(n: usize, pairs: &[(usize, usize)], basepoint: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("a pointed poset needs at least one element"));
    }
    if basepoint >= n {
        return Err(Error::input(format!("basepoint id {basepoint} outside 0..{n}")));
    }
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::input(format!("pair ({a}, {b}) refers to an id outside 0..{n}")));
    }
    Ok(())
}

/// Least element of the common up-set of `xs`.
fn sup_in_table(up: &[BitRow], down: &[BitRow], xs: impl Iterator<Item = usize>) -> Option<usize> {
    let mut bounds: Option<BitRow> = None;
    for x in xs {
        match bounds.as_mut() {
            None => bounds = Some(up[x].clone()),
            Some(b) => b.intersect_with(&up[x]),
        }
    }
    least_of(up, down, &bounds?)
}

fn least_of(up: &[BitRow], down: &[BitRow], set: &BitRow) -> Option<usize> {
    // A least element has the strictly smallest down-set in `set`.
    let candidate = set.iter().min_by_key(|&x| down[x].count())?;
    set.is_subset(&up[candidate]).then_some(candidate)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyScope {
    /// Every nonempty family of elements was tested.
    AllFamilies,
    /// Only families of minimal elements (equivalent for weakly presentable posets).
    MinimalFamilies,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetWitness {
    pub axiom: String,
    pub elements: Vec<usize>,
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentabilityReport {
    pub weakly_presentable: bool,
    pub basepoint_minimal: bool,
    pub all_minimals_compact: bool,
    /// Every representation `x = ⋁S` by minimals has `S = S_x`. Only
    /// evaluated on weakly presentable posets.
    pub unique_representation: Option<bool>,
    /// Whether the compactness test and the unique-representation test agree.
    pub equivalence_agrees: Option<bool>,
    pub compactness_scope: FamilyScope,
    pub minimals: Vec<usize>,
    pub witnesses: Vec<PosetWitness>,
}

impl PresentabilityReport {
    pub fn passed(&self) -> bool {
        self.weakly_presentable && self.basepoint_minimal && self.all_minimals_compact
    }
}

/// Runs the presentability ladder on `poset`.
pub fn check_presentable(poset: &FinitePointedPoset) -> Result<PresentabilityReport> {
    let n = poset.len();
    if n > MAX_CHECKED_ELEMENTS {
        return Err(Error::guard(format!(
            "presentability check refuses {n} elements (limit {MAX_CHECKED_ELEMENTS})"
        )));
    }
    let table = poset.to_table()?;
    let Order::Table { up, down } = &table.order else { unreachable!() };
    let minimals = table.minimals();
    let k = minimals.len();
    if k > MAX_MINIMALS {
        return Err(Error::guard(format!("{k} minimal elements exceed the exhaustive limit {MAX_MINIMALS}")));
    }
    let mut witnesses = Vec::new();
    let subset_of = |mask: u32| -> Vec<usize> { (0..k).filter(|i| mask >> i & 1 == 1).map(|i| minimals[i]).collect() };

    // Minimal-index masks S_x, and suprema of every nonempty set of minimals.
    let below: Vec<u32> = (0..n)
        .map(|x| (0..k).filter(|&i| up[minimals[i]].get(x)).fold(0u32, |m, i| m | 1 << i))
        .collect();
    let sups: Vec<Option<usize>> = std::iter::once(None)
        .chain((1u32..(1u32 << k)).map(|mask| sup_in_table(up, down, subset_of(mask).into_iter())))
        .collect();

    let mut weak = true;
    for mask in 1u32..(1u32 << k) {
        if sups[mask as usize].is_none() {
            weak = false;
            witnesses.push(PosetWitness { axiom: "weak.i".into(), elements: vec![], subset: subset_of(mask) });
            break;
        }
    }
    for (x, &s) in below.iter().enumerate() {
        let ok = s != 0 && sups[s as usize] == Some(x);
        if !ok {
            weak = false;
            witnesses.push(PosetWitness { axiom: "weak.ii".into(), elements: vec![x], subset: subset_of(s) });
            break;
        }
    }

    let basepoint_minimal = table.is_minimal(table.basepoint);
    if !basepoint_minimal {
        witnesses.push(PosetWitness { axiom: "presentable.ii".into(), elements: vec![table.basepoint], subset: vec![] });
    }

    // Compactness: m ≤ ⋁Y forces m ≤ y for some y ∈ Y.
    let scope = if n <= EXHAUSTIVE_FAMILY_LIMIT { FamilyScope::AllFamilies } else { FamilyScope::MinimalFamilies };
    let mut compact = vec![true; k];
    match scope {
        FamilyScope::AllFamilies => {
            for fam in 1u32..(1u32 << n) {
                let ys: Vec<usize> = (0..n).filter(|i| fam >> i & 1 == 1).collect();
                let Some(s) = sup_in_table(up, down, ys.iter().copied()) else { continue };
                for (i, &m) in minimals.iter().enumerate() {
                    if compact[i] && up[m].get(s) && !ys.iter().any(|&y| up[m].get(y)) {
                        compact[i] = false;
                        witnesses.push(PosetWitness { axiom: "presentable.iii".into(), elements: vec![m], subset: ys.clone() });
                    }
                }
            }
        }
        FamilyScope::MinimalFamilies => {
            for mask in 1u32..(1u32 << k) {
                let Some(s) = sups[mask as usize] else { continue };
                for (i, &m) in minimals.iter().enumerate() {
                    if compact[i] && mask >> i & 1 == 0 && up[m].get(s) {
                        compact[i] = false;
                        witnesses.push(PosetWitness { axiom: "presentable.iii".into(), elements: vec![m], subset: subset_of(mask) });
                    }
                }
            }
        }
    }
    let all_compact = compact.iter().all(|&c| c);

    let (unique_representation, equivalence_agrees) = if weak {
        let mut unique = true;
        for mask in 1u32..(1u32 << k) {
            let x = sups[mask as usize].expect("weakly presentable");
            if below[x] != mask {
                unique = false;
                witnesses.push(PosetWitness { axiom: "unique-representation".into(), elements: vec![x], subset: subset_of(mask) });
                break;
            }
        }
        (Some(unique), Some(unique == all_compact))
    } else {
        (None, None)
    };

    Ok(PresentabilityReport {
        weakly_presentable: weak,
        basepoint_minimal,
        all_minimals_compact: all_compact,
        unique_representation,
        equivalence_agrees,
        compactness_scope: scope,
        minimals,
        witnesses,
    })
}

/// Random poset on at most `max_elems` points.
///
/// Half of the draws are inclusion orders on a random family of sets of
/// minimals (these are weakly presentable whenever the needed suprema
/// exist, and often not compact); the other half are transitive closures of
/// random DAGs.
pub fn random_poset<R: Rng>(rng: &mut R, max_elems: usize) -> FinitePointedPoset {
    let max_elems = max_elems.max(1);
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=max_elems.min(5));
        let mut sets: Vec<u32> = (0..k).map(|i| 1u32 << i).collect();
        let extra = rng.gen_range(0..=(max_elems - k));
        for _ in 0..extra {
            let m = rng.gen_range(1u32..(1 << k));
            if m.count_ones() > 1 && !sets.contains(&m) {
                sets.push(m);
            }
        }
        let names = (0..sets.len()).map(|i| format!("e{i}")).collect();
        let mut leq = Vec::new();
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                if a & !b == 0 {
                    leq.push((i, j));
                }
            }
        }
        let basepoint = rng.gen_range(0..sets.len());
        FinitePointedPoset::explicit(names, &leq, basepoint).expect("inclusion is a partial order")
    } else {
        let n = rng.gen_range(1..=max_elems);
        let mut covers = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.35) {
                    covers.push((a, b));
                }
            }
        }
        let names = (0..n).map(|i| format!("e{i}")).collect();
        let basepoint = rng.gen_range(0..n);
        FinitePointedPoset::from_covers(names, &covers, basepoint).expect("forward edges are acyclic")
    }
}
