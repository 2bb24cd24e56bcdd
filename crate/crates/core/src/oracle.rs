//! Classical symmetric bilinear forms over small finite fields, computed
//! from field arithmetic alone.
//!
//! Forms in characteristic 2 are diagonal (non-alternating), and `⟨1, 1⟩`
//! plays the role of the hyperbolic plane `⟨1, -1⟩`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::{ff_make, parse_field_size, FieldElem, FiniteField};
use crate::witt::{WittClass, WittRing, WittStatus};

pub const ORACLE_FIELDS: [usize; 6] = [2, 3, 4, 5, 7, 9];
pub const MAX_ORACLE_DIM: usize = 4;

/// Describes the characteristic-2 comparison object in reports.
pub const CHAR2_CONVENTION: &str =
    "characteristic 2: diagonal non-alternating bilinear forms, stabilized by <1,1> = <1,-1>";

pub fn field_of_size(q: usize) -> Result<FiniteField> {
    let (p, n) = parse_field_size(&q.to_string())?;
    ff_make(p, n, None)
}

/// A symmetric `n × n` matrix over GF(q), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GramForm {
    pub q: usize,
    pub n: usize,
    pub matrix: Vec<FieldElem>,
}

impl GramForm {
    pub fn new(k: &FiniteField, n: usize, matrix: Vec<FieldElem>) -> Result<Self> {
        if n == 0 || matrix.len() != n * n {
            return Err(Error::input(format!("a Gram matrix of size {n} needs {} entries", n * n)));
        }
        if matrix.iter().any(|&x| x >= k.size()) {
            return Err(Error::input("Gram matrix entry outside the field"));
        }
        if (0..n).any(|i| (0..n).any(|j| matrix[i * n + j] != matrix[j * n + i])) {
            return Err(Error::input("Gram matrix is not symmetric"));
        }
        Ok(GramForm { q: k.size(), n, matrix })
    }

    pub fn diagonal(k: &FiniteField, entries: &[FieldElem]) -> Result<Self> {
        let n = entries.len();
        let mut m = vec![k.zero(); n * n];
        for (i, &a) in entries.iter().enumerate() {
            m[i * n + i] = a;
        }
        GramForm::new(k, n, m)
    }

    pub fn determinant(&self, k: &FiniteField) -> FieldElem {
        determinant(k, self.n, &self.matrix)
    }

    pub fn is_nondegenerate(&self, k: &FiniteField) -> bool {
        self.determinant(k) != k.zero()
    }
}

fn determinant(k: &FiniteField, n: usize, m: &[FieldElem]) -> FieldElem {
    let mut a = m.to_vec();
    let mut det = k.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return k.zero();
        };
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = k.neg(det);
        }
        let p = a[col * n + col];
        det = k.mul(det, p);
        let pinv = k.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = k.mul(a[r * n + col], pinv);
            if factor == 0 {
                continue;
            }
            for j in col..n {
                let t = k.mul(factor, a[col * n + j]);
                a[r * n + j] = k.sub(a[r * n + j], t);
            }
        }
    }
    det
}

fn congruent(k: &FiniteField, n: usize, p: &[FieldElem], a: &[FieldElem]) -> Vec<FieldElem> {
    // (P^T A P)_{ij} = sum_{r,s} p_{ri} a_{rs} p_{sj}
    let mut ap = vec![k.zero(); n * n];
    for r in 0..n {
        for j in 0..n {
            let mut acc = k.zero();
            for s in 0..n {
                acc = k.add(acc, k.mul(a[r * n + s], p[s * n + j]));
            }
            ap[r * n + j] = acc;
        }
    }
    let mut out = vec![k.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = k.zero();
            for r in 0..n {
                acc = k.add(acc, k.mul(p[r * n + i], ap[r * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

fn all_matrices(q: usize, len: usize) -> impl Iterator<Item = Vec<FieldElem>> {
    let total = q.pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let d = code % q;
                code /= q;
                d
            })
            .collect()
    })
}

fn congruence_guard(q: usize, dim: usize) -> Result<()> {
    let ok = (q <= 3 && dim <= 3) || (q <= 9 && dim <= 2);
    if !ok || dim == 0 {
        return Err(Error::guard(format!(
            "congruence classes are enumerated only for dim <= 3 over q <= 3 and dim <= 2 over q <= 9, got q = {q}, dim = {dim}"
        )));
    }
    Ok(())
}

/// Orbits of nondegenerate symmetric matrices under `A ↦ PᵀAP`, one
/// representative (the smallest matrix) per orbit.
pub fn congruence_classes(q: usize, dim: usize) -> Result<Vec<GramForm>> {
    congruence_guard(q, dim)?;
    let k = field_of_size(q)?;
    let n = dim;
    let gl: Vec<Vec<FieldElem>> = all_matrices(q, n * n).filter(|p| determinant(&k, n, p) != 0).collect();
    let mut seen: BTreeSet<Vec<FieldElem>> = BTreeSet::new();
    let mut reps = Vec::new();
    for a in all_matrices(q, n * n) {
        let symmetric = (0..n).all(|i| (0..n).all(|j| a[i * n + j] == a[j * n + i]));
        if !symmetric || determinant(&k, n, &a) == 0 || seen.contains(&a) {
            continue;
        }
        for p in &gl {
            seen.insert(congruent(&k, n, p, &a));
        }
        reps.push(GramForm { q, n, matrix: a });
    }
    Ok(reps)
}

/// Index into `reps` of the orbit containing `form`.
pub fn congruence_class_of(reps: &[GramForm], form: &GramForm) -> Result<usize> {
    let k = field_of_size(form.q)?;
    let n = form.n;
    for p in all_matrices(form.q, n * n).filter(|p| determinant(&k, n, p) != 0) {
        let image = congruent(&k, n, &p, &form.matrix);
        if let Some(i) = reps.iter().position(|r| r.matrix == image) {
            return Ok(i);
        }
    }
    Err(Error::input("form is not congruent to any listed representative"))
}

fn is_square(k: &FiniteField, x: FieldElem) -> bool {
    k.elements().any(|s| k.mul(s, s) == x)
}

/// Same dimension and discriminants in the same square class; odd `q` only.
pub fn classical_isometric(k: &FiniteField, phi: &[FieldElem], psi: &[FieldElem]) -> Result<bool> {
    if k.characteristic() == 2 {
        return Err(Error::input("the discriminant criterion needs odd characteristic; use congruence classes"));
    }
    if phi.iter().chain(psi).any(|&a| a == 0 || a >= k.size()) {
        return Err(Error::input("diagonal entries must be nonzero field elements"));
    }
    if phi.len() != psi.len() {
        return Ok(false);
    }
    let disc = |v: &[FieldElem]| v.iter().fold(k.one(), |acc, &a| k.mul(acc, a));
    let ratio = k.mul(disc(phi), k.inv(disc(psi)).expect("nonzero"));
    Ok(is_square(k, ratio))
}

/// Nonzero values `a s² + b t²`.
pub fn value_set(k: &FiniteField, a: FieldElem, b: FieldElem) -> BTreeSet<FieldElem> {
    let sq: BTreeSet<FieldElem> = k.elements().map(|s| k.mul(s, s)).collect();
    let mut out = BTreeSet::new();
    for &s in &sq {
        for &t in &sq {
            let v = k.add(k.mul(a, s), k.mul(b, t));
            if v != 0 {
                out.insert(v);
            }
        }
    }
    out
}

/// Binary criterion: `ab ≡ cd` modulo squares and `c = as² + bt²`.
pub fn classical_binary(k: &FiniteField, a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> bool {
    let ratio = k.mul(k.mul(a, b), k.inv(k.mul(c, d)).expect("nonzero"));
    is_square(k, ratio) && value_set(k, a, b).contains(&c)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn sorted_tuples(reps: &[FieldElem], len: usize) -> Vec<Vec<FieldElem>> {
    fn rec(reps: &[FieldElem], start: usize, len: usize, cur: &mut Vec<FieldElem>, out: &mut Vec<Vec<FieldElem>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..reps.len() {
            cur.push(reps[i]);
            rec(reps, i, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(reps, 0, len, &mut Vec::new(), &mut out);
    out
}

/// Witt classes of diagonal forms: forms are linked by binary moves on a
/// pair of entries (chain equivalence) and by adding `⟨1, -1⟩`.
pub fn classical_witt_ring(q: usize, dmax: usize) -> Result<WittRing> {
    if !ORACLE_FIELDS.contains(&q) {
        return Err(Error::guard(format!("the classical Witt ring is computed for q in {ORACLE_FIELDS:?}, got {q}")));
    }
    if dmax == 0 || dmax > MAX_ORACLE_DIM {
        return Err(Error::guard(format!("oracle dimension bound must lie in 1..={MAX_ORACLE_DIM}, got {dmax}")));
    }
    let k = field_of_size(q)?;
    // one representative per square class: scaling an entry by a square is
    // the congruence by a diagonal matrix
    let mut class_rep = vec![0; q];
    let mut reps = Vec::new();
    for x in 1..q {
        if class_rep[x] == 0 {
            for s in 1..q {
                class_rep[k.mul(x, k.mul(s, s))] = x;
            }
            reps.push(x);
        }
    }
    let canon = |v: &[FieldElem]| {
        let mut w: Vec<FieldElem> = v.iter().map(|&a| class_rep[a]).collect();
        w.sort_unstable();
        w
    };
    let top = 2 * dmax;
    let mut forms: Vec<Vec<FieldElem>> = Vec::new();
    for d in 0..=top {
        forms.extend(sorted_tuples(&reps, d));
    }
    let index: HashMap<Vec<FieldElem>, usize> = forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let mut uf = UnionFind((0..forms.len()).collect());
    let hyperbolic = [k.one(), class_rep[k.neg(k.one())]];
    for (i, phi) in forms.iter().enumerate() {
        let n = phi.len();
        for x in 0..n {
            for y in x + 1..n {
                for &c in &reps {
                    for &d in &reps {
                        if classical_binary(&k, phi[x], phi[y], c, d) {
                            let mut moved = phi.clone();
                            moved[x] = c;
                            moved[y] = d;
                            uf.union(i, index[&canon(&moved)]);
                        }
                    }
                }
            }
        }
        if n + 2 <= top {
            uf.union(i, index[&canon(&[phi.as_slice(), &hyperbolic].concat())]);
        }
    }
    // classes in order of appearance; forms are listed by dimension, so the
    // first member of each class has minimal dimension
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut class_reps: Vec<Vec<FieldElem>> = Vec::new();
    let mut growth = vec![0; dmax];
    for (i, phi) in forms.iter().enumerate() {
        if phi.len() > dmax {
            break;
        }
        let r = uf.find(i);
        if let std::collections::hash_map::Entry::Vacant(e) = class_of_root.entry(r) {
            e.insert(class_reps.len());
            class_reps.push(phi.clone());
            if !phi.is_empty() {
                growth[phi.len() - 1] += 1;
            }
        }
    }
    let n = class_reps.len();
    let mut lookup = |v: Vec<FieldElem>| -> Option<usize> {
        let i = *index.get(&canon(&v))?;
        class_of_root.get(&uf.find(i)).copied()
    };
    let mut add = vec![None; n * n];
    let mut mul = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (&class_reps[i], &class_reps[j]);
            add[i * n + j] = lookup([a.as_slice(), b].concat());
            let k = &k;
            let prod: Vec<FieldElem> = a.iter().flat_map(|&x| b.iter().map(move |&y| k.mul(x, y))).collect();
            mul[i * n + j] = lookup(prod);
        }
    }
    let saturated = growth.windows(2).any(|w| w == [0, 0]);
    let closed = add.iter().chain(&mul).all(Option::is_some);
    let classes = class_reps
        .iter()
        .map(|r| WittClass { representative: r.iter().map(|&a| k.element_name(a)).collect(), dim: r.len() })
        .collect();
    let one = class_reps.iter().position(|r| r == &[k.one()]).expect("<1> is listed");
    Ok(WittRing {
        status: if saturated && closed { WittStatus::Finite } else { WittStatus::Truncated { dim: dmax } },
        classes,
        add,
        mul,
        zero: 0,
        one,
        growth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unary_classes() {
        assert_eq!(congruence_classes(3, 1).unwrap().len(), 2);
        assert_eq!(congruence_classes(2, 1).unwrap().len(), 1);
    }

    #[test]
    fn guards() {
        assert!(matches!(congruence_classes(5, 3), Err(Error::Guard(_))));
        assert!(matches!(congruence_classes(11, 1), Err(Error::Guard(_))));
        assert!(matches!(classical_witt_ring(11, 2), Err(Error::Guard(_))));
        assert!(matches!(classical_witt_ring(3, 5), Err(Error::Guard(_))));
    }

    #[test]
    fn discriminant_examples() {
        let k = field_of_size(3).unwrap();
        assert!(classical_isometric(&k, &[1, 1], &[2, 2]).unwrap());
        assert!(!classical_isometric(&k, &[1], &[2]).unwrap());
        assert!(classical_isometric(&k, &[1, 2, 2], &[1, 2, 2]).unwrap());
        let k2 = field_of_size(2).unwrap();
        assert!(classical_isometric(&k2, &[1], &[1]).is_err());
    }

    #[test]
    fn gf3_binary_orbits_match_discriminants() {
        let reps = congruence_classes(3, 2).unwrap();
        let k = field_of_size(3).unwrap();
        let diag: Vec<[usize; 2]> = vec![[1, 1], [1, 2], [2, 1], [2, 2]];
        let mut disc_classes = BTreeSet::new();
        for d in &diag {
            let det = k.mul(d[0], d[1]);
            disc_classes.insert(is_square(&k, det));
        }
        assert_eq!(reps.len(), disc_classes.len());
    }

    #[test]
    fn oracle_witt_counts() {
        for (q, expected) in [(2, 2), (3, 4), (4, 2), (5, 4), (7, 4), (9, 4)] {
            let w = classical_witt_ring(q, 4).unwrap();
            assert!(w.is_finite(), "q = {q}");
            assert_eq!(w.len(), expected, "q = {q}");
        }
    }

    #[test]
    fn determinant_of_hyperbolic_plane() {
        let k = field_of_size(5).unwrap();
        let h = GramForm::new(&k, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(h.determinant(&k), 4);
        assert!(GramForm::new(&k, 2, vec![0, 1, 2, 0]).is_err());
    }
}
