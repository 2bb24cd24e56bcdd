//! Anisotropic parts, Witt equivalence and the Witt ring.

use std::collections::HashMap;

use super::isometry::{multisets, BinaryIsometry, HyperfieldIsometry, IsometryEngine, Normalization};
use super::{require_prequadratic, Form};
use crate::error::{Error, Result};
use crate::hyperfield::FiniteHyperfield;
use crate::witt::{check_ring_axioms, WittClass, WittRing, WittStatus};

/// Largest `dmax` accepted by [`witt_ring`].
pub const MAX_WITT_DIM: usize = 8;

/// Largest number of candidate complements tried when splitting off a
/// hyperbolic plane.
pub const MAX_SPLIT_CANDIDATES: usize = 20_000;

/// Memoized isometry decisions over one pre-quadratic hyperfield.
pub struct WittContext<'a> {
    f: &'a FiniteHyperfield,
    engine: IsometryEngine<HyperfieldIsometry<'a>>,
    split_memo: HashMap<Vec<usize>, Option<Vec<usize>>>,
}

impl<'a> WittContext<'a> {
    pub fn new(f: &'a FiniteHyperfield) -> Result<Self> {
        require_prequadratic(f)?;
        Ok(WittContext {
            f,
            engine: IsometryEngine::new(HyperfieldIsometry::new(f), Normalization::Sorted),
            split_memo: HashMap::new(),
        })
    }

    pub fn field(&self) -> &FiniteHyperfield {
        self.f
    }

    pub fn hyperbolic_plane(&self) -> Form {
        Form::from_entries(vec![self.f.one(), self.f.minus_one()])
    }

    pub fn isometric(&mut self, phi: &[usize], psi: &[usize]) -> bool {
        phi.len() == psi.len() && self.engine.isometric(phi, psi)
    }

    fn product(&self, phi: &[usize]) -> usize {
        phi.iter().fold(self.f.one(), |acc, &a| self.f.mul(acc, a))
    }

    /// Some `ψ` with `φ ≅ ⟨1, -1⟩ ⊕ ψ` (empty for the hyperbolic plane itself).
    fn split(&mut self, phi: &[usize]) -> Result<Option<Vec<usize>>> {
        let mut key = phi.to_vec();
        key.sort_unstable();
        if let Some(v) = self.split_memo.get(&key) {
            return Ok(v.clone());
        }
        let n = key.len();
        let (one, minus_one) = (self.f.one(), self.f.minus_one());
        let found = match n {
            0 | 1 => None,
            2 => self.isometric(&key, &[one, minus_one]).then(Vec::new),
            _ => {
                let elems = self.engine.rule().elements().to_vec();
                let cands = multisets(&elems, n - 2);
                if cands.len() > MAX_SPLIT_CANDIDATES {
                    return Err(Error::guard(format!(
                        "{} complements of dimension {} exceed the budget of {MAX_SPLIT_CANDIDATES}",
                        cands.len(),
                        n - 2
                    )));
                }
                // isometric forms have equal entry products
                let target = self.f.mul(self.product(&key), minus_one);
                let mut hit = None;
                for psi in cands {
                    if self.product(&psi) != target {
                        continue;
                    }
                    let mut full = vec![one, minus_one];
                    full.extend_from_slice(&psi);
                    if self.isometric(&key, &full) {
                        hit = Some(psi);
                        break;
                    }
                }
                hit
            }
        };
        self.split_memo.insert(key, found.clone());
        Ok(found)
    }

    pub fn is_isotropic(&mut self, phi: &[usize]) -> Result<bool> {
        Ok(self.split(phi)?.is_some())
    }

    /// Sorted anisotropic part, empty for the zero class.
    pub fn anisotropic_entries(&mut self, phi: &[usize]) -> Result<Vec<usize>> {
        let mut cur = phi.to_vec();
        cur.sort_unstable();
        while let Some(rest) = self.split(&cur)? {
            cur = rest;
        }
        Ok(cur)
    }

    pub fn anisotropic_part(&mut self, phi: &Form) -> Result<Option<Form>> {
        let v = self.anisotropic_entries(phi.entries())?;
        Ok((!v.is_empty()).then(|| Form::from_entries(v)))
    }

    /// Every anisotropic part reachable by some order of splitting.
    pub fn all_anisotropic_parts(&mut self, phi: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut key = phi.to_vec();
        key.sort_unstable();
        let n = key.len();
        if n < 2 {
            return Ok(vec![key]);
        }
        let (one, minus_one) = (self.f.one(), self.f.minus_one());
        if n == 2 {
            return Ok(vec![if self.isometric(&key, &[one, minus_one]) { Vec::new() } else { key }]);
        }
        let elems = self.engine.rule().elements().to_vec();
        let mut out = Vec::new();
        for psi in multisets(&elems, n - 2) {
            let mut full = vec![one, minus_one];
            full.extend_from_slice(&psi);
            if self.isometric(&key, &full) {
                for part in self.all_anisotropic_parts(&psi)? {
                    if !out.contains(&part) {
                        out.push(part);
                    }
                }
            }
        }
        if out.is_empty() {
            out.push(key);
        }
        Ok(out)
    }

    pub fn witt_equivalent(&mut self, phi: &[usize], psi: &[usize]) -> Result<bool> {
        let a = self.anisotropic_entries(phi)?;
        let b = self.anisotropic_entries(psi)?;
        Ok(a.len() == b.len() && (a.is_empty() || self.isometric(&a, &b)))
    }
}

pub fn is_isotropic(f: &FiniteHyperfield, phi: &Form) -> Result<bool> {
    WittContext::new(f)?.is_isotropic(phi.entries())
}

/// `None` stands for the zero class.
pub fn anisotropic_part(f: &FiniteHyperfield, phi: &Form) -> Result<Option<Form>> {
    WittContext::new(f)?.anisotropic_part(phi)
}

pub fn witt_equivalent(f: &FiniteHyperfield, phi: &Form, psi: &Form) -> Result<bool> {
    WittContext::new(f)?.witt_equivalent(phi.entries(), psi.entries())
}

/// Enumerates anisotropic classes of dimension `1..=dmax` and tabulates
/// `+` and `·` on them.
pub fn witt_ring(f: &FiniteHyperfield, dmax: usize) -> Result<WittRing> {
    if dmax == 0 || dmax > MAX_WITT_DIM {
        return Err(Error::guard(format!("witt ring dimension bound must lie in 1..={MAX_WITT_DIM}, got {dmax}")));
    }
    let mut cx = WittContext::new(f)?;
    let elems = cx.engine.rule().elements().to_vec();
    let mut reps: Vec<Vec<usize>> = vec![Vec::new()];
    let mut growth = Vec::new();
    for d in 1..=dmax {
        let cands = multisets(&elems, d);
        if cands.len() > MAX_SPLIT_CANDIDATES {
            return Err(Error::guard(format!("{} forms of dimension {d} exceed the budget of {MAX_SPLIT_CANDIDATES}", cands.len())));
        }
        let start = reps.len();
        for phi in cands {
            if cx.is_isotropic(&phi)? {
                continue;
            }
            if !reps[start..].iter().any(|r| cx.engine.isometric(r, &phi)) {
                reps.push(phi);
            }
        }
        growth.push(reps.len() - start);
    }
    let n = reps.len();
    let limit = 2 * dmax;
    let one = f.one();
    let find = |cx: &mut WittContext, v: &[usize]| -> Option<usize> {
        if v.is_empty() {
            return Some(0);
        }
        (1..n).find(|&i| reps[i].len() == v.len() && cx.engine.isometric(&reps[i], v))
    };
    let mut add = vec![None; n * n];
    let mut mul = vec![None; n * n];
    for i in 0..n {
        for j in i..n {
            let sum = cx.anisotropic_entries(&[reps[i].clone(), reps[j].clone()].concat())?;
            let s = find(&mut cx, &sum);
            add[i * n + j] = s;
            add[j * n + i] = s;
            let mut acc: Option<Vec<usize>> = Some(Vec::new());
            for &a in &reps[i] {
                let Some(cur) = acc.take() else { break };
                let scaled: Vec<usize> = reps[j].iter().map(|&b| f.mul(a, b)).collect();
                let next = cx.anisotropic_entries(&[cur, scaled].concat())?;
                acc = (next.len() <= limit).then_some(next);
            }
            let p = acc.and_then(|v| find(&mut cx, &v));
            mul[i * n + j] = p;
            mul[j * n + i] = p;
        }
    }
    let saturated = growth.windows(2).any(|w| w == [0, 0]);
    let closed = add.iter().chain(&mul).all(Option::is_some);
    let status = if saturated && closed { WittStatus::Finite } else { WittStatus::Truncated { dim: dmax } };
    let classes = reps
        .iter()
        .map(|r| WittClass { representative: r.iter().map(|&a| f.name(a).to_string()).collect(), dim: r.len() })
        .collect();
    let one_class = (1..n).find(|&i| reps[i] == [one]).unwrap_or(0);
    let w = WittRing { status, classes, add, mul, zero: 0, one: one_class, growth };
    if w.is_finite() {
        if let Some(fail) = check_ring_axioms(&w)?.first() {
            return Err(Error::law("witt ring axioms", fail.to_string()));
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::euclidean3;
    use crate::finite_field::ff_make;
    use crate::hyperfield::quadratic_hyperfield;
    use crate::quadratic::orthogonal_sum;

    fn q(p: u32, n: u32) -> FiniteHyperfield {
        quadratic_hyperfield(&ff_make(p, n, None).unwrap())
    }

    #[test]
    fn hyperbolic_plane_is_zero() {
        let e = euclidean3();
        let h = Form::parse(&e, "1,-1").unwrap();
        assert!(is_isotropic(&e, &h).unwrap());
        assert_eq!(anisotropic_part(&e, &h).unwrap(), None);
        let phi = Form::parse(&e, "1,1").unwrap();
        assert!(!is_isotropic(&e, &phi).unwrap());
        assert!(!is_isotropic(&e, &Form::parse(&e, "1").unwrap()).unwrap());
    }

    #[test]
    fn euclidean_equivalence() {
        let e = euclidean3();
        let form = |s: &str| Form::parse(&e, s).unwrap();
        assert!(!witt_equivalent(&e, &form("1,1"), &form("1")).unwrap());
        assert!(witt_equivalent(&e, &form("1,1,-1"), &form("1")).unwrap());
        let phi = form("-1,1,1");
        assert!(witt_equivalent(&e, &phi, &orthogonal_sum(&phi, &form("1,-1"))).unwrap());
    }

    #[test]
    fn gf3_four_ones() {
        let f = q(3, 1);
        let phi = Form::parse(&f, "1,1,1,1").unwrap();
        assert!(is_isotropic(&f, &phi).unwrap());
        let part = anisotropic_part(&f, &phi).unwrap();
        assert!(part.as_ref().is_none_or(|p| p.dim() <= 2));
    }

    #[test]
    fn stripping_order_does_not_matter() {
        for f in [euclidean3(), q(3, 1), q(5, 1), q(2, 1)] {
            let mut cx = WittContext::new(&f).unwrap();
            let elems: Vec<usize> = f.nonzero().collect();
            for d in 1..=5 {
                for phi in multisets(&elems, d) {
                    let parts = cx.all_anisotropic_parts(&phi).unwrap();
                    let first = &parts[0];
                    for p in &parts {
                        assert_eq!(p.len(), first.len());
                        assert!(p.is_empty() || cx.isometric(p, first));
                    }
                }
            }
        }
    }

    #[test]
    fn witt_rings_of_small_fields() {
        let w3 = witt_ring(&q(3, 1), 4).unwrap();
        assert_eq!(w3.summary(), "W: finite, 4 classes");
        let w2 = witt_ring(&q(2, 1), 4).unwrap();
        assert_eq!(w2.summary(), "W: finite, 2 classes");
        let w5 = witt_ring(&q(5, 1), 4).unwrap();
        assert_eq!(w5.len(), 4);
    }

    #[test]
    fn euclidean_truncates() {
        let e = euclidean3();
        let w = witt_ring(&e, 6).unwrap();
        assert_eq!(w.status, WittStatus::Truncated { dim: 6 });
        assert_eq!(w.growth, vec![2; 6]);
        assert_eq!(w.summary(), "W: truncated at dim 6, growth 2 per dim");
        let sig = |c: &WittClass| c.representative.iter().map(|s| if s == "1" { 1 } else { -1 }).sum::<i64>();
        for i in 0..w.len() {
            for j in 0..w.len() {
                if let Some(k) = w.add(i, j) {
                    assert_eq!(sig(&w.classes[k]), sig(&w.classes[i]) + sig(&w.classes[j]));
                } else {
                    assert!((sig(&w.classes[i]) + sig(&w.classes[j])).abs() > 6);
                }
            }
        }
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(witt_ring(&euclidean3(), 0), Err(Error::Guard(_))));
        assert!(matches!(witt_ring(&euclidean3(), 9), Err(Error::Guard(_))));
    }
}
