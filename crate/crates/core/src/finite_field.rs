//! Small finite fields GF(p^n) and their square classes.
//!
//! An element id encodes the coefficient vector of a polynomial of degree
//! `< n` over GF(p) in base `p`, constant term first. Multiplication goes
//! through discrete log tables built from a generator found at construction.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: usize = 4096;

pub type FieldElem = usize;

/// Built-in moduli, coefficients constant term first.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (13, 2, &[11, 0, 1]),
];

#[derive(Clone)]
pub struct FiniteField {
    p: u32,
    n: u32,
    q: usize,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i in 0..q-1`.
    exp: Vec<FieldElem>,
    /// `log[x]` for nonzero `x`.
    log: Vec<usize>,
    neg: Vec<FieldElem>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.n, self.modulus)
    }
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Parses `"p^n"`, `"q"` (a prime power) or `"p"`.
pub fn parse_field_size(s: &str) -> Result<(u32, u32)> {
    let s = s.trim();
    if let Some((p, n)) = s.split_once('^') {
        let p: u32 = p.trim().parse().map_err(|_| Error::input(format!("bad characteristic in {s:?}")))?;
        let n: u32 = n.trim().parse().map_err(|_| Error::input(format!("bad degree in {s:?}")))?;
        return Ok((p, n));
    }
    let q: u32 = s.parse().map_err(|_| Error::input(format!("bad field size {s:?}")))?;
    for p in 2..=q {
        if q.is_multiple_of(p) {
            let mut n = 0;
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
                n += 1;
            }
            if m != 1 {
                return Err(Error::input(format!("{q} is not a prime power")));
            }
            return Ok((p, n));
        }
    }
    Err(Error::input(format!("{q} is not a prime power")))
}

/// Validated field built from `p`, `n` and an optional modulus.
pub fn ff_make(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::input(format!("characteristic {p} is not prime")));
    }
    if n == 0 {
        return Err(Error::input("extension degree must be at least 1"));
    }
    let q = (p as u64).checked_pow(n).filter(|&q| q as usize <= MAX_FIELD_SIZE);
    let Some(q) = q else {
        return Err(Error::guard(format!("{p}^{n} exceeds the field size limit {MAX_FIELD_SIZE}")));
    };
    let modulus: Vec<u32> = match modulus {
        Some(m) => m.to_vec(),
        None if n == 1 => vec![0, 1],
        None => BUILTIN_MODULI
            .iter()
            .find(|&&(bp, bn, _)| bp == p && bn == n)
            .map(|&(_, _, m)| m.to_vec())
            .ok_or_else(|| Error::input(format!("no built-in modulus for GF({p}^{n}); pass one explicitly")))?,
    };
    if modulus.len() != n as usize + 1 || *modulus.last().unwrap() != 1 {
        return Err(Error::input(format!("modulus must be monic of degree {n}, got {modulus:?}")));
    }
    if let Some(&c) = modulus.iter().find(|&&c| c >= p) {
        return Err(Error::input(format!("modulus coefficient {c} is not reduced mod {p}")));
    }
    if let Some(factor) = find_factor(p, &modulus) {
        return Err(Error::input(format!("modulus {modulus:?} is reducible (divisible by {factor:?})")));
    }
    FiniteField::build(p, n, q as usize, modulus)
}

/// A monic factor of degree `1..=deg/2`, if any.
fn find_factor(p: u32, f: &[u32]) -> Option<Vec<u32>> {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = digits(code, p, d);
            g.push(1);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return Some(g);
            }
        }
    }
    None
}

fn digits(mut code: usize, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = (code % p as usize) as u32;
            code /= p as usize;
            c
        })
        .collect()
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue mod prime")
}

fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p);
    while r.len() > dg {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dg;
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * gi % p) % p;
            }
        }
        r.pop();
    }
    r
}

impl FiniteField {
    fn build(p: u32, n: u32, q: usize, modulus: Vec<u32>) -> Result<Self> {
        let neg = (0..q).map(|x| encode(&digits(x, p, n as usize).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p)).collect();
        let mut field = FiniteField { p, n, q, modulus, exp: Vec::new(), log: Vec::new(), neg };
        let order = q - 1;
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1;
                for k in 1..=order {
                    x = field.mul_slow(x, g);
                    if x == 1 {
                        return k == order;
                    }
                }
                false
            })
            .ok_or_else(|| Error::input("no multiplicative generator found; modulus not irreducible"))?;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![usize::MAX; q];
        let mut x = 1;
        for i in 0..order {
            exp.push(x);
            log[x] = i;
            x = field.mul_slow(x, generator);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        let n = self.n as usize;
        let da = digits(a, p, n);
        let db = digits(b, p, n);
        let mut prod = vec![0u32; 2 * n - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = poly_rem(p, &prod, &self.modulus);
        r.resize(n, 0);
        encode(&r, p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> std::ops::Range<FieldElem> {
        0..self.q
    }

    pub fn zero(&self) -> FieldElem {
        0
    }

    pub fn one(&self) -> FieldElem {
        1
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.n == 1 {
            return (a + b) % self.q;
        }
        let p = self.p as usize;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.neg[a]
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a != 0).then(|| self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)])
    }

    pub fn pow(&self, a: FieldElem, e: usize) -> FieldElem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        self.exp[self.log[a] * e % (self.q - 1)]
    }

    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    pub fn nonzero_squares(&self) -> Vec<FieldElem> {
        let mut s: Vec<FieldElem> = (1..self.q).map(|x| self.square(x)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Polynomial display, e.g. `2x^2+x+1`; prime field elements print as
    /// their residue.
    pub fn element_name(&self, a: FieldElem) -> String {
        if self.n == 1 {
            return a.to_string();
        }
        let ds = digits(a, self.p, self.n as usize);
        let mut terms = Vec::new();
        for (i, &c) in ds.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn encode(ds: &[u32], p: u32) -> FieldElem {
    ds.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Partition of a field into `{0}` and the cosets of the nonzero squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClassPartition {
    pub classes: Vec<Vec<FieldElem>>,
    pub class_of: Vec<usize>,
    pub zero_class: usize,
}

impl SquareClassPartition {
    pub fn nonzero_class_count(&self) -> usize {
        self.classes.len() - 1
    }
}

/// Classes are ordered by smallest member, so `{0}` is class 0 and the
/// squares are class 1.
pub fn square_classes(k: &FiniteField) -> SquareClassPartition {
    let squares = k.nonzero_squares();
    let mut class_of = vec![usize::MAX; k.size()];
    let mut classes = vec![vec![0]];
    class_of[0] = 0;
    for x in 1..k.size() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut members: Vec<FieldElem> = squares.iter().map(|&s| k.mul(s, x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = idx;
        }
        classes.push(members);
    }
    SquareClassPartition { classes, class_of, zero_class: 0 }
}
