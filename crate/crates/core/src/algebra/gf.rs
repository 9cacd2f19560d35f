//! Small finite fields F_{p^n} (p ≤ 17, n ≤ 4) with log/exp tables.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use super::field::{Field, FiniteField};
use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 7] = [2, 3, 5, 7, 11, 13, 17];

// Conway polynomials (the 13^3 entry is the first primitive cubic in index
// order), coefficients c_0..c_{n-1} of the monic modulus.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1]),
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 1, &[1]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 1, &[3]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 1, &[4]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
    (11, 1, &[9]),
    (11, 2, &[2, 7]),
    (11, 3, &[9, 2, 0]),
    (11, 4, &[2, 10, 8, 0]),
    (13, 1, &[11]),
    (13, 2, &[2, 12]),
    (13, 3, &[6, 1, 0]),
    (13, 4, &[2, 12, 3, 0]),
    (17, 1, &[14]),
    (17, 2, &[3, 16]),
    (17, 3, &[14, 1, 0]),
    (17, 4, &[3, 10, 7, 0]),
];

pub struct GfTables {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[k] = g^k for 0 ≤ k < 2(q-1)
    exp: Vec<u32>,
    /// log[v] for v ≠ 0
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
    searched: bool,
}

impl GfTables {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut d = vec![0; self.n as usize];
        for c in d.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn build(p: u32, n: u32, modulus: Vec<u32>) -> Option<GfTables> {
        let q = p.pow(n);
        // multiply by the class of x modulo the monic modulus
        let times_x = |d: &[u32]| -> Vec<u32> {
            let n = n as usize;
            let top = d[n - 1];
            let mut r = vec![0u32; n];
            for i in (1..n).rev() {
                r[i] = d[i - 1];
            }
            for i in 0..n {
                r[i] = (r[i] + (p - top) * modulus[i] % p) % p;
            }
            r
        };
        let mut t = GfTables {
            p,
            n,
            q,
            modulus: modulus.clone(),
            exp: Vec::with_capacity(2 * (q as usize - 1)),
            log: vec![u32::MAX; q as usize],
            add: None,
            neg: vec![0; q as usize],
            searched: false,
        };
        let mut cur = vec![0u32; n as usize];
        cur[0] = 1;
        for k in 0..(q - 1) {
            let v = t.undigits(&cur);
            if v == 0 || t.log[v as usize] != u32::MAX {
                return None;
            }
            t.log[v as usize] = k;
            t.exp.push(v);
            cur = if n == 1 {
                // the modulus is x - r; the class of x is r
                let r = (p - modulus[0]) % p;
                vec![cur[0] * r % p]
            } else {
                times_x(&cur)
            };
        }
        if t.undigits(&cur) != 1 {
            return None;
        }
        for k in 0..(q - 1) as usize {
            let e = t.exp[k];
            t.exp.push(e);
        }
        for v in 0..q {
            let d = t.digits(v);
            let nd: Vec<u32> = d.iter().map(|&c| (p - c) % p).collect();
            t.neg[v as usize] = t.undigits(&nd);
        }
        if q <= 256 {
            let mut tab = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    tab[(a * q + b) as usize] = t.add_slow(a, b);
                }
            }
            t.add = Some(tab);
        }
        Some(t)
    }

    fn search(p: u32, n: u32) -> GfTables {
        let count = p.pow(n);
        for idx in 0..count {
            let mut m = Vec::with_capacity(n as usize);
            let mut v = idx;
            for _ in 0..n {
                m.push(v % p);
                v /= p;
            }
            if let Some(mut t) = GfTables::build(p, n, m) {
                t.searched = true;
                return t;
            }
        }
        unreachable!("a primitive polynomial exists for every finite field")
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), &'static GfTables>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static GfTables>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Handle to the finite field F_{p^n}.
#[derive(Clone, Copy)]
pub struct Fq(&'static GfTables);

impl Fq {
    pub fn new(p: u32, n: u32) -> Result<Fq> {
        if !SUPPORTED_PRIMES.contains(&p) || !(1..=4).contains(&n) {
            return Err(Error::UnsupportedField(format!("F_{{{}^{}}}", p, n)));
        }
        let mut reg = registry().lock().unwrap();
        if let Some(t) = reg.get(&(p, n)) {
            return Ok(Fq(t));
        }
        let baked = CONWAY
            .iter()
            .find(|(pp, nn, _)| *pp == p && *nn == n)
            .map(|(_, _, c)| c.to_vec())
            .expect("table covers every supported (p,n)");
        let tables = GfTables::build(p, n, baked).unwrap_or_else(|| GfTables::search(p, n));
        let leaked: &'static GfTables = Box::leak(Box::new(tables));
        reg.insert((p, n), leaked);
        Ok(Fq(leaked))
    }

    /// Field of order q, a prime power.
    pub fn with_order(q: u64) -> Result<Fq> {
        for &p in SUPPORTED_PRIMES.iter() {
            let mut pw = p as u64;
            for n in 1..=4u32 {
                if pw == q {
                    return Fq::new(p, n);
                }
                pw *= p as u64;
            }
        }
        Err(Error::UnsupportedField(format!("order {}", q)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn n(&self) -> u32 {
        self.0.n
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Coefficients c_0..c_{n-1} of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// True if the baked table entry failed verification and a search was used.
    pub fn modulus_was_searched(&self) -> bool {
        self.0.searched
    }

    pub fn elem(&self, v: u32) -> FieldElem {
        assert!(v < self.0.q);
        FieldElem { f: self.0, v }
    }
    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }
    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }
    /// The fixed generator of the multiplicative group.
    pub fn gen(&self) -> FieldElem {
        self.elem(self.0.exp[1])
    }
    pub fn from_i64(&self, n: i64) -> FieldElem {
        let p = self.0.p as i64;
        self.elem(n.rem_euclid(p) as u32)
    }
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.0.q).map(move |v| self.elem(v))
    }
}

impl PartialEq for Fq {
    fn eq(&self, o: &Fq) -> bool {
        std::ptr::eq(self.0, o.0)
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.0.q)
    }
}

#[derive(Clone, Copy)]
pub struct FieldElem {
    f: &'static GfTables,
    v: u32,
}

impl FieldElem {
    pub fn field(&self) -> Fq {
        Fq(self.f)
    }
    pub fn value(&self) -> u32 {
        self.v
    }
    fn same(&self, o: &FieldElem) {
        debug_assert!(std::ptr::eq(self.f, o.f), "mixed fields");
    }
    /// Discrete log to the fixed generator.
    pub fn log(&self) -> Option<u32> {
        if self.v == 0 {
            None
        } else {
            Some(self.f.log[self.v as usize])
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &FieldElem) -> bool {
        self.v == o.v && std::ptr::eq(self.f, o.f)
    }
}
impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.v.hash(h)
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for FieldElem {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        (self.f.q, self.v).cmp(&(o.f.q, o.v))
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, o: FieldElem) -> FieldElem {
        self.same(&o);
        let v = match &self.f.add {
            Some(t) => t[(self.v * self.f.q + o.v) as usize],
            None => self.f.add_slow(self.v, o.v),
        };
        FieldElem { f: self.f, v }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { f: self.f, v: self.f.neg[self.v as usize] }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, o: FieldElem) -> FieldElem {
        self + (-o)
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, o: FieldElem) -> FieldElem {
        self.same(&o);
        if self.v == 0 || o.v == 0 {
            return FieldElem { f: self.f, v: 0 };
        }
        let k = self.f.log[self.v as usize] + self.f.log[o.v as usize];
        FieldElem { f: self.f, v: self.f.exp[k as usize] }
    }
}

impl Field for FieldElem {
    fn zero_like(&self) -> Self {
        FieldElem { f: self.f, v: 0 }
    }
    fn one_like(&self) -> Self {
        FieldElem { f: self.f, v: 1 }
    }
    fn from_int_like(&self, n: i64) -> Self {
        FieldElem { f: self.f, v: n.rem_euclid(self.f.p as i64) as u32 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let m = self.f.q - 1;
        let k = (m - self.f.log[self.v as usize]) % m;
        Some(FieldElem { f: self.f, v: self.f.exp[k as usize] })
    }
    fn characteristic(&self) -> u64 {
        self.f.p as u64
    }
    fn pth_root(&self) -> Option<Self> {
        Some(super::field::finite_pth_root(self))
    }
    fn derivation(&self) -> Self {
        self.zero_like()
    }
    fn is_perfect(&self) -> bool {
        true
    }
    fn is_compound(&self) -> bool {
        self.f.n > 1 && self.v >= self.f.p && self.f.digits(self.v).iter().filter(|&&c| c != 0).count() > 1
    }
    fn pow(&self, e: u64) -> Self {
        if self.v == 0 {
            return if e == 0 { self.one_like() } else { *self };
        }
        let m = (self.f.q - 1) as u64;
        let k = (self.f.log[self.v as usize] as u64 * (e % m)) % m;
        FieldElem { f: self.f, v: self.f.exp[k as usize] }
    }
}

impl FiniteField for FieldElem {
    fn abs_degree(&self) -> u32 {
        self.f.n
    }
    fn order(&self) -> u64 {
        self.f.q as u64
    }
    fn index(&self) -> u64 {
        self.v as u64
    }
    fn element_at(&self, idx: u64) -> Self {
        assert!(idx < self.f.q as u64);
        FieldElem { f: self.f, v: idx as u32 }
    }
    fn prime_value(&self) -> Option<u64> {
        if self.v < self.f.p {
            Some(self.v as u64)
        } else {
            None
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.n == 1 || self.v < self.f.p {
            return write!(f, "{}", self.v);
        }
        let d = self.f.digits(self.v);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            parts.push(match (i, c) {
                (0, c) => format!("{}", c),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{}*g", c),
                (i, 1) => format!("g^{}", i),
                (i, c) => format!("{}*g^{}", c, i),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baked_moduli_are_primitive() {
        for &p in SUPPORTED_PRIMES.iter() {
            for n in 1..=4 {
                let f = Fq::new(p, n).unwrap();
                assert!(!f.modulus_was_searched(), "F_{}^{}", p, n);
                if f.q() > 2 {
                    assert_eq!(f.gen().log(), Some(1));
                }
            }
        }
    }

    #[test]
    fn f9_cube_root_of_generator() {
        let f = Fq::new(3, 2).unwrap();
        let g = f.gen();
        let r = g.pth_root().unwrap();
        assert_eq!(r, g.pow(3));
        assert_eq!(r.pow(3), g);
    }

    #[test]
    fn inverse_and_distributivity_exhaustive_f16() {
        let f = Fq::new(2, 4).unwrap();
        for a in f.elements() {
            if !a.is_zero() {
                assert!((a * a.inv().unwrap()).is_one());
            }
            for b in f.elements() {
                let c = f.gen();
                assert_eq!(a * (b + c), a * b + a * c);
            }
        }
    }

    #[test]
    fn trace_of_f4_generator() {
        let f = Fq::new(2, 2).unwrap();
        assert_eq!(f.gen().abs_trace(), 1);
        assert_eq!(f.one().abs_trace(), 0);
    }

    #[test]
    fn display_extension_element() {
        let f = Fq::new(3, 2).unwrap();
        assert_eq!(f.gen().to_string(), "g");
        assert_eq!((f.gen() + f.one()).to_string(), "g + 1");
        assert_eq!(f.from_i64(-1).to_string(), "2");
    }
}
