//! Dense univariate polynomials over a field.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, FiniteField};

#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    zero: F,
    /// c[i] is the coefficient of x^i; no trailing zeros.
    c: Vec<F>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl<F: FiniteField> Eq for Poly<F> {}

impl<F: FiniteField> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for c in &self.c {
            c.hash(h);
        }
    }
}

impl<F: FiniteField> PartialOrd for Poly<F> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Degree first, then coefficients from the top down.
impl<F: FiniteField> Ord for Poly<F> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl<F: Field> Poly<F> {
    pub fn new(zero: F, mut c: Vec<F>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { zero, c }
    }
    pub fn zero(proto: &F) -> Self {
        Poly { zero: proto.zero_like(), c: vec![] }
    }
    pub fn one(proto: &F) -> Self {
        Self::constant(proto.one_like())
    }
    pub fn constant(c: F) -> Self {
        Poly::new(c.zero_like(), vec![c])
    }
    pub fn x(proto: &F) -> Self {
        Poly::new(proto.zero_like(), vec![proto.zero_like(), proto.one_like()])
    }
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![c.zero_like(); k + 1];
        v[k] = c;
        Poly::new(v[0].zero_like(), v)
    }
    /// x - a
    pub fn linear(a: F) -> Self {
        Poly::new(a.zero_like(), vec![-a.clone(), a.one_like()])
    }
    pub fn from_ints(proto: &F, c: &[i64]) -> Self {
        Poly::new(proto.zero_like(), c.iter().map(|&v| proto.from_int_like(v)).collect())
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }
    pub fn coeffs(&self) -> &[F] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Degree, with -1 for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| self.zero.clone())
    }
    pub fn is_monic(&self) -> bool {
        self.c.last().map_or(false, |x| x.is_one())
    }
    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly::new(self.zero.clone(), self.c.iter().map(|x| x.clone() * k.clone()).collect())
    }
    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.c.iter().cloned());
        Poly { zero: self.zero.clone(), c: v }
    }
    /// Coefficients reversed at the given degree: x^d f(1/x).
    pub fn reversed(&self, d: usize) -> Self {
        let mut v = vec![self.zero.clone(); d + 1];
        for (i, c) in self.c.iter().enumerate() {
            v[d - i] = c.clone();
        }
        Poly::new(self.zero.clone(), v)
    }
    pub fn truncate(&self, k: usize) -> Self {
        Poly::new(self.zero.clone(), self.c.iter().take(k).cloned().collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.zero.clone();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluate at an element of a larger ring through a coefficient map.
    pub fn eval_with<R: Field>(&self, x: &R, embed: impl Fn(&F) -> R) -> R {
        let mut acc = x.zero_like();
        for c in self.c.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn map<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(proto.zero_like(), self.c.iter().map(f).collect())
    }

    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(&self.zero);
        for c in self.c.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * self.zero.from_int_like(i as i64))
            .collect();
        Poly::new(self.zero.clone(), v)
    }

    /// Apply the coefficient field's derivation (d/du on F_q(u)) coefficientwise.
    pub fn coeff_derivation(&self) -> Self {
        Poly::new(self.zero.clone(), self.c.iter().map(|c| c.derivation()).collect())
    }

    /// r with r^p = self, if all exponents are divisible by p and coefficients are p-th powers.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.zero.characteristic() as usize;
        let mut v = Vec::new();
        for (i, c) in self.c.iter().enumerate() {
            if i % p == 0 {
                v.push(c.pth_root()?);
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(self.zero.clone(), v))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.zero);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.deg() < d.deg() {
            return (Poly::zero(&self.zero), self.clone());
        }
        let inv = d.lc().inv().expect("leading coefficient is invertible");
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![self.zero.clone(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = r[k + dd].clone() * inv.clone();
            if coef.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].clone() - coef.clone() * dc.clone();
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(self.zero.clone(), q), Poly::new(self.zero.clone(), r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, or None if d does not divide self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, f: &Self) -> bool {
        f.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let z = &self.zero;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(z), Poly::zero(z));
        let (mut t0, mut t1) = (Poly::zero(z), Poly::one(z));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().inv() {
            Some(i) if !r0.is_zero() => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            _ => (r0, s0, t0),
        }
    }

    /// Inverse modulo m, if coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.xgcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        (self * o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.zero).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// Multiplicity of the irreducible (or any nonconstant) p as a factor of self.
    pub fn valuation_at(&self, p: &Self) -> u32 {
        assert!(!self.is_zero());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_compound() { format!("({})", c) } else { c.to_string() };
            parts.push(match i {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("{}*{}", cs, var),
                _ if c.is_one() => format!("{}^{}", var, i),
                _ => format!("{}*{}^{}", cs, var, i),
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() + b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(self.zero.clone(), v)
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.clone() - b.clone(),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(self.zero.clone(), v)
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut v = vec![self.zero.clone(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(self.zero.clone(), v)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly { zero: self.zero.clone(), c: self.c.iter().map(|x| -x.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, o: Poly<F>) -> Poly<F> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

/// Chinese remaindering: the unique r with deg r < deg Π m_i and r ≡ a_i mod m_i.
pub fn crt<F: Field>(pairs: &[(Poly<F>, Poly<F>)]) -> Option<Poly<F>> {
    let (first_r, first_m) = pairs.first()?;
    let mut r = first_r.rem(first_m);
    let mut m = first_m.clone();
    for (a, mi) in &pairs[1..] {
        // r + m·k ≡ a mod mi
        let inv = m.inv_mod(mi)?;
        let k = (&(a - &r) * &inv).rem(mi);
        r = &r + &(&m * &k);
        m = &m * mi;
    }
    Some(r.rem(&m))
}

/// All monic polynomials of exact degree d, in index order.
pub fn monic_polys<F: FiniteField>(proto: &F, d: usize) -> impl Iterator<Item = Poly<F>> + '_ {
    let q = proto.order();
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(proto.element_at(idx % q));
            idx /= q;
        }
        v.push(proto.one_like());
        Poly::new(proto.zero_like(), v)
    })
}

/// All polynomials of degree < d (including zero), in index order.
pub fn polys_below<F: FiniteField>(proto: &F, d: usize) -> impl Iterator<Item = Poly<F>> + '_ {
    let q = proto.order();
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(proto.element_at(idx % q));
            idx /= q;
        }
        Poly::new(proto.zero_like(), v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::Fq;

    #[test]
    fn derivative_char2() {
        let f = Fq::new(2, 1).unwrap();
        let p = Poly::from_ints(&f.zero(), &[0, 1, 0, 1]);
        assert_eq!(p.derivative(), Poly::from_ints(&f.zero(), &[1, 0, 1]));
    }

    #[test]
    fn divrem_and_gcd() {
        let f = Fq::new(3, 1).unwrap();
        let z = f.zero();
        let a = &Poly::from_ints(&z, &[1, 1]) * &Poly::from_ints(&z, &[2, 0, 1]);
        let b = &Poly::from_ints(&z, &[1, 1]) * &Poly::from_ints(&z, &[0, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&z, &[1, 1]));
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn crt_two_moduli() {
        let f = Fq::new(5, 1).unwrap();
        let z = f.zero();
        let m1 = Poly::from_ints(&z, &[0, 1]);
        let m2 = Poly::from_ints(&z, &[1, 1]);
        let r = crt(&[(Poly::from_ints(&z, &[2]), m1.clone()), (Poly::from_ints(&z, &[3]), m2.clone())]).unwrap();
        assert_eq!(r.rem(&m1), Poly::from_ints(&z, &[2]));
        assert_eq!(r.rem(&m2), Poly::from_ints(&z, &[3]));
    }

    #[test]
    fn display() {
        let f = Fq::new(3, 1).unwrap();
        let p = Poly::from_ints(&f.zero(), &[1, 2, 1]);
        assert_eq!(p.to_string(), "x^2 + 2*x + 1");
    }
}
