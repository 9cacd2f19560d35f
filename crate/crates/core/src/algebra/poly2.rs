//! Bivariate polynomials F[x, y], kept as polynomials in y over F[x].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::factor::factor;
use super::field::{Field, FiniteField};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Total degree above which bivariate gcd and factoring refuse to run.
pub const POLY2_DEGREE_CAP: i64 = 24;

#[derive(Clone, Debug)]
pub struct Poly2<F: Field> {
    zero: F,
    /// c[j] is the coefficient of y^j; no trailing zeros.
    c: Vec<Poly<F>>,
}

impl<F: Field> PartialEq for Poly2<F> {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c
    }
}
impl<F: FiniteField> Eq for Poly2<F> {}

impl<F: FiniteField> Hash for Poly2<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for c in &self.c {
            c.hash(h);
        }
    }
}

impl<F: FiniteField> PartialOrd for Poly2<F> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Total degree, then y-degree, then coefficients from the top.
impl<F: FiniteField> Ord for Poly2<F> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total_deg()
            .cmp(&o.total_deg())
            .then(self.c.len().cmp(&o.c.len()))
            .then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl<F: Field> Poly2<F> {
    pub fn new(zero: F, mut c: Vec<Poly<F>>) -> Self {
        while c.last().map_or(false, |p| p.is_zero()) {
            c.pop();
        }
        Poly2 { zero, c }
    }
    pub fn zero(proto: &F) -> Self {
        Poly2 { zero: proto.zero_like(), c: vec![] }
    }
    pub fn one(proto: &F) -> Self {
        Self::constant(proto.one_like())
    }
    pub fn constant(c: F) -> Self {
        Self::from_x(Poly::constant(c))
    }
    /// A polynomial in x alone.
    pub fn from_x(p: Poly<F>) -> Self {
        Poly2::new(p.proto().zero_like(), vec![p])
    }
    /// A polynomial in y alone.
    pub fn from_y(p: &Poly<F>) -> Self {
        Poly2::new(p.proto().zero_like(), p.coeffs().iter().map(|c| Poly::constant(c.clone())).collect())
    }
    pub fn x(proto: &F) -> Self {
        Self::from_x(Poly::x(proto))
    }
    pub fn y(proto: &F) -> Self {
        Poly2::new(proto.zero_like(), vec![Poly::zero(proto), Poly::one(proto)])
    }
    /// Σ c·x^i·y^j over the given (i, j, c).
    pub fn from_terms(proto: &F, terms: &[(usize, usize, F)]) -> Self {
        let mut acc = Poly2::zero(proto);
        for (i, j, c) in terms {
            acc = &acc + &Poly2::monomial(c.clone(), *i, *j);
        }
        acc
    }
    pub fn from_ints(proto: &F, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(i, j, n)| (i, j, proto.from_int_like(n))).collect();
        Self::from_terms(proto, &t)
    }
    pub fn monomial(c: F, i: usize, j: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![Poly::zero(&zero); j];
        v.push(Poly::monomial(c, i));
        Poly2::new(zero, v)
    }

    pub fn proto(&self) -> &F {
        &self.zero
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1 && self.c.first().map_or(true, |p| p.is_constant())
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    /// Coefficients in y.
    pub fn coeffs_y(&self) -> &[Poly<F>] {
        &self.c
    }
    pub fn coeff_y(&self, j: usize) -> Poly<F> {
        self.c.get(j).cloned().unwrap_or_else(|| Poly::zero(&self.zero))
    }
    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.c.get(j).map_or_else(|| self.zero.clone(), |p| p.coeff(i))
    }
    /// Nonzero terms (i, j, c) of c·x^i·y^j.
    pub fn terms(&self) -> Vec<(usize, usize, F)> {
        let mut out = vec![];
        for (j, p) in self.c.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }
    pub fn deg_y(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn deg_x(&self) -> i64 {
        self.c.iter().map(|p| p.deg()).max().unwrap_or(-1)
    }
    pub fn total_deg(&self) -> i64 {
        self.c.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(j, p)| p.deg() + j as i64).max().unwrap_or(-1)
    }
    pub fn lc_y(&self) -> Poly<F> {
        self.c.last().cloned().unwrap_or_else(|| Poly::zero(&self.zero))
    }
    /// The polynomial in x, when y does not occur.
    pub fn as_x_poly(&self) -> Option<Poly<F>> {
        if self.c.len() <= 1 {
            Some(self.coeff_y(0))
        } else {
            None
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        Poly2::new(self.zero.clone(), self.c.iter().map(|p| p.scale(k)).collect())
    }
    pub fn mul_x_poly(&self, k: &Poly<F>) -> Self {
        Poly2::new(self.zero.clone(), self.c.iter().map(|p| p * k).collect())
    }
    pub fn shift_y(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Poly::zero(&self.zero); k];
        v.extend(self.c.iter().cloned());
        Poly2 { zero: self.zero.clone(), c: v }
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly2::one(&self.zero);
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

    pub fn eval(&self, x: &F, y: &F) -> F {
        let mut acc = self.zero.clone();
        for p in self.c.iter().rev() {
            acc = acc * y.clone() + p.eval(x);
        }
        acc
    }
    /// f(a, y) as a polynomial in y.
    pub fn eval_x(&self, a: &F) -> Poly<F> {
        Poly::new(self.zero.clone(), self.c.iter().map(|p| p.eval(a)).collect())
    }
    /// Evaluation in any commutative ring given by its operations.
    pub fn eval_in<R: Clone>(
        &self,
        x: &R,
        y: &R,
        zero: &R,
        embed: impl Fn(&F) -> R,
        add: impl Fn(&R, &R) -> R,
        mul: impl Fn(&R, &R) -> R,
    ) -> R {
        let mut acc = zero.clone();
        for p in self.c.iter().rev() {
            let mut inner = zero.clone();
            for c in p.coeffs().iter().rev() {
                inner = add(&mul(&inner, x), &embed(c));
            }
            acc = add(&mul(&acc, y), &inner);
        }
        acc
    }

    pub fn eval_with<R: Field>(&self, x: &R, y: &R, embed: impl Fn(&F) -> R) -> R {
        self.eval_in(x, y, &x.zero_like(), embed, |a, b| a.clone() + b.clone(), |a, b| a.clone() * b.clone())
    }

    pub fn map<G: Field>(&self, proto: &G, f: impl Fn(&F) -> G) -> Poly2<G> {
        Poly2::new(proto.zero_like(), self.c.iter().map(|p| p.map(proto, &f)).collect())
    }
    /// Exchange the roles of x and y.
    pub fn swap(&self) -> Self {
        let terms: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (j, i, c)).collect();
        Poly2::from_terms(&self.zero, &terms)
    }
    pub fn derivative_x(&self) -> Self {
        Poly2::new(self.zero.clone(), self.c.iter().map(|p| p.derivative()).collect())
    }
    pub fn derivative_y(&self) -> Self {
        let v = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, p)| p.scale(&self.zero.from_int_like(j as i64)))
            .collect();
        Poly2::new(self.zero.clone(), v)
    }
    /// f(x + a, y + b).
    pub fn translate(&self, a: &F, b: &F) -> Self {
        let xa = Poly::new(self.zero.clone(), vec![a.clone(), self.zero.one_like()]);
        let yb = Poly2::new(self.zero.clone(), vec![Poly::constant(b.clone()), Poly::one(&self.zero)]);
        let mut acc = Poly2::zero(&self.zero);
        for p in self.c.iter().rev() {
            acc = &(&acc * &yb) + &Poly2::from_x(p.compose(&xa));
        }
        acc
    }
    /// The homogeneous part of top total degree.
    pub fn top_form(&self) -> Self {
        let d = self.total_deg();
        let t: Vec<_> = self.terms().into_iter().filter(|(i, j, _)| (i + j) as i64 == d).collect();
        Poly2::from_terms(&self.zero, &t)
    }
    /// w^d·f(1/w, u/w) in the variables (u, w) = (x, y); the chart of P^2 around [1:s:0].
    pub fn chart_x_infinity(&self) -> Self {
        let d = self.total_deg().max(0) as usize;
        let t: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (j, d - i - j, c)).collect();
        Poly2::from_terms(&self.zero, &t)
    }
    /// w^d·f(u/w, 1/w) in the variables (u, w) = (x, y); the chart around [0:1:0].
    pub fn chart_y_infinity(&self) -> Self {
        let d = self.total_deg().max(0) as usize;
        let t: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (i, d - i - j, c)).collect();
        Poly2::from_terms(&self.zero, &t)
    }

    /// Exact quotient, if d divides self.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dy = d.c.len() - 1;
        let lc = d.lc_y();
        let mut r = self.clone();
        let mut q = vec![Poly::zero(&self.zero); self.c.len().saturating_sub(dy)];
        while !r.is_zero() {
            let ry = r.c.len() - 1;
            if ry < dy {
                return None;
            }
            let t = r.lc_y().div_exact(&lc)?;
            let k = ry - dy;
            r = &r - &d.mul_x_poly(&t).shift_y(k);
            q[k] = &q[k] + &t;
        }
        Some(Poly2::new(self.zero.clone(), q))
    }
    pub fn divides(&self, f: &Self) -> bool {
        f.div_exact(self).is_some()
    }
    /// Number of times p divides self (self nonzero, p nonconstant).
    pub fn valuation_at(&self, p: &Self) -> u32 {
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(p) {
            cur = q;
            k += 1;
        }
        k
    }
    /// Remainder in y modulo m, whose leading y-coefficient is a nonzero constant.
    pub fn rem_y(&self, m: &Self) -> Self {
        let inv = m.lc_y().lc().inv().expect("modulus is monic in y up to a constant");
        assert!(m.lc_y().is_constant());
        let dy = m.c.len() - 1;
        let mut r = self.clone();
        while r.c.len() > dy {
            let k = r.c.len() - 1 - dy;
            let t = r.lc_y().scale(&inv);
            r = &r - &m.mul_x_poly(&t).shift_y(k);
        }
        r
    }

    /// F(x)[y] view.
    pub fn to_ratfunc_y(&self) -> Poly<RatFunc<F>> {
        let proto = RatFunc::constant(self.zero.clone(), "x");
        Poly::new(proto, self.c.iter().map(|p| RatFunc::from_poly(p.clone(), "x")).collect())
    }

    pub fn fmt_vars(&self, xv: &str, yv: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut t = self.terms();
        t.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0)));
        let parts: Vec<String> = t
            .iter()
            .map(|(i, j, c)| {
                let mut mono = vec![];
                for (v, e) in [(xv, *i), (yv, *j)] {
                    match e {
                        0 => {}
                        1 => mono.push(v.to_string()),
                        _ => mono.push(format!("{}^{}", v, e)),
                    }
                }
                let cs = if c.is_compound() { format!("({})", c) } else { c.to_string() };
                if mono.is_empty() {
                    cs
                } else if c.is_one() {
                    mono.join("*")
                } else {
                    format!("{}*{}", cs, mono.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// More than one term.
    pub fn is_compound(&self) -> bool {
        self.terms().len() > 1
    }
}

/// Leading term of a nonzero polynomial in the order (y-degree, x-degree).
fn lead<F: Field>(f: &Poly2<F>) -> F {
    f.lc_y().lc()
}

impl<F: FiniteField> Poly2<F> {
    /// Scaled so the term of highest y-degree, then x-degree, has coefficient 1.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&lead(self).inv().unwrap())
    }
    pub fn lead_coeff(&self) -> F {
        if self.is_zero() {
            self.zero.clone()
        } else {
            lead(self)
        }
    }

    /// gcd of the y-coefficients, monic.
    pub fn content_y(&self) -> Poly<F> {
        let mut g = Poly::zero(&self.zero);
        for p in &self.c {
            g = g.gcd(p);
            if g.is_one() {
                break;
            }
        }
        g.monic()
    }
    /// gcd of the x-coefficients, as a polynomial in y, monic.
    pub fn content_x(&self) -> Poly<F> {
        self.swap().content_y()
    }

    /// Normalized gcd, through content and primitive part over F(x)[y].
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(o.normalized());
        }
        if o.is_zero() {
            return Ok(self.normalized());
        }
        for f in [self, o] {
            if f.total_deg() > POLY2_DEGREE_CAP {
                return Err(Error::BudgetExceeded(format!("bivariate degree {} above cap {}", f.total_deg(), POLY2_DEGREE_CAP)));
            }
        }
        Ok(self.gcd_uncapped(o))
    }

    pub(crate) fn gcd_uncapped(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalized();
        }
        if o.is_zero() {
            return self.normalized();
        }
        let (ca, cb) = (self.content_y(), o.content_y());
        let gc = Poly2::from_x(ca.gcd(&cb));
        let pa = self.div_exact(&Poly2::from_x(ca)).unwrap();
        let pb = o.div_exact(&Poly2::from_x(cb)).unwrap();
        if pa.deg_y() == 0 || pb.deg_y() == 0 {
            return gc.normalized();
        }
        let g = pa.to_ratfunc_y().gcd(&pb.to_ratfunc_y());
        let h = clear_denominators(&g, &self.zero);
        let h = h.div_exact(&Poly2::from_x(h.content_y())).unwrap();
        (&gc * &h).normalized()
    }

    /// Res_y(self, o) as a polynomial in x.
    pub fn resultant_y(&self, o: &Self) -> Poly<F> {
        let mut a = self.to_ratfunc_y();
        let mut b = o.to_ratfunc_y();
        if a.is_zero() || b.is_zero() {
            return Poly::zero(&self.zero);
        }
        let one = RatFunc::constant(self.zero.one_like(), "x");
        let mut acc = one.clone();
        loop {
            let (m, n) = (a.deg(), b.deg());
            if n == 0 {
                acc = acc * b.lc().pow(m as u64);
                break;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Poly::zero(&self.zero);
            }
            let mut k = b.lc().pow((m - r.deg()) as u64);
            if m % 2 == 1 && n % 2 == 1 {
                k = -k;
            }
            acc = acc * k;
            a = b;
            b = r;
        }
        assert!(acc.den().is_one(), "resultant is a polynomial");
        acc.num().clone()
    }

    /// r with r^p = self when every exponent is divisible by p.
    pub fn pth_root(&self) -> Option<Self> {
        let p = self.zero.characteristic() as usize;
        let mut t = vec![];
        for (i, j, c) in self.terms() {
            if i % p != 0 || j % p != 0 {
                return None;
            }
            t.push((i / p, j / p, c.pth_root()?));
        }
        Some(Poly2::from_terms(&self.zero, &t))
    }

    /// Irreducible factors (normalized) with multiplicities. The constant factor is dropped.
    pub fn factor(&self) -> Result<Vec<Factor2<F>>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.total_deg() > POLY2_DEGREE_CAP {
            return Err(Error::BudgetExceeded(format!("bivariate degree {} above cap {}", self.total_deg(), POLY2_DEGREE_CAP)));
        }
        let mut out: Vec<Factor2<F>> = vec![];
        let cy = self.content_y();
        for (p, e) in if cy.deg() > 0 { factor(&cy)? } else { vec![] } {
            out.push(Factor2 { poly: Poly2::from_x(p).normalized(), mult: e, certified: true });
        }
        let g = self.div_exact(&Poly2::from_x(cy)).unwrap();
        let cx = g.content_x();
        for (p, e) in if cx.deg() > 0 { factor(&cx)? } else { vec![] } {
            out.push(Factor2 { poly: Poly2::from_y(&p).normalized(), mult: e, certified: true });
        }
        let g = g.div_exact(&Poly2::from_y(&cx)).unwrap();
        split(&g, 1, &mut out)?;
        out.sort_by(|a, b| a.poly.cmp(&b.poly));
        let mut merged: Vec<Factor2<F>> = vec![];
        for f in out {
            match merged.last_mut() {
                Some(m) if m.poly == f.poly => {
                    m.mult += f.mult;
                    m.certified &= f.certified;
                }
                _ => merged.push(f),
            }
        }
        Ok(merged)
    }

    /// True when no nontrivial factorization exists; the flag says whether that is proven.
    pub fn is_irreducible(&self) -> Result<(bool, bool)> {
        let f = self.factor()?;
        Ok(match f.as_slice() {
            [one] if one.mult == 1 => (true, one.certified),
            _ => (false, true),
        })
    }
}

fn clear_denominators<F: FiniteField>(g: &Poly<RatFunc<F>>, proto: &F) -> Poly2<F> {
    let mut l = Poly::one(proto);
    for c in g.coeffs() {
        l = &l * &c.den().div_exact(&l.gcd(c.den())).unwrap();
    }
    Poly2::new(
        proto.zero_like(),
        g.coeffs().iter().map(|c| c.num() * &l.div_exact(c.den()).unwrap()).collect(),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor2<F: Field> {
    pub poly: Poly2<F>,
    pub mult: u32,
    /// False when irreducibility rests on a bounded search only.
    pub certified: bool,
}

/// Factor a polynomial that is primitive in both x and y.
fn split<F: FiniteField>(g: &Poly2<F>, m: u32, out: &mut Vec<Factor2<F>>) -> Result<()> {
    if g.total_deg() <= 0 {
        return Ok(());
    }
    // repeated factors first
    for d in [g.derivative_y(), g.derivative_x()] {
        if d.is_zero() {
            continue;
        }
        let h = g.gcd(&d)?;
        if h.total_deg() > 0 {
            split(&h, m, out)?;
            return split(&g.div_exact(&h).unwrap(), m, out);
        }
        break;
    }
    if g.derivative_x().is_zero() && g.derivative_y().is_zero() {
        let r = g.pth_root().expect("both partials vanish over a perfect field");
        return split(&r, m * g.zero.characteristic() as u32, out);
    }
    match find_factor(g)? {
        Found::Factor(h) => {
            split(&h, m, out)?;
            split(&g.div_exact(&h).unwrap(), m, out)
        }
        Found::Irreducible(certified) => {
            out.push(Factor2 { poly: g.normalized(), mult: m, certified });
            Ok(())
        }
    }
}

enum Found<F: Field> {
    Factor(Poly2<F>),
    Irreducible(bool),
}

const DIVISOR_BUDGET: usize = 4096;

fn find_factor<F: FiniteField>(g: &Poly2<F>) -> Result<Found<F>> {
    if g.deg_y() == 1 || g.deg_x() == 1 {
        return Ok(Found::Irreducible(true));
    }
    if let Some(h) = linear_factor_in_y(g)? {
        return Ok(Found::Factor(h));
    }
    let sw = g.swap();
    if let Some(h) = linear_factor_in_y(&sw)? {
        return Ok(Found::Factor(h.swap()));
    }
    if g.deg_y() <= 3 || g.deg_x() <= 3 {
        return Ok(Found::Irreducible(true));
    }
    // remaining: look for a factor of total degree ≤ 2
    let proto = g.zero.clone();
    let elems = proto.elements();
    let monos = [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let n = monos.len() as u32;
    let q = elems.len();
    for code in 0..(q as u64).pow(n) * q as u64 {
        let mut c = code;
        let mut t = vec![];
        let c0 = elems[(c % q as u64) as usize].clone();
        c /= q as u64;
        t.push((0, 0, c0));
        for &(i, j) in &monos {
            t.push((i, j, elems[(c % q as u64) as usize].clone()));
            c /= q as u64;
        }
        let h = Poly2::from_terms(&proto, &t);
        if h.deg_x() < 1 || h.deg_y() < 1 || !lead(&h).is_one() {
            continue;
        }
        if h.divides(g) && h.total_deg() < g.total_deg() {
            return Ok(Found::Factor(h));
        }
    }
    Ok(Found::Irreducible(g.total_deg() <= 5))
}

/// Monic divisors of p (p nonzero), up to a budget.
fn monic_divisors<F: FiniteField>(p: &Poly<F>) -> Result<Option<Vec<Poly<F>>>> {
    let mut out = vec![Poly::one(p.proto())];
    if p.deg() <= 0 {
        return Ok(Some(out));
    }
    for (q, e) in factor(p)? {
        let mut next = vec![];
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &q;
                next.push(acc.clone());
            }
        }
        out = next;
        if out.len() > DIVISOR_BUDGET {
            return Ok(None);
        }
    }
    Ok(Some(out))
}

/// A factor A(x)·y + B(x) of g, via A | lc_y(g) and B | g(x, 0).
fn linear_factor_in_y<F: FiniteField>(g: &Poly2<F>) -> Result<Option<Poly2<F>>> {
    let c0 = g.coeff_y(0);
    if c0.is_zero() {
        return Ok(Some(Poly2::y(&g.zero)));
    }
    let (Some(da), Some(db)) = (monic_divisors(&g.lc_y())?, monic_divisors(&c0)?) else {
        return Ok(None);
    };
    let scalars: Vec<F> = g.zero.elements().into_iter().filter(|c| !c.is_zero()).collect();
    for a in &da {
        for b in &db {
            for s in &scalars {
                let h = Poly2::new(g.zero.clone(), vec![b.scale(s), a.clone()]);
                if h.divides(g) {
                    return Ok(Some(h));
                }
            }
        }
    }
    Ok(None)
}

impl<F: Field> fmt::Display for Poly2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_vars("x", "y"))
    }
}

impl<'a, F: Field> Add<&'a Poly2<F>> for &'a Poly2<F> {
    type Output = Poly2<F>;
    fn add(self, o: &Poly2<F>) -> Poly2<F> {
        let n = self.c.len().max(o.c.len());
        let z = Poly::zero(&self.zero);
        let v = (0..n).map(|j| self.c.get(j).unwrap_or(&z) + o.c.get(j).unwrap_or(&z)).collect();
        Poly2::new(self.zero.clone(), v)
    }
}

impl<'a, F: Field> Sub<&'a Poly2<F>> for &'a Poly2<F> {
    type Output = Poly2<F>;
    fn sub(self, o: &Poly2<F>) -> Poly2<F> {
        let n = self.c.len().max(o.c.len());
        let z = Poly::zero(&self.zero);
        let v = (0..n).map(|j| self.c.get(j).unwrap_or(&z) - o.c.get(j).unwrap_or(&z)).collect();
        Poly2::new(self.zero.clone(), v)
    }
}

impl<'a, F: Field> Mul<&'a Poly2<F>> for &'a Poly2<F> {
    type Output = Poly2<F>;
    fn mul(self, o: &Poly2<F>) -> Poly2<F> {
        if self.is_zero() || o.is_zero() {
            return Poly2::zero(&self.zero);
        }
        let mut v = vec![Poly::zero(&self.zero); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        Poly2::new(self.zero.clone(), v)
    }
}

impl<F: Field> Neg for &Poly2<F> {
    type Output = Poly2<F>;
    fn neg(self) -> Poly2<F> {
        Poly2 { zero: self.zero.clone(), c: self.c.iter().map(|p| -p).collect() }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl<F: Field> $tr for Poly2<F> {
            type Output = Poly2<F>;
            fn $m(self, o: Poly2<F>) -> Poly2<F> {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<F: Field> Neg for Poly2<F> {
    type Output = Poly2<F>;
    fn neg(self) -> Poly2<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElem, Fq};

    fn xy(q: u32) -> (Poly2<FieldElem>, Poly2<FieldElem>) {
        let f = Fq::with_order(q as u64).unwrap();
        (Poly2::x(&f.zero()), Poly2::y(&f.zero()))
    }

    #[test]
    fn exact_division_and_degrees() {
        let (x, y) = xy(3);
        let f = &(&x + &y) * &(&x - &y);
        assert_eq!(f.total_deg(), 2);
        assert_eq!(f.div_exact(&(&x + &y)), Some(&x - &y));
        assert_eq!(f.div_exact(&(&x + &Poly2::one(x.proto()))), None);
        assert_eq!((&(&x * &y) * &y).valuation_at(&y), 2);
        assert_eq!((&y * &y).div_exact(&(&x * &y)), None);
    }

    #[test]
    fn gcd_and_resultant() {
        let (x, y) = xy(3);
        let one = Poly2::one(x.proto());
        let a = &(&x + &y) * &(&(&x * &y) + &one);
        let b = &(&x + &y) * &(&y - &x);
        assert_eq!(a.gcd(&b).unwrap(), (&x + &y).normalized());
        assert!(x.gcd(&y).unwrap().is_one());
        // Res_y(y - x^2, y - 1) = 1 - x^2 up to sign
        let r = (&y - &(&x * &x)).resultant_y(&(&y - &one));
        assert_eq!(r.deg(), 2);
        assert!(r.eval(&x.proto().one_like()).is_zero());
    }

    #[test]
    fn factoring_recovers_products() {
        let (x, y) = xy(2);
        let one = Poly2::one(x.proto());
        let p1 = &(&(&y * &y) + &(&(&x * &x) * &x)) + &one; // smooth cubic, irreducible
        let p2 = &x + &y;
        let f = &(&p1 * &p2) * &(&p2 * &x);
        let fac = f.factor().unwrap();
        let mut prod = Poly2::one(x.proto());
        for t in &fac {
            prod = &prod * &t.poly.pow(t.mult as u64);
        }
        assert_eq!(prod.normalized(), f.normalized());
        assert_eq!(fac.len(), 3);
        assert!(fac.iter().all(|t| t.certified));
        // a p-th power
        let g = (&x + &(&y * &y)).pow(2);
        let fg = g.factor().unwrap();
        assert_eq!(fg.len(), 1);
        assert_eq!(fg[0].mult, 2);
    }

    #[test]
    fn translation_and_charts() {
        let (x, y) = xy(3);
        let f = &(&x * &x) + &y;
        let a = x.proto().from_int_like(1);
        let t = f.translate(&a, &a);
        assert_eq!(t.eval(&x.proto().zero_like(), &x.proto().zero_like()), f.eval(&a, &a));
        // x^2 + y at infinity in the chart (u, w): 1 + u·w
        let c = f.chart_x_infinity();
        assert_eq!(c, Poly2::from_ints(x.proto(), &[(0, 0, 1), (1, 1, 1)]));
    }
}
