//! Truncated Laurent series over a coefficient field E, with explicit precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Field;
use crate::error::{Error, Result};

/// Precision marker for series with no truncation (polynomials in t, t^-1).
pub const EXACT: i64 = i64::MAX / 4;

/// Relative precision used when inverting an exact non-monomial series.
pub const INV_REL_PREC: i64 = 48;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

/// Σ c_k t^(start+k), trusted modulo t^prec.
#[derive(Clone, Debug)]
pub struct LaurentSeries<E: Field> {
    zero: E,
    start: i64,
    c: Vec<E>,
    prec: i64,
    var: &'static str,
}

impl<E: Field> PartialEq for LaurentSeries<E> {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec && self.start == o.start && self.c == o.c
    }
}

impl<E: Field> LaurentSeries<E> {
    fn normalize(mut self) -> Self {
        // drop terms beyond the precision, then trim both ends
        if self.prec < EXACT {
            let keep = (self.prec - self.start).clamp(0, self.c.len() as i64) as usize;
            self.c.truncate(keep);
        }
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().position(|x| !x.is_zero()).unwrap_or(self.c.len());
        if lead > 0 {
            self.c.drain(..lead);
            self.start += lead as i64;
        }
        if self.c.is_empty() {
            self.start = 0;
        }
        self
    }

    pub fn from_coeffs(proto: &E, start: i64, c: Vec<E>, prec: i64, var: &'static str) -> Self {
        LaurentSeries { zero: proto.zero_like(), start, c, prec, var }.normalize()
    }

    pub fn from_terms(proto: &E, terms: &[(i64, E)], prec: i64, var: &'static str) -> Self {
        let nz: Vec<&(i64, E)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
        if nz.is_empty() {
            return Self::zero(proto, prec, var);
        }
        let lo = nz.iter().map(|(e, _)| *e).min().unwrap();
        let hi = nz.iter().map(|(e, _)| *e).max().unwrap();
        let mut c = vec![proto.zero_like(); (hi - lo + 1) as usize];
        for (e, v) in nz {
            let i = (e - lo) as usize;
            c[i] = c[i].clone() + v.clone();
        }
        Self::from_coeffs(proto, lo, c, prec, var)
    }

    pub fn zero(proto: &E, prec: i64, var: &'static str) -> Self {
        LaurentSeries { zero: proto.zero_like(), start: 0, c: vec![], prec, var }
    }
    pub fn exact_zero(proto: &E) -> Self {
        Self::zero(proto, EXACT, "t")
    }
    pub fn constant(c: E, prec: i64) -> Self {
        Self::from_coeffs(&c.zero_like(), 0, vec![c.clone()], prec, "t")
    }
    pub fn monomial(c: E, e: i64, prec: i64) -> Self {
        Self::from_coeffs(&c.zero_like(), e, vec![c.clone()], prec, "t")
    }
    /// t^e, exact.
    pub fn t_pow(proto: &E, e: i64) -> Self {
        Self::monomial(proto.one_like(), e, EXACT)
    }

    pub fn with_var(mut self, var: &'static str) -> Self {
        self.var = var;
        self
    }
    pub fn var(&self) -> &'static str {
        self.var
    }
    pub fn proto(&self) -> &E {
        &self.zero
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }
    /// Zero to the known precision.
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// None for the zero-to-precision series (the +∞ sentinel).
    pub fn valuation(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.start)
        }
    }
    /// Valuation, or the precision as a lower bound for a zero-to-precision series.
    pub fn valuation_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }
    pub fn try_valuation(&self) -> Result<i64> {
        self.valuation().ok_or_else(|| {
            Error::InsufficientPrecision(format!("series is zero modulo {}^{}", self.var, self.prec))
        })
    }
    pub fn leading(&self) -> Option<(i64, E)> {
        self.c.first().map(|c| (self.start, c.clone()))
    }
    /// Highest stored exponent.
    pub fn top_exponent(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.start + self.c.len() as i64 - 1)
        }
    }
    pub fn coeff(&self, e: i64) -> E {
        if e < self.start || e >= self.start + self.c.len() as i64 {
            self.zero.clone()
        } else {
            self.c[(e - self.start) as usize].clone()
        }
    }
    /// Coefficient, failing if it lies beyond the trusted precision.
    pub fn try_coeff(&self, e: i64) -> Result<E> {
        if e >= self.prec {
            return Err(Error::InsufficientPrecision(format!(
                "coefficient of {}^{} requested at precision {}",
                self.var, e, self.prec
            )));
        }
        Ok(self.coeff(e))
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, E)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i64, c.clone()))
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(prec);
        s.normalize()
    }
    /// Terms with exponent < 0.
    pub fn polar_part(&self) -> Self {
        let terms: Vec<(i64, E)> = self.terms().filter(|(e, _)| *e < 0).collect();
        Self::from_terms(&self.zero, &terms, self.prec, self.var)
    }
    pub fn is_integral(&self) -> Result<bool> {
        match self.valuation() {
            Some(v) => Ok(v >= 0),
            None if self.prec >= 0 => Ok(true),
            None => Err(Error::InsufficientPrecision("integrality undecidable".into())),
        }
    }

    pub fn map_coeffs<G: Field>(&self, proto: &G, f: impl Fn(&E) -> G) -> LaurentSeries<G> {
        LaurentSeries::from_coeffs(proto, self.start, self.c.iter().map(f).collect(), self.prec, self.var)
    }
    pub fn scale(&self, k: &E) -> Self {
        self.map_coeffs(&self.zero, |c| c.clone() * k.clone())
    }
    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.start += k;
        s.prec = sat_add(s.prec, k);
        s.normalize()
    }

    /// d/dt, termwise.
    pub fn derivative(&self) -> Self {
        let terms: Vec<(i64, E)> =
            self.terms().map(|(e, c)| (e - 1, c * self.zero.from_int_like(e))).collect();
        let prec = if self.is_exact() { EXACT } else { self.prec - 1 };
        Self::from_terms(&self.zero, &terms, prec, self.var)
    }

    /// Apply the coefficient derivation termwise (the du-part of d).
    pub fn coeff_derivation(&self) -> Self {
        self.map_coeffs(&self.zero, |c| c.derivation())
    }

    pub fn try_inv(&self) -> Result<Self> {
        let v = self.try_valuation()?;
        let rel = if self.is_exact() {
            if self.c.len() == 1 {
                EXACT
            } else {
                INV_REL_PREC
            }
        } else {
            self.prec - v
        };
        if rel <= 0 {
            return Err(Error::InsufficientPrecision("inverse keeps no trusted term".into()));
        }
        let u0 = self.c[0].inv().expect("leading coefficient is nonzero");
        let n = if rel >= EXACT { 1 } else { rel as usize };
        // series inverse of the unit part by the recurrence b_k = -u0^{-1} Σ_{j≥1} a_j b_{k-j}
        let mut b: Vec<E> = Vec::with_capacity(n);
        b.push(u0.clone());
        for k in 1..n {
            let mut acc = self.zero.clone();
            for j in 1..=k.min(self.c.len() - 1) {
                acc = acc + self.c[j].clone() * b[k - j].clone();
            }
            b.push(-(acc * u0.clone()));
        }
        let prec = if rel >= EXACT { EXACT } else { -v + rel };
        Ok(Self::from_coeffs(&self.zero, -v, b, prec, self.var))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.try_inv()?)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(Field::pow(self, e as u64))
        } else {
            Ok(Field::pow(&self.try_inv()?, e.unsigned_abs()))
        }
    }

    /// Agreement on every term both sides trust.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let n = self.prec.min(o.prec);
        let d = self.truncate(n) - o.truncate(n);
        d.is_zero()
    }

    fn add_impl(&self, o: &Self, negate: bool) -> Self {
        let prec = self.prec.min(o.prec);
        if self.c.is_empty() && o.c.is_empty() {
            return Self::zero(&self.zero, prec, self.var);
        }
        let lo = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };
        let hi_a = self.top_exponent().unwrap_or(lo);
        let hi_b = o.top_exponent().unwrap_or(lo);
        let mut hi = hi_a.max(hi_b);
        if prec < EXACT {
            hi = hi.min(prec - 1);
        }
        if hi < lo {
            return Self::zero(&self.zero, prec, self.var);
        }
        let mut c = vec![self.zero.clone(); (hi - lo + 1) as usize];
        for (e, v) in self.terms() {
            if e <= hi {
                c[(e - lo) as usize] = v;
            }
        }
        for (e, v) in o.terms() {
            if e <= hi {
                let i = (e - lo) as usize;
                c[i] = if negate { c[i].clone() - v } else { c[i].clone() + v };
            }
        }
        LaurentSeries { zero: self.zero.clone(), start: lo, c, prec, var: self.var }.normalize()
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let va = self.valuation_bound();
        let vb = o.valuation_bound();
        let prec = sat_add(self.prec, vb).min(sat_add(o.prec, va));
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero(&self.zero, prec, self.var);
        }
        let start = self.start + o.start;
        let mut len = self.c.len() + o.c.len() - 1;
        if prec < EXACT {
            len = len.min((prec - start).max(0) as usize);
        }
        let mut c = vec![self.zero.clone(); len];
        for (i, a) in self.c.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentSeries { zero: self.zero.clone(), start, c, prec, var: self.var }.normalize()
    }
}

impl<E: Field> Add for LaurentSeries<E> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_impl(&o, false)
    }
}
impl<E: Field> Sub for LaurentSeries<E> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.add_impl(&o, true)
    }
}
impl<E: Field> Mul for LaurentSeries<E> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_impl(&o)
    }
}
impl<E: Field> Neg for LaurentSeries<E> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map_coeffs(&self.zero.clone(), |c| -c.clone())
    }
}
impl<'a, E: Field> Add<&'a LaurentSeries<E>> for &'a LaurentSeries<E> {
    type Output = LaurentSeries<E>;
    fn add(self, o: &LaurentSeries<E>) -> LaurentSeries<E> {
        self.add_impl(o, false)
    }
}
impl<'a, E: Field> Sub<&'a LaurentSeries<E>> for &'a LaurentSeries<E> {
    type Output = LaurentSeries<E>;
    fn sub(self, o: &LaurentSeries<E>) -> LaurentSeries<E> {
        self.add_impl(o, true)
    }
}
impl<'a, E: Field> Mul<&'a LaurentSeries<E>> for &'a LaurentSeries<E> {
    type Output = LaurentSeries<E>;
    fn mul(self, o: &LaurentSeries<E>) -> LaurentSeries<E> {
        self.mul_impl(o)
    }
}

/// Series over a field are themselves (truncated models of) a field; this is how
/// the two-dimensional local field F_q((u))((t)) is built.
impl<E: Field> Field for LaurentSeries<E> {
    fn zero_like(&self) -> Self {
        Self::zero(&self.zero, EXACT, self.var)
    }
    fn one_like(&self) -> Self {
        Self::constant(self.zero.one_like(), EXACT).with_var(self.var)
    }
    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.zero.from_int_like(n), EXACT).with_var(self.var)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn characteristic(&self) -> u64 {
        self.zero.characteristic()
    }
    fn pth_root(&self) -> Option<Self> {
        let p = self.characteristic() as i64;
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            if e.rem_euclid(p) != 0 {
                return None;
            }
            terms.push((e / p, c.pth_root()?));
        }
        let prec = if self.is_exact() { EXACT } else { self.prec.div_euclid(p) + (self.prec.rem_euclid(p) != 0) as i64 };
        Some(Self::from_terms(&self.zero, &terms, prec, self.var))
    }
    fn derivation(&self) -> Self {
        self.derivative()
    }
    fn is_perfect(&self) -> bool {
        false
    }
    fn is_compound(&self) -> bool {
        self.c.iter().filter(|c| !c.is_zero()).count() > 1 || !self.is_exact()
    }
}

fn fmt_monomial<E: Field>(c: &E, var: &str, e: i64) -> String {
    let cs = if c.is_compound() { format!("({})", c) } else { c.to_string() };
    match e {
        0 => cs,
        1 if c.is_one() => var.to_string(),
        1 => format!("{}*{}", cs, var),
        _ if c.is_one() => format!("{}^{}", var, e),
        _ => format!("{}*{}^{}", cs, var, e),
    }
}

impl<E: Field> fmt::Display for LaurentSeries<E> {
    /// `t^-3*(1 + 2*t + O(t^5))`: the valuation is factored out when it is nonzero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.valuation().unwrap_or(0);
        let mut parts: Vec<String> = self.terms().map(|(e, c)| fmt_monomial(&c, self.var, e - v)).collect();
        if !self.is_exact() {
            parts.push(format!("O({})", fmt_monomial(&self.zero.one_like(), self.var, self.prec - v)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let body = parts.join(" + ");
        if v == 0 {
            write!(f, "{}", body)
        } else if parts.len() == 1 && self.is_exact() {
            write!(f, "{}", fmt_monomial(&self.c[0], self.var, v))
        } else {
            write!(f, "{}^{}*({})", self.var, v, body)
        }
    }
}
