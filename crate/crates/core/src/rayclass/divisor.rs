use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{factor, FieldElem, Poly, RatFunc};
use crate::error::{Error, Result};

/// A closed point of P^1 over F_q. Finite places sort before infinity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(Poly<FieldElem>),
    Infinity,
}

impl Place {
    pub fn finite(p: Poly<FieldElem>) -> Result<Place> {
        if !p.is_monic() || !crate::algebra::is_irreducible(&p) {
            return Err(Error::PreconditionViolated(format!("{} is not monic irreducible", p)));
        }
        Ok(Place::Finite(p))
    }
    pub fn degree(&self) -> i64 {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinity => 1,
        }
    }
    pub fn poly(&self) -> Option<&Poly<FieldElem>> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }
    /// ord_v of a nonzero polynomial.
    pub fn ord_poly(&self, f: &Poly<FieldElem>) -> i64 {
        match self {
            Place::Finite(p) => f.valuation_at(p) as i64,
            Place::Infinity => -f.deg(),
        }
    }
    pub fn ord(&self, g: &RatFunc<FieldElem>) -> Result<i64> {
        if g.num().is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(self.ord_poly(g.num()) - self.ord_poly(g.den()))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({})", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// A divisor Σ n_v [v] on P^1; zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn zero() -> Self {
        Divisor(BTreeMap::new())
    }
    pub fn point(v: Place, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_point(v, n);
        d
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Self::zero();
        for (v, n) in terms {
            d.add_point(v, n);
        }
        d
    }
    pub fn add_point(&mut self, v: Place, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.0.entry(v.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.0.remove(&v);
        }
    }
    pub fn get(&self, v: &Place) -> i64 {
        self.0.get(v).copied().unwrap_or(0)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.0.iter().map(|(v, n)| (v, *n))
    }
    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.0.keys()
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(v, n)| v.degree() * n).sum()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut d = self.clone();
        for (v, n) in o.terms() {
            d.add_point(v.clone(), n);
        }
        d
    }
    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.0.iter().map(|(v, n)| (v.clone(), n * k)))
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }
    pub fn is_effective(&self) -> bool {
        self.0.values().all(|&n| n >= 0)
    }
    /// self ≤ o pointwise.
    pub fn le(&self, o: &Self) -> bool {
        o.sub(self).is_effective()
    }
    /// Drop every place for which `keep` is false.
    pub fn restrict(&self, keep: impl Fn(&Place) -> bool) -> Self {
        Self::from_terms(self.0.iter().filter(|(v, _)| keep(v)).map(|(v, n)| (v.clone(), *n)))
    }
}

impl fmt::Display for Divisor {
    /// `2*(x) + (x^2 + x + 1) - inf`; finite places in degree order, infinity last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (v, &n)) in self.0.iter().enumerate() {
            let a = n.abs();
            let body = if a == 1 { v.to_string() } else { format!("{}*{}", a, v) };
            match (i, n < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{}", body)),
                (_, false) => out.push_str(&format!(" + {}", body)),
                (_, true) => out.push_str(&format!(" - {}", body)),
            }
        }
        write!(f, "{}", out)
    }
}

/// Finite-place part of the divisor of a nonzero polynomial.
pub fn poly_divisor(f: &Poly<FieldElem>) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(Divisor::from_terms(factor(f)?.into_iter().map(|(p, e)| (Place::Finite(p), e as i64))))
}

pub fn divisor_of(g: &RatFunc<FieldElem>) -> Result<Divisor> {
    if g.num().is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut d = poly_divisor(g.num())?.sub(&poly_divisor(g.den())?);
    d.add_point(Place::Infinity, g.den().deg() - g.num().deg());
    Ok(d)
}

/// An effective divisor with nonempty support; U = P^1 minus its support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Modulus {
    d: Divisor,
}

impl Modulus {
    pub fn new(d: Divisor) -> Result<Self> {
        if d.is_zero() || !d.is_effective() {
            return Err(Error::PreconditionViolated(format!("modulus {} must be effective and nonzero", d)));
        }
        Ok(Modulus { d })
    }
    pub fn divisor(&self) -> &Divisor {
        &self.d
    }
    pub fn degree(&self) -> i64 {
        self.d.degree()
    }
    pub fn contains(&self, v: &Place) -> bool {
        self.d.get(v) > 0
    }
    pub fn n_inf(&self) -> i64 {
        self.d.get(&Place::Infinity)
    }
    /// Π P^{n_P} over the finite support.
    pub fn finite_part(&self, proto: &FieldElem) -> Poly<FieldElem> {
        let mut m = Poly::one(proto);
        for (v, n) in self.d.terms() {
            if let Place::Finite(p) = v {
                m = &m * &p.pow(n as u64);
            }
        }
        m
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)
    }
}

/// g ≡ 1 mod m_v^{n_v} at every v in |D|, decided by exact valuations of g - 1.
pub fn in_congruence(g: &RatFunc<FieldElem>, d: &Modulus) -> Result<bool> {
    if g.num().is_zero() {
        return Err(Error::ZeroFunction);
    }
    let diff = g.num() - g.den();
    if diff.is_zero() {
        return Ok(true);
    }
    for (v, n) in d.divisor().terms() {
        if v.ord_poly(&diff) - v.ord_poly(g.den()) < n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Places of degree ≤ d, finite ones by degree then infinity.
pub fn places_up_to(proto: &FieldElem, d: i64) -> Vec<Place> {
    let mut out: Vec<Place> =
        (1..=d.max(0) as usize).flat_map(|k| crate::algebra::irreducibles(proto, k)).map(Place::Finite).collect();
    if d >= 1 {
        out.push(Place::Infinity);
    }
    out
}

/// Every modulus of degree between 1 and d.
pub fn moduli_up_to(proto: &FieldElem, d: i64) -> Vec<Modulus> {
    fn go(places: &[Place], left: i64, cur: &mut Vec<(Place, i64)>, out: &mut Vec<Modulus>) {
        let Some((v, rest)) = places.split_first() else {
            if !cur.is_empty() {
                out.push(Modulus::new(Divisor::from_terms(cur.iter().cloned())).unwrap());
            }
            return;
        };
        go(rest, left, cur, out);
        let mut n = 1;
        while n * v.degree() <= left {
            cur.push((v.clone(), n));
            go(rest, left - n * v.degree(), cur, out);
            cur.pop();
            n += 1;
        }
    }
    let mut out = vec![];
    go(&places_up_to(proto, d), d, &mut vec![], &mut out);
    out.sort_by_key(|m| m.degree());
    out
}
