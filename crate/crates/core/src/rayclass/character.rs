//! Artin-Schreier-Witt characters χ = δ_s(f) of F_q(x), their conductors and Frobenius values.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use super::divisor::{divisor_of, in_congruence, places_up_to, Divisor, Modulus, Place};
use super::local::{expand, residue_field};
use super::oracle::bucket_key;
use crate::algebra::poly::{monic_polys, polys_below};
use crate::algebra::{factor, Field, FieldElem, FiniteField, Fq, Poly, RatFunc, Residue, ResidueField};
use crate::error::{Error, Result};
use crate::localfield::{LaurentSeries, EXACT};
use crate::witt::WittVector;

pub const MAX_CHARACTER_LENGTH: usize = 2;
const PREC_CAP: i64 = 256;

type LocalWitt = WittVector<Residue<FieldElem>>;

#[derive(Clone, Debug, PartialEq)]
pub struct ASWCharacter {
    fq: Fq,
    /// standard Witt order: comps[0] is the Teichmüller slot a_{s-1}
    comps: Vec<RatFunc<FieldElem>>,
}

/// Run `f` at the given precision, doubling on InsufficientPrecision up to the cap.
fn with_precision<T>(start: i64, f: impl Fn(i64) -> Result<T>) -> Result<T> {
    let mut n = start.min(PREC_CAP);
    loop {
        match f(n) {
            Err(Error::InsufficientPrecision(_)) if n < PREC_CAP => n = (2 * n).min(PREC_CAP),
            other => return other,
        }
    }
}

impl ASWCharacter {
    pub fn new(fq: Fq, comps: Vec<RatFunc<FieldElem>>) -> Result<Self> {
        if comps.is_empty() || comps.len() > MAX_CHARACTER_LENGTH {
            return Err(Error::PreconditionViolated(format!(
                "character length {} outside 1..={}",
                comps.len(),
                MAX_CHARACTER_LENGTH
            )));
        }
        if comps.iter().any(|c| c.base_proto().field() != fq) {
            return Err(Error::PreconditionViolated("components live over a different field".into()));
        }
        Ok(ASWCharacter { fq, comps })
    }
    /// The s = 1 character y^p - y = f.
    pub fn artin_schreier(fq: Fq, f: RatFunc<FieldElem>) -> Result<Self> {
        Self::new(fq, vec![f])
    }
    pub fn fq(&self) -> &Fq {
        &self.fq
    }
    pub fn len(&self) -> usize {
        self.comps.len()
    }
    pub fn comps(&self) -> &[RatFunc<FieldElem>] {
        &self.comps
    }
    pub fn p(&self) -> u64 {
        self.fq.p() as u64
    }
    /// p^s, the order of the value group.
    pub fn value_modulus(&self) -> u64 {
        self.p().pow(self.len() as u32)
    }

    /// Places where some component has a pole.
    pub fn polar_places(&self) -> Result<Vec<Place>> {
        let mut out = vec![];
        for c in &self.comps {
            if c.num().is_zero() {
                continue;
            }
            if !c.den().is_constant() {
                for (p, _) in factor(c.den())? {
                    let v = Place::Finite(p);
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            if c.num().deg() > c.den().deg() && !out.contains(&Place::Infinity) {
                out.push(Place::Infinity);
            }
        }
        out.sort();
        Ok(out)
    }

    fn max_pole(&self, v: &Place) -> Result<i64> {
        let mut m = 0;
        for c in &self.comps {
            if !c.num().is_zero() {
                m = m.max(-v.ord(c)?);
            }
        }
        Ok(m)
    }

    /// The components expanded at v, correct modulo t_v^prec.
    pub fn local_witt(&self, v: &Place, prec: i64) -> Result<LocalWitt> {
        let comps = self.comps.iter().map(|c| expand(c, v, prec)).collect::<Result<Vec<_>>>()?;
        WittVector::new(comps)
    }

    fn start_precision(&self, v: &Place) -> Result<i64> {
        let bound = self.max_pole(v)? * self.p().pow(self.len() as u32 - 1) as i64 + 1;
        Ok(2 * (bound + self.len() as i64) + 8)
    }

    pub fn local_best_form(&self, v: &Place) -> Result<LocalWitt> {
        with_precision(self.start_precision(v)?, |n| self.local_witt(v, n)?.best_form())
    }

    pub fn local_conductor(&self, v: &Place) -> Result<i64> {
        with_precision(self.start_precision(v)?, |n| self.local_witt(v, n)?.artin_conductor())
    }

    /// Σ art_v(χ)·[v]; only places where some component has a pole can contribute.
    pub fn global_conductor(&self) -> Result<Divisor> {
        let mut d = Divisor::zero();
        for v in self.polar_places()? {
            d.add_point(v.clone(), self.local_conductor(&v)?);
        }
        Ok(d)
    }

    /// χ(Frob_v) ∈ Z/p^s for v unramified.
    pub fn frobenius_eval(&self, v: &Place) -> Result<u64> {
        let k = residue_field(v, &self.fq.zero());
        let values = if self.max_pole(v)? <= 0 {
            // regular at v: the components are their own best form
            self.comps.iter().map(|c| value_at(c, v, &k)).collect()
        } else {
            let bf = self.local_best_form(v)?;
            if !bf.is_integral()? {
                return Err(Error::RamifiedPlace(v.to_string()));
            }
            bf.comps().iter().map(|c| c.try_coeff(0)).collect::<Result<Vec<_>>>()?
        };
        let w = WittVector::new(values.into_iter().map(|c| LaurentSeries::constant(c, EXACT)).collect())?;
        // Witt trace from k(v) down to F_p
        let mut acc = w.clone();
        let mut cur = w;
        for _ in 1..k.one().abs_degree() {
            cur = cur.frobenius();
            acc = acc.add(&cur)?;
        }
        let s = self.len() as u32;
        let p = self.p();
        let ps = p.pow(s);
        let mut val = 0u64;
        for (i, c) in acc.comps().iter().enumerate() {
            let x = c.coeff(0).prime_value().expect("trace lies in the prime field");
            // Teichmüller lift of x modulo p^s is x^(p^(s-1))
            let teich = (0..s - 1).fold(x % ps, |y, _| mod_pow(y, p, ps));
            val = (val + p.pow(i as u32) * teich) % ps;
        }
        Ok(val)
    }

    /// χ extended Z-linearly to a divisor supported on unramified places.
    pub fn eval_divisor(&self, e: &Divisor) -> Result<u64> {
        let mut cache = HashMap::new();
        self.eval_divisor_cached(e, &mut cache)
    }

    fn eval_divisor_cached(&self, e: &Divisor, cache: &mut HashMap<Place, u64>) -> Result<u64> {
        let ps = self.value_modulus() as i64;
        let mut acc = 0i64;
        for (v, n) in e.terms() {
            let x = match cache.get(v) {
                Some(x) => *x,
                None => {
                    let x = self.frobenius_eval(v)?;
                    cache.insert(v.clone(), x);
                    x
                }
            };
            acc = (acc + n.rem_euclid(ps) * x as i64).rem_euclid(ps);
        }
        Ok(acc as u64)
    }
}

/// g(v) in k(v) for g regular at v.
fn value_at(g: &RatFunc<FieldElem>, v: &Place, k: &ResidueField<FieldElem>) -> Residue<FieldElem> {
    match v {
        Place::Finite(p) => {
            let num = k.elem(&g.num().rem(p));
            let den = k.elem(&g.den().rem(p));
            num.div(&den).expect("regular at v")
        }
        Place::Infinity => {
            if g.num().is_zero() || g.num().deg() < g.den().deg() {
                k.zero()
            } else {
                k.embed(&g.num().lc().div(&g.den().lc()).unwrap())
            }
        }
    }
}

fn mod_pow(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

impl fmt::Display for ASWCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "[{}]", parts.join("; "))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    pub trials: usize,
    pub passed: bool,
    /// a g ≡ 1 mod D with χ(div(g)|_U) ≠ 0, and that value
    pub counterexample: Option<(RatFunc<FieldElem>, u64)>,
}

fn random_poly<R: Rng>(fq: &Fq, deg: i64, monic: bool, rng: &mut R) -> Poly<FieldElem> {
    if deg < 0 {
        return Poly::zero(&fq.zero());
    }
    let q = fq.q();
    let mut c: Vec<FieldElem> = (0..=deg).map(|_| fq.elem(rng.gen_range(0..q))).collect();
    if monic {
        c[deg as usize] = fq.one();
    }
    Poly::new(fq.zero(), c)
}

/// A random g ≡ 1 mod D built from polynomials of degree ≤ deg D + 4.
pub fn random_congruent<R: Rng>(fq: &Fq, d: &Modulus, rng: &mut R) -> Result<RatFunc<FieldElem>> {
    let proto = fq.zero();
    let dfin = d.finite_part(&proto);
    let n_inf = d.n_inf();
    loop {
        let k = dfin.deg() + n_inf + rng.gen_range(0..=4);
        let h2 = random_poly(fq, k, true, rng);
        if !h2.gcd(&dfin).is_one() {
            continue;
        }
        let (h1, den) = if n_inf > 0 {
            let r = random_poly(fq, k - n_inf - dfin.deg(), false, rng);
            (&h2 + &(&dfin * &r), h2)
        } else {
            let c = loop {
                let c = fq.elem(rng.gen_range(0..fq.q()));
                if !c.is_zero() {
                    break c;
                }
            };
            let r = random_poly(fq, rng.gen_range(0..=4), false, rng);
            let den = h2.scale(&c);
            (&den + &(&dfin * &r), den)
        };
        if h1.is_zero() {
            continue;
        }
        let g = RatFunc::new(h1, den, "x")?;
        debug_assert!(in_congruence(&g, d).unwrap());
        return Ok(g);
    }
}

/// χ(div(g)|_U) for `trials` random g ≡ 1 mod D; all zero iff χ factors through C(P^1, D).
///
/// Every place of U must be unramified for χ, which holds when D ≥ global_conductor(χ)
/// and more generally whenever |D| contains the ramified places.
pub fn factorization_check<R: Rng>(
    chi: &ASWCharacter,
    d: &Modulus,
    trials: usize,
    rng: &mut R,
) -> Result<FactorizationReport> {
    let mut cache = HashMap::new();
    for t in 0..trials {
        let g = random_congruent(chi.fq(), d, rng)?;
        let e = divisor_of(&g)?.restrict(|v| !d.contains(v));
        let val = chi.eval_divisor_cached(&e, &mut cache)?;
        if val != 0 {
            return Ok(FactorizationReport { trials: t + 1, passed: false, counterexample: Some((g, val)) });
        }
    }
    Ok(FactorizationReport { trials, passed: true, counterexample: None })
}

/// Exhaustive search for g = h1/h2 ≡ 1 mod D, h_i of degree ≤ max_deg, with χ(div(g)|_U) ≠ 0.
/// Polynomials meeting a ramified place of U are skipped.
pub fn find_violation(chi: &ASWCharacter, d: &Modulus, max_deg: i64) -> Result<Option<(RatFunc<FieldElem>, u64)>> {
    let proto = chi.fq().zero();
    let dfin = d.finite_part(&proto);
    let n_inf = d.n_inf();
    let one = [proto.one_like()];
    let ps = chi.value_modulus();
    let mut cache = HashMap::new();
    let chi_inf = if n_inf == 0 { Some(chi.frobenius_eval(&Place::Infinity)) } else { None };
    let mut first: HashMap<_, (Poly<FieldElem>, u64)> = HashMap::new();
    for k in 0..=max_deg.max(0) as usize {
        for h in monic_polys(&proto, k) {
            if !h.gcd(&dfin).is_one() {
                continue;
            }
            let e = super::divisor::poly_divisor(&h)?;
            let mut val = match chi.eval_divisor_cached(&e, &mut cache) {
                Ok(x) => x,
                Err(Error::RamifiedPlace(_)) => continue,
                Err(err) => return Err(err),
            };
            if let Some(ci) = &chi_inf {
                let ci = match ci {
                    Ok(x) => *x,
                    Err(Error::RamifiedPlace(_)) => continue,
                    Err(err) => return Err(err.clone()),
                };
                val = (val + ps - (k as u64 % ps) * ci % ps) % ps;
            }
            let key = bucket_key(&h, &dfin, n_inf, &one);
            match first.get(&key) {
                None => {
                    first.insert(key, (h, val));
                }
                Some((h0, v0)) if *v0 != val => {
                    let g = RatFunc::new(h, h0.clone(), "x")?;
                    return Ok(Some((g, (val + ps - v0) % ps)));
                }
                Some(_) => {}
            }
        }
    }
    Ok(None)
}

/// Representatives of every s = 1 character with 0 < deg(conductor) ≤ max_deg: a constant class
/// plus polar parts Σ_{p∤j} c_j/P^j (deg c_j < deg P) at finite places and Σ_{p∤j} c_j x^j at infinity.
pub fn s1_characters(fq: &Fq, max_deg: i64) -> Result<Vec<ASWCharacter>> {
    let proto = fq.zero();
    let p = fq.p() as i64;
    let x = RatFunc::var(&proto, "x");
    // per place: (conductor degree, polar part)
    let mut locals: Vec<Vec<(i64, RatFunc<FieldElem>)>> = vec![];
    for v in places_up_to(&proto, max_deg / 2) {
        let d = v.degree();
        let mut parts = vec![];
        let (base, coeffs): (RatFunc<FieldElem>, Vec<Poly<FieldElem>>) = match &v {
            Place::Finite(pp) => {
                (RatFunc::from_poly(pp.clone(), "x").inv().unwrap(), polys_below(&proto, d as usize).collect())
            }
            Place::Infinity => (x.clone(), fq.elements().map(Poly::constant).collect()),
        };
        let mut n = 1;
        while (n + 1) * d <= max_deg {
            if n % p != 0 {
                let js: Vec<i64> = (1..n).filter(|j| j % p != 0).collect();
                let lead: Vec<&Poly<FieldElem>> = coeffs.iter().filter(|c| !c.is_zero()).collect();
                let total = lead.len() * coeffs.len().pow(js.len() as u32);
                for idx in 0..total {
                    let mut r = idx;
                    let mut f = RatFunc::from_poly(lead[r % lead.len()].clone(), "x") * base.pow(n as u64);
                    r /= lead.len();
                    for &j in &js {
                        let c = &coeffs[r % coeffs.len()];
                        r /= coeffs.len();
                        f = f + RatFunc::from_poly(c.clone(), "x") * base.pow(j as u64);
                    }
                    parts.push(((n + 1) * d, f));
                }
            }
            n += 1;
        }
        locals.push(parts);
    }
    let mut polar: Vec<(i64, RatFunc<FieldElem>)> = vec![(0, RatFunc::constant(proto, "x"))];
    for parts in &locals {
        let mut next = polar.clone();
        for (d0, f0) in &polar {
            for (d1, f1) in parts {
                if d0 + d1 <= max_deg {
                    next.push((d0 + d1, f0.clone() + f1.clone()));
                }
            }
        }
        polar = next;
    }
    // F_q / (1-F)F_q ≅ F_p via the trace; k·e runs over it for e of trace 1
    let e = fq.elements().find(|c| c.abs_trace() == 1).expect("trace is onto");
    let mut out = vec![];
    for (deg, f) in polar {
        if deg == 0 {
            continue;
        }
        for k in 0..p {
            let c = RatFunc::constant(e.clone() * fq.from_i64(k), "x");
            out.push(ASWCharacter::artin_schreier(fq.clone(), f.clone() + c)?);
        }
    }
    Ok(out)
}
