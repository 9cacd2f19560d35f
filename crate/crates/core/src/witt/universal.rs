//! Universal Witt polynomials, solved from the ghost equations over the integers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::Field;

/// Integer polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn var(nvars: usize, i: usize) -> IntPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        IntPoly { terms: BTreeMap::from([(e, BigInt::one())]) }
    }
    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let mut t = self.terms.clone();
        for (e, c) in &o.terms {
            let v = t.entry(e.clone()).or_insert_with(BigInt::zero);
            *v += c;
            if v.is_zero() {
                t.remove(e);
            }
        }
        IntPoly { terms: t }
    }
    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::default();
        }
        IntPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }
    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.scale(&BigInt::from(-1)))
    }
    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        let mut t: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *t.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        t.retain(|_, c| !c.is_zero());
        IntPoly { terms: t }
    }
    pub fn pow(&self, mut k: u64, nvars: usize) -> IntPoly {
        let mut acc = IntPoly { terms: BTreeMap::from([(vec![0; nvars], BigInt::one())]) };
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
    /// Exact division by an integer; None if some coefficient is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<IntPoly> {
        let mut t = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            t.insert(e.clone(), q);
        }
        Some(IntPoly { terms: t })
    }
    pub fn eval_int(&self, xs: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in xs.iter().zip(e) {
                if k > 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += m;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittOp {
    Sum,
    Diff,
    Prod,
}

/// Ghost polynomial w_n in the variables x_{offset..offset+n}.
pub fn ghost(p: u64, n: usize, nvars: usize, offset: usize) -> IntPoly {
    let mut g = IntPoly::default();
    for i in 0..=n {
        let term = IntPoly::var(nvars, offset + i).pow(p.pow((n - i) as u32), nvars);
        g = g.add(&term.scale(&BigInt::from(p).pow(i as u32)));
    }
    g
}

/// Mod-p reduced polynomial: (exponents, coefficient in 1..p).
#[derive(Clone, Debug)]
pub struct ModPoly {
    pub terms: Vec<(Vec<u32>, u64)>,
}

#[derive(Debug)]
pub struct UniversalPolys {
    pub p: u64,
    pub s: usize,
    /// Integer polynomials, indexed by op then component (standard index).
    pub integer: HashMap<WittOp, Vec<IntPoly>>,
    pub reduced: HashMap<WittOp, Vec<ModPoly>>,
}

impl UniversalPolys {
    pub fn compute(p: u64, s: usize) -> UniversalPolys {
        let nv = 2 * s;
        let mut integer = HashMap::new();
        let mut reduced = HashMap::new();
        for op in [WittOp::Sum, WittOp::Diff, WittOp::Prod] {
            let mut comps: Vec<IntPoly> = Vec::with_capacity(s);
            for n in 0..s {
                let gx = ghost(p, n, nv, 0);
                let gy = ghost(p, n, nv, s);
                let mut target = match op {
                    WittOp::Sum => gx.add(&gy),
                    WittOp::Diff => gx.sub(&gy),
                    WittOp::Prod => gx.mul(&gy),
                };
                for (i, c) in comps.iter().enumerate() {
                    let t = c.pow(p.pow((n - i) as u32), nv).scale(&BigInt::from(p).pow(i as u32));
                    target = target.sub(&t);
                }
                let sn = target
                    .div_exact(&BigInt::from(p).pow(n as u32))
                    .expect("ghost recursion divides exactly");
                comps.push(sn);
            }
            let red = comps
                .iter()
                .map(|c| ModPoly {
                    terms: c
                        .terms
                        .iter()
                        .filter_map(|(e, k)| {
                            let r = k.mod_floor(&BigInt::from(p));
                            if r.is_zero() {
                                None
                            } else {
                                Some((e.clone(), r.to_u64().unwrap()))
                            }
                        })
                        .collect(),
                })
                .collect();
            reduced.insert(op, red);
            integer.insert(op, comps);
        }
        UniversalPolys { p, s, integer, reduced }
    }

    /// Check w_n(S) = w_n(x) ∘ w_n(y) symbolically for every n < s.
    pub fn verify_ghost_identities(&self) -> bool {
        let nv = 2 * self.s;
        for op in [WittOp::Sum, WittOp::Diff, WittOp::Prod] {
            let comps = &self.integer[&op];
            for n in 0..self.s {
                let mut lhs = IntPoly::default();
                for (i, c) in comps.iter().enumerate().take(n + 1) {
                    lhs = lhs.add(&c.pow(self.p.pow((n - i) as u32), nv).scale(&BigInt::from(self.p).pow(i as u32)));
                }
                let gx = ghost(self.p, n, nv, 0);
                let gy = ghost(self.p, n, nv, self.s);
                let rhs = match op {
                    WittOp::Sum => gx.add(&gy),
                    WittOp::Diff => gx.sub(&gy),
                    WittOp::Prod => gx.mul(&gy),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluate one operation on components in standard order (x_0 first).
    pub fn apply<R: Field>(&self, op: WittOp, xs: &[R], ys: &[R]) -> Vec<R> {
        let polys = &self.reduced[&op];
        let vars: Vec<&R> = xs.iter().chain(ys.iter()).collect();
        let zero = xs[0].zero_like();
        // powers[v][k] = vars[v]^k, filled on demand
        let mut powers: Vec<Vec<R>> = vars.iter().map(|v| vec![v.one_like(), (*v).clone()]).collect();
        let mut out = Vec::with_capacity(self.s);
        for poly in polys {
            let mut acc = zero.clone();
            for (e, c) in &poly.terms {
                let mut m = zero.from_int_like(*c as i64);
                for (v, &k) in e.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    // only an exact zero may short-circuit; a zero known to some
                    // precision still carries that precision into the product
                    if *vars[v] == zero {
                        m = zero.clone();
                        break;
                    }
                    let k = k as usize;
                    while powers[v].len() <= k {
                        let next = powers[v].last().unwrap().clone() * vars[v].clone();
                        powers[v].push(next);
                    }
                    m = m * powers[v][k].clone();
                }
                if m != zero {
                    acc = acc + m;
                }
            }
            out.push(acc);
        }
        out
    }
}

fn cache() -> &'static Mutex<HashMap<(u64, usize), Arc<UniversalPolys>>> {
    static C: OnceLock<Mutex<HashMap<(u64, usize), Arc<UniversalPolys>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached universal polynomials; the first request for a given (p, s) computes them
/// while holding the lock, so concurrent first access is serialized.
pub fn universal(p: u64, s: usize) -> Arc<UniversalPolys> {
    let mut c = cache().lock().unwrap();
    c.entry((p, s)).or_insert_with(|| Arc::new(UniversalPolys::compute(p, s))).clone()
}

/// Ghost components Σ_{i≤n} p^i x_i^{p^{n-i}} of an integer vector.
pub fn ghost_values(p: u64, xs: &[BigInt]) -> Vec<BigInt> {
    (0..xs.len())
        .map(|n| {
            (0..=n)
                .map(|i| BigInt::from(p).pow(i as u32) * num_traits::pow(xs[i].clone(), p.pow((n - i) as u32) as usize))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ghost_identities_hold() {
        for (p, s) in [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)] {
            assert!(universal(p, s).verify_ghost_identities(), "p={} s={}", p, s);
        }
    }

    #[test]
    fn first_carry_polynomial_p3() {
        // S_1 = x1 + y1 - x0^2 y0 - x0 y0^2
        let u = universal(3, 2);
        let s1 = &u.integer[&WittOp::Sum][1];
        assert_eq!(s1.terms.len(), 4);
        assert_eq!(s1.terms[&vec![2, 0, 1, 0]], BigInt::from(-1));
        assert_eq!(s1.terms[&vec![0, 1, 0, 0]], BigInt::from(1));
    }
}
