#![allow(dead_code)]

//! Integer ghost-lift oracle for Witt vectors over F_p((t)) with Laurent polynomial components.
//! Components are lifted to Z[t, 1/t] with digits 0..p-1, combined through the ghost map
//! w_n = Σ p^i x_i^(p^(n-i)), and recovered by exact division.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use ramify::algebra::{FieldElem, Fq};
use ramify::localfield::{LaurentSeries, EXACT};
use ramify::witt::WittVector;

pub type ZPoly = BTreeMap<i64, BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    a.retain(|_, c| !c.is_zero());
    a
}

pub fn add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_insert_with(BigInt::zero) += c;
    }
    trim(out)
}

pub fn scale(a: &ZPoly, k: &BigInt) -> ZPoly {
    trim(a.iter().map(|(e, c)| (*e, c * k)).collect())
}

pub fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert_with(BigInt::zero) += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &ZPoly, mut k: u64) -> ZPoly {
    let mut base = a.clone();
    let mut out: ZPoly = [(0, BigInt::one())].into();
    while k > 0 {
        if k & 1 == 1 {
            out = mul(&out, &base);
        }
        base = mul(&base, &base);
        k >>= 1;
    }
    out
}

/// Lift of the display-order components (x_0 first) to integer Laurent polynomials.
pub fn lift(w: &WittVector<FieldElem>) -> Vec<ZPoly> {
    w.comps()
        .iter()
        .map(|c| {
            assert!(c.is_exact(), "the ghost oracle needs exact components");
            trim(c.terms().map(|(e, a)| (e, BigInt::from(a.value()))).collect())
        })
        .collect()
}

pub fn ghost(x: &[ZPoly], p: u64) -> Vec<ZPoly> {
    (0..x.len())
        .map(|n| {
            (0..=n).fold(ZPoly::new(), |acc, i| {
                let term = scale(&pow(&x[i], p.pow((n - i) as u32)), &BigInt::from(p).pow(i as u32));
                add(&acc, &term)
            })
        })
        .collect()
}

pub fn unghost(w: &[ZPoly], p: u64) -> Vec<ZPoly> {
    let mut x: Vec<ZPoly> = vec![];
    for n in 0..w.len() {
        let mut rest = w[n].clone();
        for (i, xi) in x.iter().enumerate() {
            let term = scale(&pow(xi, p.pow((n - i) as u32)), &BigInt::from(p).pow(i as u32));
            rest = add(&rest, &scale(&term, &BigInt::from(-1)));
        }
        let d = BigInt::from(p).pow(n as u32);
        let xn = rest
            .into_iter()
            .map(|(e, c)| {
                let (q, r) = c.div_rem(&d);
                assert!(r.is_zero(), "ghost vector is not integral");
                (e, q)
            })
            .collect();
        x.push(trim(xn));
    }
    x
}

/// Reduce integer components mod p back to a Witt vector over F_p((t)).
pub fn reduce(x: &[ZPoly], f: &Fq) -> WittVector<FieldElem> {
    let p = BigInt::from(f.p());
    let comps = x
        .iter()
        .map(|c| {
            let terms: Vec<(i64, FieldElem)> = c
                .iter()
                .map(|(e, a)| (*e, f.elem(u32::try_from(a.mod_floor(&p)).unwrap())))
                .collect();
            LaurentSeries::from_terms(&f.zero(), &terms, EXACT, "t")
        })
        .collect();
    WittVector::new(comps).unwrap()
}

pub enum Op {
    Add,
    Mul,
    Neg,
}

/// The result of `op` computed through integer ghost components.
pub fn oracle(op: Op, a: &WittVector<FieldElem>, b: &WittVector<FieldElem>, f: &Fq) -> WittVector<FieldElem> {
    let p = f.p() as u64;
    let (ga, gb) = (ghost(&lift(a), p), ghost(&lift(b), p));
    let g: Vec<ZPoly> = match op {
        Op::Add => ga.iter().zip(&gb).map(|(x, y)| add(x, y)).collect(),
        Op::Mul => ga.iter().zip(&gb).map(|(x, y)| mul(x, y)).collect(),
        Op::Neg => ga.iter().map(|x| scale(x, &BigInt::from(-1))).collect(),
    };
    reduce(&unghost(&g, p), f)
}
