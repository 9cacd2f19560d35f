//! Seeded random instances for sweeps. Every stream is derived from one 64-bit seed
//! and a stream name, so a failing case can be replayed from (seed, name) alone.

use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::algebra::{FieldElem, Fq, Poly, Poly2, RatFunc, RatFunc2};
use crate::localfield::LaurentSeries;
use crate::witt::WittVector;

pub type SweepRng = SplitMix64;

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// The independent stream `name` of the generator seeded with `seed`.
pub fn stream(seed: u64, name: &str) -> SweepRng {
    let mut parent = SplitMix64::seed_from_u64(seed ^ fnv1a(name));
    SplitMix64::seed_from_u64(parent.next_u64())
}

pub fn elem<R: Rng>(fq: &Fq, rng: &mut R) -> FieldElem {
    fq.elem(rng.gen_range(0..fq.q()))
}

pub fn nonzero<R: Rng>(fq: &Fq, rng: &mut R) -> FieldElem {
    fq.elem(rng.gen_range(1..fq.q()))
}

/// A polynomial in x of degree ≤ deg.
pub fn poly<R: Rng>(fq: &Fq, deg: usize, rng: &mut R) -> Poly<FieldElem> {
    Poly::new(fq.zero(), (0..=deg).map(|_| elem(fq, rng)).collect())
}

/// A nonzero rational function in x with numerator and denominator of degree ≤ deg.
pub fn ratfunc<R: Rng>(fq: &Fq, deg: usize, rng: &mut R) -> RatFunc<FieldElem> {
    loop {
        let (n, d) = (poly(fq, deg, rng), poly(fq, deg, rng));
        if !n.is_zero() && !d.is_zero() {
            return RatFunc::new(n, d, "x").unwrap();
        }
    }
}

/// A polynomial in x, y of total degree ≤ deg.
pub fn poly2<R: Rng>(fq: &Fq, deg: usize, rng: &mut R) -> Poly2<FieldElem> {
    let mut terms = vec![];
    for i in 0..=deg {
        for j in 0..=deg - i {
            terms.push((i, j, elem(fq, rng)));
        }
    }
    Poly2::from_terms(&fq.zero(), &terms)
}

/// A nonconstant polynomial in x, y of total degree ≤ deg.
pub fn nonconstant_poly2<R: Rng>(fq: &Fq, deg: usize, rng: &mut R) -> Poly2<FieldElem> {
    loop {
        let p = poly2(fq, deg, rng);
        if p.total_deg() > 0 {
            return p;
        }
    }
}

/// A nonzero rational function in x, y: numerator of total degree ≤ num_deg, denominator ≤ den_deg.
pub fn ratfunc2<R: Rng>(fq: &Fq, num_deg: usize, den_deg: usize, rng: &mut R) -> RatFunc2<FieldElem> {
    loop {
        let (n, d) = (poly2(fq, num_deg, rng), poly2(fq, den_deg, rng));
        if !n.is_zero() && !d.is_zero() {
            if let Ok(r) = RatFunc2::new(n, d) {
                return r;
            }
        }
    }
}

/// Σ_{j=-budget}^{top} c_j t^j over F_q, known modulo t^prec.
pub fn laurent<R: Rng>(fq: &Fq, budget: i64, top: i64, prec: i64, rng: &mut R) -> LaurentSeries<FieldElem> {
    let terms: Vec<(i64, FieldElem)> = (-budget..=top.min(prec - 1)).map(|e| (e, elem(fq, rng))).collect();
    LaurentSeries::from_terms(&fq.zero(), &terms, prec, "t")
}

/// A Witt vector of length s whose components have poles of order ≤ budget.
pub fn witt<R: Rng>(fq: &Fq, s: usize, budget: i64, prec: i64, rng: &mut R) -> WittVector<FieldElem> {
    WittVector::new((0..s).map(|_| laurent(fq, rng.gen_range(0..=budget), 2, prec, rng)).collect()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| stream(0, "witt").next_u64()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(stream(0, "witt").next_u64(), stream(0, "rayclass").next_u64());
        assert_ne!(stream(0, "witt").next_u64(), stream(1, "witt").next_u64());
    }
}
