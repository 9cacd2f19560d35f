//! Factorization over finite fields: squarefree split, distinct-degree split,
//! and a deterministic Cantor–Zassenhaus equal-degree split.

use super::field::FiniteField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities, sorted. The leading
/// coefficient of f is dropped.
pub fn factor<F: FiniteField>(f: &Poly<F>) -> Result<Vec<(Poly<F>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(Poly<F>, u32)> = Vec::new();
    for (g, k) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                out.push((irr, k));
            }
        }
    }
    out.sort();
    // merge duplicates (cannot happen for a correct squarefree split, but cheap)
    let mut merged: Vec<(Poly<F>, u32)> = Vec::new();
    for (g, k) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += k,
            _ => merged.push((g, k)),
        }
    }
    Ok(merged)
}

pub fn squarefree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    let f = f.monic();
    if f.deg() < 1 {
        return vec![];
    }
    let p = f.proto().characteristic() as u32;
    let df = f.derivative();
    if df.is_zero() {
        let r = f.pth_root().expect("zero derivative means p-th power over a perfect field");
        return squarefree(&r).into_iter().map(|(h, k)| (h, k * p)).collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y).unwrap();
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.deg() > 0 {
        let r = c.pth_root().expect("remaining cofactor is a p-th power");
        out.extend(squarefree(&r).into_iter().map(|(h, k)| (h, k * p)));
    }
    out
}

/// Split a squarefree monic f into products of irreducibles of equal degree d.
pub fn distinct_degree<F: FiniteField>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let q = f.proto().order();
    let x = Poly::x(f.proto());
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.rem(&f);
    let mut d = 1;
    while f.deg() >= 2 * d as i64 {
        h = h.powmod(q, &f);
        let g = (&h - &x).gcd(&f);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            f = f.div_exact(&g).unwrap();
            h = h.rem(&f);
        }
        d += 1;
    }
    if f.deg() > 0 {
        let n = f.deg() as usize;
        out.push((f, n));
    }
    out
}

/// a^((q^d - 1)/2) mod f via the norm-like product a·a^q·…·a^(q^(d-1)).
fn half_power<F: FiniteField>(a: &Poly<F>, f: &Poly<F>, q: u64, d: usize) -> Poly<F> {
    let mut cur = a.rem(f);
    let mut prod = cur.clone();
    for _ in 1..d {
        cur = cur.powmod(q, f);
        prod = prod.mulmod(&cur, f);
    }
    prod.powmod((q - 1) / 2, f)
}

fn trace_map<F: FiniteField>(a: &Poly<F>, f: &Poly<F>, steps: usize) -> Poly<F> {
    let mut cur = a.rem(f);
    let mut acc = cur.clone();
    for _ in 1..steps {
        cur = cur.mulmod(&cur, f);
        acc = &acc + &cur;
    }
    acc
}

pub fn equal_degree<F: FiniteField>(f: &Poly<F>, d: usize) -> Vec<Poly<F>> {
    let n = f.deg() as usize;
    if n == d {
        return vec![f.monic()];
    }
    let proto = f.proto().clone();
    let q = proto.order();
    let p = proto.characteristic();
    let k = proto.abs_degree() as usize;
    // deterministic candidate stream: polynomials of degree < n indexed from q
    let mut idx: u64 = q;
    loop {
        let mut v = Vec::new();
        let mut t = idx;
        while t > 0 {
            v.push(proto.element_at(t % q));
            t /= q;
        }
        idx += 1;
        let a = Poly::new(proto.zero_like(), v);
        if a.deg() >= n as i64 {
            // exhausted candidates of degree < n; cannot happen for a valid input
            panic!("equal-degree split found no splitting element");
        }
        let g = if p == 2 {
            trace_map(&a, f, k * d).gcd(f)
        } else {
            (&half_power(&a, f, q, d) - &Poly::one(&proto)).gcd(f)
        };
        if g.deg() > 0 && g.deg() < n as i64 {
            let h = f.div_exact(&g).unwrap();
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&h, d));
            return out;
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible<F: FiniteField>(f: &Poly<F>) -> bool {
    let n = f.deg();
    if n < 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let n = n as usize;
    let f = f.monic();
    let q = f.proto().order();
    let x = Poly::x(f.proto());
    let frob_pow = |k: usize| {
        let mut h = x.rem(&f);
        for _ in 0..k {
            h = h.powmod(q, &f);
        }
        h
    };
    if frob_pow(n) != x.rem(&f) {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| (&frob_pow(n / r) - &x).gcd(&f).is_one())
}

/// Monic irreducible polynomials of degree d, in index order.
pub fn irreducibles<F: FiniteField>(proto: &F, d: usize) -> Vec<Poly<F>> {
    super::poly::monic_polys(proto, d).filter(is_irreducible).collect()
}

/// Roots of f in the coefficient field.
pub fn roots<F: FiniteField>(f: &Poly<F>) -> Result<Vec<F>> {
    Ok(factor(f)?
        .into_iter()
        .filter(|(g, _)| g.deg() == 1)
        .map(|(g, _)| -g.coeff(0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::Fq;

    fn p(f: Fq, c: &[i64]) -> Poly<crate::algebra::gf::FieldElem> {
        Poly::from_ints(&f.zero(), c)
    }

    #[test]
    fn spec_examples() {
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(factor(&p(f2, &[0, 1, 1])).unwrap(), vec![(p(f2, &[0, 1]), 1), (p(f2, &[1, 1]), 1)]);
        let f3 = Fq::new(3, 1).unwrap();
        assert_eq!(factor(&p(f3, &[1, 0, 1])).unwrap(), vec![(p(f3, &[1, 0, 1]), 1)]);
        assert_eq!(
            factor(&p(f2, &[0, 0, 1, 0, 1])).unwrap(),
            vec![(p(f2, &[0, 1]), 2), (p(f2, &[1, 1]), 2)]
        );
    }

    #[test]
    fn zero_polynomial_errors() {
        let f2 = Fq::new(2, 1).unwrap();
        assert_eq!(factor(&Poly::zero(&f2.zero())), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_q: (1/d) Σ μ(d/e) q^e
        let f4 = Fq::new(2, 2).unwrap();
        let counts: Vec<usize> = (1..=4).map(|d| irreducibles(&f4.zero(), d).len()).collect();
        assert_eq!(counts, vec![4, 6, 20, 60]);
        let f3 = Fq::new(3, 1).unwrap();
        let counts: Vec<usize> = (1..=4).map(|d| irreducibles(&f3.zero(), d).len()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
    }

    #[test]
    fn p_power_factor_over_f9() {
        let f9 = Fq::new(3, 2).unwrap();
        let g = f9.gen();
        let lin = Poly::linear(g);
        let h = &lin.pow(3) * &Poly::linear(-g);
        let fac = factor(&h).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac.contains(&(lin, 3)));
    }
}
