//! C(P^1, D)^0 as (Π_{v∈|D|} (O_v/m_v^{n_v})^×) / F_q^×.

use std::collections::HashMap;
use std::fmt;

use super::divisor::{poly_divisor, Divisor, Modulus, Place};
use crate::algebra::poly::{crt, polys_below};
use crate::algebra::smith::{smith, unimodular_inverse, Smith};
use crate::algebra::{irreducibles, Field, FieldElem, Fq, Poly, RatFunc};
use crate::error::{Error, Result};

/// A finite abelian group in invariant-factor form, each factor with a
/// degree-zero divisor on U representing its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<Divisor>,
}

impl FinAbGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// (q^{d n} - q^{d(n-1)}) summed multiplicatively over |D|, divided by q - 1.
pub fn closed_form_order(q: u64, d: &Modulus) -> u64 {
    let mut num = 1u64;
    for (v, n) in d.divisor().terms() {
        let dv = v.degree() as u32;
        num *= q.pow(dv * n as u32) - q.pow(dv * (n as u32 - 1));
    }
    num / (q - 1)
}

/// One factor O_v/m_v^n, as polynomials modulo `modulus` (in x for finite v, in t = 1/x at infinity).
#[derive(Clone, Debug)]
struct LocalRing {
    place: Place,
    modulus: Poly<FieldElem>,
}

impl LocalRing {
    fn new(place: &Place, n: i64, proto: &FieldElem) -> Self {
        let modulus = match place {
            Place::Finite(p) => p.pow(n as u64),
            Place::Infinity => Poly::monomial(proto.one_like(), n as usize),
        };
        LocalRing { place: place.clone(), modulus }
    }
    fn is_unit(&self, a: &Poly<FieldElem>) -> bool {
        match &self.place {
            Place::Finite(p) => !p.divides(a),
            Place::Infinity => !a.coeff(0).is_zero(),
        }
    }
    fn unit_count(&self, q: u64) -> u64 {
        let d = self.place.degree() as u32;
        let n = (self.modulus.deg() as u32) / d;
        q.pow(d * n) - q.pow(d * (n - 1))
    }
    /// Image of a rational function that is a unit at v.
    fn image(&self, g: &RatFunc<FieldElem>) -> Result<Poly<FieldElem>> {
        if self.place.ord(g)? != 0 {
            return Err(Error::PreconditionViolated(format!("{} is not a unit at {}", g, self.place)));
        }
        let (n, d) = match &self.place {
            // equal degrees after cancelling t^{deg}: reverse both at the common degree
            Place::Infinity => {
                let k = g.num().deg().max(g.den().deg()) as usize;
                (g.num().reversed(k), g.den().reversed(k))
            }
            Place::Finite(_) => (g.num().clone(), g.den().clone()),
        };
        let inv = d.inv_mod(&self.modulus).expect("unit denominator");
        Ok(n.mulmod(&inv, &self.modulus))
    }
}

type Elem = Vec<Poly<FieldElem>>;

/// The ray class group together with the data needed for discrete logarithms.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    fq: Fq,
    modulus: Modulus,
    rings: Vec<LocalRing>,
    /// every element of Π (O_v/m^n)^× with its coordinates in the chosen generators
    table: HashMap<Elem, Vec<i64>>,
    gens: Vec<Elem>,
    smith: Smith,
    v: Vec<Vec<i128>>,
    pub group: FinAbGroup,
}

fn mul(rings: &[LocalRing], a: &Elem, b: &Elem) -> Elem {
    rings.iter().zip(a.iter().zip(b)).map(|(r, (x, y))| x.mulmod(y, &r.modulus)).collect()
}

fn pow(rings: &[LocalRing], a: &Elem, e: u64) -> Elem {
    let mut acc: Elem = rings.iter().map(|r| Poly::one(r.modulus.proto())).collect();
    let mut base = a.clone();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(rings, &acc, &base);
        }
        base = mul(rings, &base, &base);
        k >>= 1;
    }
    acc
}

pub fn ray_class_group(fq: Fq, d: &Modulus) -> Result<RayClassGroup> {
    let proto = fq.zero();
    let q = fq.q() as u64;
    let rings: Vec<LocalRing> = d.divisor().terms().map(|(v, n)| LocalRing::new(v, n, &proto)).collect();
    let total: u64 = rings.iter().map(|r| r.unit_count(q)).product();
    let one: Elem = rings.iter().map(|_| Poly::one(&proto)).collect();

    let mut table: HashMap<Elem, Vec<i64>> = HashMap::from([(one.clone(), vec![])]);
    let mut gens: Vec<Elem> = vec![];
    let mut rels: Vec<Vec<i64>> = vec![];
    'outer: for (i, r) in rings.iter().enumerate() {
        for a in polys_below(&proto, r.modulus.deg() as usize) {
            if table.len() as u64 == total {
                break 'outer;
            }
            if !r.is_unit(&a) {
                continue;
            }
            let mut c = one.clone();
            c[i] = a;
            if table.contains_key(&c) {
                continue;
            }
            // smallest k with c^k in the current subgroup
            let mut k = 1u64;
            let mut y = c.clone();
            while !table.contains_key(&y) {
                y = mul(&rings, &y, &c);
                k += 1;
            }
            let g = gens.len();
            let mut rel = table[&y].clone();
            rel.iter_mut().for_each(|x| *x = -*x);
            rel.resize(g, 0);
            rel.push(k as i64);
            rels.push(rel);
            let old: Vec<(Elem, Vec<i64>)> = table.iter().map(|(e, v)| (e.clone(), v.clone())).collect();
            let mut cj = one.clone();
            for j in 1..k {
                cj = mul(&rings, &cj, &c);
                for (e, v) in &old {
                    let mut co = v.clone();
                    co.resize(g, 0);
                    co.push(j as i64);
                    table.insert(mul(&rings, e, &cj), co);
                }
            }
            gens.push(c);
        }
    }
    debug_assert_eq!(table.len() as u64, total);
    let ng = gens.len();
    for v in table.values_mut() {
        v.resize(ng, 0);
    }
    // constants are trivial in the quotient
    let diag: Elem = rings.iter().map(|r| Poly::constant(fq.gen()).rem(&r.modulus)).collect();
    let mut rows: Vec<Vec<i128>> = rels
        .iter()
        .map(|r| {
            let mut r: Vec<i128> = r.iter().map(|&x| x as i128).collect();
            r.resize(ng, 0);
            r
        })
        .collect();
    rows.push(table[&diag].iter().map(|&x| x as i128).collect());
    let sm = smith(&rows, ng)?;
    let v = unimodular_inverse(&sm.vinv)?;
    let mut out = RayClassGroup {
        fq,
        modulus: d.clone(),
        rings,
        table,
        gens,
        smith: sm,
        v,
        group: FinAbGroup { invariant_factors: vec![], generators: vec![] },
    };
    let mut factors = vec![];
    let mut reps = vec![];
    let mut idx: Vec<usize> = (0..ng).filter(|&i| out.smith.diag[i] > 1).collect();
    idx.sort_by_key(|&i| out.smith.diag[i]);
    for i in idx {
        let x = out.smith.vinv[i].clone();
        let elem = out.element_from_exponents(&x);
        factors.push(out.smith.diag[i] as u64);
        reps.push(out.representative(&elem)?);
    }
    out.group = FinAbGroup { invariant_factors: factors, generators: reps };
    Ok(out)
}

impl RayClassGroup {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    fn element_from_exponents(&self, x: &[i128]) -> Elem {
        let mut e: Elem = self.rings.iter().map(|r| Poly::one(r.modulus.proto())).collect();
        for (j, &k) in x.iter().enumerate() {
            let k = k.rem_euclid(self.orders_total() as i128) as u64;
            e = mul(&self.rings, &e, &pow(&self.rings, &self.gens[j], k));
        }
        e
    }

    fn orders_total(&self) -> u64 {
        self.table.len() as u64
    }

    /// SNF coordinates of an element of Π (O_v/m^n)^×, one entry per nontrivial factor.
    fn coordinates(&self, e: &Elem) -> Vec<i64> {
        let co: Vec<i128> = self.table[e].iter().map(|&x| x as i128).collect();
        let all = self.smith.coordinates(&self.v, &co);
        let mut idx: Vec<usize> = (0..all.len()).filter(|&i| self.smith.diag[i] > 1).collect();
        idx.sort_by_key(|&i| self.smith.diag[i]);
        idx.into_iter().map(|i| all[i] as i64).collect()
    }

    /// The function h with div(h) = E and h a unit along |D|; E must have degree 0 and avoid |D|.
    fn function_of(&self, e: &Divisor) -> Result<RatFunc<FieldElem>> {
        if e.degree() != 0 {
            return Err(Error::PreconditionViolated(format!("{} has degree {}", e, e.degree())));
        }
        let proto = self.fq.zero();
        let (mut num, mut den) = (Poly::one(&proto), Poly::one(&proto));
        for (v, n) in e.terms() {
            if self.modulus.contains(v) {
                return Err(Error::PreconditionViolated(format!("{} meets the modulus at {}", e, v)));
            }
            if let Place::Finite(p) = v {
                if n > 0 {
                    num = &num * &p.pow(n as u64);
                } else {
                    den = &den * &p.pow((-n) as u64);
                }
            }
        }
        RatFunc::new(num, den, "x")
    }

    /// Class of a degree-zero divisor supported on U.
    pub fn class_of(&self, e: &Divisor) -> Result<Vec<i64>> {
        let h = self.function_of(e)?;
        let elem: Elem = self.rings.iter().map(|r| r.image(&h)).collect::<Result<_>>()?;
        Ok(self.coordinates(&elem))
    }

    /// Class of a nonzero rational function that is a unit along |D|.
    pub fn class_of_function(&self, g: &RatFunc<FieldElem>) -> Result<Vec<i64>> {
        let elem: Elem = self.rings.iter().map(|r| r.image(g)).collect::<Result<_>>()?;
        Ok(self.coordinates(&elem))
    }

    /// A degree-zero divisor on U whose class is the given unit-group element.
    fn representative(&self, gamma: &Elem) -> Result<Divisor> {
        let proto = self.fq.zero();
        let dfin = self.modulus.finite_part(&proto);
        let finite: Vec<(usize, &LocalRing)> =
            self.rings.iter().enumerate().filter(|(_, r)| r.place != Place::Infinity).collect();
        let n_inf = self.modulus.n_inf();
        if n_inf == 0 {
            // h = N itself: its pole sits at infinity, which lies in U
            let pairs: Vec<_> = finite.iter().map(|(i, r)| (gamma[*i].clone(), r.modulus.clone())).collect();
            let mut n = crt(&pairs).unwrap_or_else(|| Poly::one(&proto));
            if n.is_zero() {
                n = Poly::one(&proto);
            }
            let mut e = poly_divisor(&n)?;
            e.add_point(Place::Infinity, -n.deg());
            return Ok(e);
        }
        // h = N / R^k with R the first place of U and deg N = k·deg R
        let r = (1..)
            .flat_map(|d| irreducibles(&proto, d))
            .find(|p| !self.modulus.contains(&Place::Finite(p.clone())))
            .expect("U has finite places");
        let delta = dfin.deg();
        let k = ((delta + n_inf) as f64 / r.deg() as f64).ceil().max(1.0) as u64;
        let rk = r.pow(k);
        let big = rk.deg();
        let pairs: Vec<_> =
            finite.iter().map(|(i, ring)| (gamma[*i].mulmod(&rk, &ring.modulus), ring.modulus.clone())).collect();
        let l = if pairs.is_empty() { Poly::zero(&proto) } else { crt(&pairs).expect("coprime moduli") };
        // the top n_inf coefficients of N are fixed by rev(N) ≡ γ_∞ · rev(R^k) mod t^n_inf
        let iinf = self.rings.iter().position(|r| r.place == Place::Infinity).unwrap();
        let tmod = &self.rings[iinf].modulus;
        let target = gamma[iinf].mulmod(&rk.reversed(big as usize), tmod);
        let sdeg = (big - delta) as usize;
        let mut s = vec![proto.zero_like(); sdeg + 1];
        for j in 0..n_inf as usize {
            // coefficient of x^{big-j} in dfin·S equals target_j; L sits below degree big - n_inf
            let mut have = proto.zero_like();
            for i in 0..j {
                if delta as usize >= j - i {
                    have = have + dfin.coeff(delta as usize - (j - i)) * s[sdeg - i];
                }
            }
            s[sdeg - j] = target.coeff(j) - have;
        }
        let n = &l + &(&dfin * &Poly::new(proto.zero_like(), s));
        let mut e = poly_divisor(&n)?;
        e.add_point(Place::Finite(r), -(k as i64));
        let got = self.class_of(&e)?;
        let want = self.coordinates(gamma);
        if got != want {
            return Err(Error::PreconditionViolated(format!("representative {} has class {:?}, want {:?}", e, got, want)));
        }
        Ok(e)
    }
}
