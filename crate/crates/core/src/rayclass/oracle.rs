//! Independent presentation of C(P^1, D): generators are the places of U of
//! degree ≤ B, relations are div(g)|_U for g ≡ 1 mod D built from polynomials of degree ≤ B.
//!
//! Two polynomials h1, h2 coprime to D give g = h1/h2 ≡ 1 mod D exactly when they agree
//! modulo the finite part of D (up to a constant when infinity lies in U) and, if infinity
//! lies in |D| with multiplicity n, share degree and their top n coefficients. Bucketing the
//! polynomials by that key and relating each to its bucket's first member spans all such g.

use std::collections::{BTreeMap, HashMap};

use super::divisor::{Divisor, Modulus, Place};
use super::group::FinAbGroup;
use crate::algebra::poly::monic_polys;
use crate::algebra::smith::smith;
use crate::algebra::{factor, Field, FieldElem, Fq, Poly};
use crate::error::{Error, Result};

pub const MAX_ORACLE_BOUND: i64 = 6;
/// Enough for every modulus of degree ≤ 4 over q ≤ 4. Too small a bound can leave out
/// generators and return a proper quotient, which the free-rank check only sometimes notices.
pub const DEFAULT_ORACLE_BOUND: i64 = 6;

/// Factorizations of every monic polynomial of degree ≤ bound, shared across moduli.
pub struct OracleTables {
    fq: Fq,
    bound: i64,
    polys: Vec<(Poly<FieldElem>, Vec<(Poly<FieldElem>, u32)>)>,
}

impl OracleTables {
    pub fn new(fq: Fq, bound: i64) -> Result<Self> {
        if !(1..=MAX_ORACLE_BOUND).contains(&bound) {
            return Err(Error::BudgetExceeded(format!("degree bound {} outside 1..={}", bound, MAX_ORACLE_BOUND)));
        }
        let proto = fq.zero();
        let mut polys = vec![];
        for d in 0..=bound as usize {
            for h in monic_polys(&proto, d) {
                let f = if d == 0 { vec![] } else { factor(&h)? };
                polys.push((h, f));
            }
        }
        Ok(OracleTables { fq, bound, polys })
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// C(P^1, D)^0 from the presentation with polynomials of degree ≤ `bound`.
    pub fn compute(&self, d: &Modulus, bound: i64) -> Result<FinAbGroup> {
        if bound > self.bound {
            return Err(Error::BudgetExceeded(format!("tables built up to degree {}", self.bound)));
        }
        let proto = self.fq.zero();
        let dfin = d.finite_part(&proto);
        let n_inf = d.n_inf();
        let bad: Vec<&Poly<FieldElem>> = d.divisor().support().filter_map(|v| v.poly()).collect();
        let scalars: Vec<FieldElem> = self.fq.elements().filter(|c| !c.is_zero()).collect();

        // columns: places of U, larger degree first so that eliminations pivot on them
        let mut places: Vec<Place> = vec![];
        for (h, f) in &self.polys {
            if h.deg() <= bound && f.len() == 1 && f[0].1 == 1 && !bad.contains(&h) {
                places.push(Place::Finite(h.clone()));
            }
        }
        if !d.contains(&Place::Infinity) {
            places.push(Place::Infinity);
        }
        places.sort_by(|a, b| b.degree().cmp(&a.degree()).then(a.cmp(b)));
        let col: HashMap<&Place, usize> = places.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let ncols = places.len();

        let mut ech = Echelon::default();
        let mut reps: HashMap<BucketKey, BTreeMap<usize, i128>> = HashMap::new();
        for (h, f) in &self.polys {
            if h.deg() > bound || bad.iter().any(|p| p.divides(h)) {
                continue;
            }
            let mut row: BTreeMap<usize, i128> = BTreeMap::new();
            for (p, e) in f {
                *row.entry(col[&Place::Finite(p.clone())]).or_insert(0) += *e as i128;
            }
            if n_inf == 0 {
                *row.entry(col[&Place::Infinity]).or_insert(0) -= h.deg() as i128;
            }
            let key = bucket_key(h, &dfin, n_inf, &scalars);
            match reps.get(&key) {
                None => {
                    reps.insert(key, row);
                }
                Some(base) => {
                    let mut rel = row;
                    for (&c, &v) in base {
                        *rel.entry(c).or_insert(0) -= v;
                    }
                    rel.retain(|_, v| *v != 0);
                    ech.insert(rel)?;
                }
            }
        }
        ech.to_group(&places, ncols)
    }
}

pub(crate) type BucketKey = (i64, Poly<FieldElem>, Vec<FieldElem>);

/// Monic h1, h2 coprime to D have equal keys iff h1/h2 ≡ 1 mod D, up to a constant factor
/// when infinity is not in |D| (pass `scalars` = F_q^× there, or just [1] to drop that freedom).
pub(crate) fn bucket_key(h: &Poly<FieldElem>, dfin: &Poly<FieldElem>, n_inf: i64, scalars: &[FieldElem]) -> BucketKey {
    let r = h.rem(dfin);
    if n_inf > 0 {
        let zero = h.proto().zero_like();
        let top = (1..n_inf).map(|j| if h.deg() >= j { h.coeff((h.deg() - j) as usize) } else { zero }).collect();
        (h.deg(), r, top)
    } else {
        (0, scalars.iter().map(|c| r.scale(c)).min().unwrap(), vec![])
    }
}

pub fn ray_class_oracle(fq: Fq, d: &Modulus, deg_bound: i64) -> Result<FinAbGroup> {
    OracleTables::new(fq, deg_bound)?.compute(d, deg_bound)
}


fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

fn ovf() -> Error {
    Error::BudgetExceeded("integer overflow in the oracle's Hermite form".into())
}

fn combine(
    x: &BTreeMap<usize, i128>,
    kx: i128,
    y: &BTreeMap<usize, i128>,
    ky: i128,
) -> Result<BTreeMap<usize, i128>> {
    let mut out = BTreeMap::new();
    for (&c, &v) in x {
        out.insert(c, v.checked_mul(kx).ok_or_else(ovf)?);
    }
    for (&c, &v) in y {
        let e = out.entry(c).or_insert(0);
        *e = v.checked_mul(ky).and_then(|w| e.checked_add(w)).ok_or_else(ovf)?;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Sparse row echelon form over Z, pivot = first column.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, BTreeMap<usize, i128>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, i128>) -> Result<()> {
        loop {
            let Some((&c, &a)) = row.iter().next() else { return Ok(()) };
            match self.rows.get_mut(&c) {
                None => {
                    if a < 0 {
                        row.values_mut().for_each(|v| *v = -*v);
                    }
                    self.rows.insert(c, row);
                    return Ok(());
                }
                Some(prow) => {
                    let b = prow[&c];
                    if a % b == 0 {
                        row = combine(&row, 1, prow, -(a / b))?;
                    } else {
                        let (g, s, t) = egcd(a, b);
                        let newp = combine(&row, s, prow, t)?;
                        let other = combine(&row, b / g, prow, -(a / g))?;
                        *prow = newp;
                        row = other;
                    }
                }
            }
        }
    }

    fn to_group(mut self, places: &[Place], ncols: usize) -> Result<FinAbGroup> {
        let free = ncols - self.rows.len();
        if free != 1 {
            return Err(Error::BudgetExceeded(format!(
                "presentation has free rank {}; the degree bound is too small",
                free
            )));
        }
        // eliminate generators solved by a unit pivot, from the last column back
        let unit: Vec<usize> = self.rows.iter().filter(|(_, r)| r.values().next().unwrap().abs() == 1).map(|(&c, _)| c).collect();
        for &c in unit.iter().rev() {
            let prow = self.rows[&c].clone();
            let sign = prow[&c];
            let keys: Vec<usize> = self.rows.range(..c).map(|(&k, _)| k).collect();
            for k in keys {
                let r = self.rows.get_mut(&k).unwrap();
                if let Some(&v) = r.get(&c) {
                    *r = combine(r, 1, &prow, -v * sign)?;
                }
            }
        }
        let unit_set: std::collections::HashSet<usize> = unit.iter().copied().collect();
        let keep: Vec<usize> = (0..ncols).filter(|c| !unit_set.contains(c)).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense: Vec<Vec<i128>> = self
            .rows
            .iter()
            .filter(|(c, _)| !unit_set.contains(c))
            .map(|(_, r)| {
                let mut v = vec![0i128; keep.len()];
                for (c, x) in r {
                    v[pos[c]] = *x;
                }
                v
            })
            .collect();
        let sm = smith(&dense, keep.len())?;
        let mut idx: Vec<usize> = (0..keep.len()).filter(|&i| sm.diag[i] > 1).collect();
        idx.sort_by_key(|&i| sm.diag[i]);
        let mut factors = vec![];
        let mut gens = vec![];
        for i in idx {
            factors.push(sm.diag[i] as u64);
            let d = Divisor::from_terms(
                sm.vinv[i].iter().enumerate().map(|(j, &x)| (places[keep[j]].clone(), x as i64)),
            );
            gens.push(d);
        }
        Ok(FinAbGroup { invariant_factors: factors, generators: gens })
    }
}
