//! Expansions of rational functions in k(v)((t_v)), t_v = P or 1/x.

use super::divisor::Place;
use crate::algebra::{FieldElem, Poly, RatFunc, Residue, ResidueField};
use crate::error::Result;
use crate::localfield::{LaurentSeries, EXACT};

pub type Local = LaurentSeries<Residue<FieldElem>>;

pub fn residue_field(v: &Place, proto: &FieldElem) -> ResidueField<FieldElem> {
    match v {
        Place::Finite(p) => ResidueField::new(p.clone(), "a").expect("places are irreducible"),
        Place::Infinity => ResidueField::trivial(proto),
    }
}

/// x as a series in t_v, known modulo t^prec.
pub fn x_series(v: &Place, k: &ResidueField<FieldElem>, prec: i64) -> Local {
    match v {
        Place::Infinity => LaurentSeries::monomial(k.one(), -1, EXACT),
        Place::Finite(p) => {
            // Newton iteration for P(X) = t starting from X = θ
            let pk = p.map(&k.zero(), |c| k.embed(c));
            let dpk = pk.derivative();
            let t = LaurentSeries::monomial(k.one(), 1, EXACT);
            let mut x = LaurentSeries::constant(k.theta(), EXACT);
            let mut good = 1;
            while good < prec {
                good = (2 * good).min(prec);
                let f = &horner(&pk, &x) - &t;
                let df = horner(&dpk, &x).truncate(good);
                let step = f.truncate(good).try_div(&df).expect("P is separable");
                // keep the iterate exact so the next step sees its full precision
                let next = (&x - &step).truncate(good);
                let terms: Vec<_> = next.terms().collect();
                x = LaurentSeries::from_terms(&k.zero(), &terms, EXACT, "t");
            }
            x.truncate(prec)
        }
    }
}

fn horner(f: &Poly<Residue<FieldElem>>, x: &Local) -> Local {
    let mut acc = LaurentSeries::exact_zero(&f.proto().clone());
    for c in f.coeffs().iter().rev() {
        acc = &(&acc * x) + &LaurentSeries::constant(c.clone(), EXACT);
    }
    acc
}

fn poly_series(f: &Poly<FieldElem>, v: &Place, k: &ResidueField<FieldElem>, prec: i64) -> Local {
    let fk = f.map(&k.zero(), |c| k.embed(c));
    let x = x_series(v, k, prec);
    horner(&fk, &x).truncate(prec)
}

/// Expansion of g at v, correct modulo t_v^prec.
pub fn expand(g: &RatFunc<FieldElem>, v: &Place, prec: i64) -> Result<Local> {
    let k = residue_field(v, g.base_proto());
    if g.num().is_zero() {
        return Ok(LaurentSeries::exact_zero(&k.zero()));
    }
    let vn = v.ord_poly(g.num());
    let vd = v.ord_poly(g.den());
    let r = prec - (vn - vd);
    if r <= 0 {
        return Ok(LaurentSeries::zero(&k.zero(), prec, "t"));
    }
    let num = poly_series(g.num(), v, &k, vn + r);
    let den = poly_series(g.den(), v, &k, vd + r);
    Ok(num.try_div(&den)?.truncate(prec))
}

/// Value of g at v (g regular there).
pub fn eval_at(g: &RatFunc<FieldElem>, v: &Place) -> Result<Residue<FieldElem>> {
    let s = expand(g, v, 1)?;
    s.try_coeff(0)
}
