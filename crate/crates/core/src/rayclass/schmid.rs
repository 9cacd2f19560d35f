//! The local Artin-Schreier symbol Tr Res_v(a·db/b) and its reciprocity law on P^1.

use super::divisor::{poly_divisor, Place};
use super::local::expand;
use crate::algebra::{Field, FieldElem, FiniteField, RatFunc};
use crate::error::{Error, Result};

const PREC_CAP: i64 = 256;

/// Tr_{k(v)/F_p} Res_v(a·db/b) ∈ F_p.
pub fn schmid_local(a: &RatFunc<FieldElem>, b: &RatFunc<FieldElem>, v: &Place) -> Result<u64> {
    if b.num().is_zero() {
        return Err(Error::ZeroFunction);
    }
    if a.num().is_zero() {
        return Ok(0);
    }
    let va = v.ord(a)?;
    let vb = v.ord(b)?;
    // a is needed through t^0; db/b through t^(-1-va), which takes b to relative precision 1 - va
    let mut n = va.abs() + vb.abs() + 4;
    loop {
        let sa = expand(a, v, n)?;
        let sb = expand(b, v, n)?;
        let w = sa.try_div(&sb).and_then(|q| (&q * &sb.derivative()).try_coeff(-1));
        match w {
            Ok(r) => return Ok(r.abs_trace()),
            Err(Error::InsufficientPrecision(_)) if n < PREC_CAP => n = (2 * n).min(PREC_CAP),
            Err(e) => return Err(e),
        }
    }
}

/// Places where a or b has a zero or pole, which covers every pole of a·db/b, plus infinity.
pub fn schmid_places(a: &RatFunc<FieldElem>, b: &RatFunc<FieldElem>) -> Result<Vec<Place>> {
    if a.num().is_zero() || b.num().is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut out: Vec<Place> = vec![];
    for f in [a.num(), a.den(), b.num(), b.den()] {
        for v in poly_divisor(f)?.support() {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
    }
    out.sort();
    out.push(Place::Infinity);
    Ok(out)
}

/// The local symbols at every place that can contribute.
pub fn schmid_terms(a: &RatFunc<FieldElem>, b: &RatFunc<FieldElem>) -> Result<Vec<(Place, u64)>> {
    schmid_places(a, b)?.into_iter().map(|v| Ok((v.clone(), schmid_local(a, b, &v)?))).collect()
}

/// Σ_v Tr Res_v(a·db/b) = 0.
pub fn schmid_reciprocity_check(a: &RatFunc<FieldElem>, b: &RatFunc<FieldElem>) -> Result<bool> {
    let p = a.base_proto().characteristic();
    Ok(schmid_terms(a, b)?.iter().map(|(_, x)| x).sum::<u64>() % p == 0)
}
