//! Branches of plane curves through a point, parametrized by a declared uniformizer.

use super::cycle::Pt;
use crate::algebra::{Field, Poly2};
use crate::error::{Error, Result};
use crate::localfield::{LaurentSeries, EXACT};

pub type Jet = LaurentSeries<Pt>;

fn exact(s: &Jet) -> Jet {
    let terms: Vec<_> = s.terms().collect();
    LaurentSeries::from_terms(s.proto(), &terms, EXACT, "t")
}

pub fn eval_series(p: &Poly2<Pt>, x: &Jet, y: &Jet) -> Jet {
    p.eval_with(x, y, |c| LaurentSeries::constant(c.clone(), EXACT))
}

/// (X(t), Y(t)) with z(X, Y) = 0 and ell(X, Y) = t, modulo t^prec, starting at `pt`.
/// Needs the Jacobian of (z, ell) to be invertible at the point.
pub fn parametrize(z: &Poly2<Pt>, ell: &Poly2<Pt>, pt: (&Pt, &Pt), prec: i64) -> Result<(Jet, Jet)> {
    let (a, b) = pt;
    if !z.eval(a, b).is_zero() || !ell.eval(a, b).is_zero() {
        return Err(Error::PreconditionViolated("the point is not on the curve and the uniformizer's zero set".into()));
    }
    let (zx, zy) = (z.derivative_x().eval(a, b), z.derivative_y().eval(a, b));
    let (lx, ly) = (ell.derivative_x().eval(a, b), ell.derivative_y().eval(a, b));
    let det = zx.clone() * ly.clone() - zy.clone() * lx.clone();
    let Some(di) = det.inv() else {
        return Err(Error::DegenerateConfiguration("the curve is singular or tangent to the uniformizer".into()));
    };
    // constant inverse Jacobian: each step gains one order in t
    let j = [[ly * di.clone(), -zy * di.clone()], [-lx * di.clone(), zx * di]];
    let t = LaurentSeries::monomial(a.one_like(), 1, EXACT);
    let mut xs = LaurentSeries::constant(a.clone(), EXACT);
    let mut ys = LaurentSeries::constant(b.clone(), EXACT);
    for _ in 0..prec.max(1) {
        let r1 = eval_series(z, &xs, &ys).truncate(prec);
        let r2 = (&eval_series(ell, &xs, &ys) - &t).truncate(prec);
        if r1.is_zero() && r2.is_zero() {
            break;
        }
        let dx = &r1.scale(&j[0][0]) + &r2.scale(&j[0][1]);
        let dy = &r1.scale(&j[1][0]) + &r2.scale(&j[1][1]);
        xs = exact(&(&xs - &dx).truncate(prec));
        ys = exact(&(&ys - &dy).truncate(prec));
    }
    Ok((xs.truncate(prec), ys.truncate(prec)))
}

/// num/den along a parametrized branch, modulo t^prec when the result is a unit.
pub fn expand_along(num: &Poly2<Pt>, den: &Poly2<Pt>, xs: &Jet, ys: &Jet, prec: i64) -> Result<Jet> {
    let n = eval_series(num, xs, ys);
    let d = eval_series(den, xs, ys);
    Ok(n.try_div(&d)?.truncate(prec))
}
