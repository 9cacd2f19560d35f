//! The boundary ∂{a, b} as a formal idele element, and the Gersten cancellation test.

use std::fmt;

use super::branch::{expand_along, parametrize, Jet};
use super::curve::{divisor_of, tame_symbol, unit_part, CurveFunction, PrimeDivisor, P2, R2};
use super::cycle::{intersection_cycle, lift, ClosedPoint, Pt, ZeroCycle};
use crate::algebra::{factor, Field, Poly, Poly2, ResidueField};
use crate::error::{Error, Result};

/// Precision of the local expansions in a boundary.
pub const BOUNDARY_PREC: i64 = 8;

/// A unit of k(Z)_y at a point y of Z over C.
#[derive(Clone, Debug)]
pub struct LocalUnit {
    pub point: String,
    pub uniformizer: String,
    /// None when the branch through the point is singular.
    pub expansion: Option<Jet>,
}

impl fmt::Display for LocalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.expansion {
            Some(e) => write!(f, "{} at {} (t = {})", e, self.point, self.uniformizer),
            None => write!(f, "singular branch at {}", self.point),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdeleTerm {
    pub function: CurveFunction,
    pub local: Vec<LocalUnit>,
}

/// Curve functions with their expansions at the points over C, plus a zero-cycle on U.
#[derive(Clone, Debug)]
pub struct FormalIdeleElem {
    pub terms: Vec<IdeleTerm>,
    pub zero_cycle: ZeroCycle,
}

impl fmt::Display for FormalIdeleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.terms {
            writeln!(f, "{}", t.function)?;
            for u in &t.local {
                writeln!(f, "  {}", u)?;
            }
        }
        write!(f, "zero-cycle: {}", self.zero_cycle)
    }
}

/// The curve C: the line at infinity together with the given affine primes.
fn affine_part(c: &[PrimeDivisor]) -> Vec<P2> {
    c.iter().filter_map(|p| p.poly().cloned()).collect()
}

/// Primes of div(a) and div(b) outside C, after checking they share no component.
fn boundary_primes(a: &R2, b: &R2, c: &[PrimeDivisor]) -> Result<Vec<PrimeDivisor>> {
    let outside = |d: Vec<(PrimeDivisor, i64)>| -> Vec<PrimeDivisor> {
        d.into_iter()
            .map(|(p, _)| p)
            .filter(|p| *p != PrimeDivisor::LineAtInfinity && !c.contains(p))
            .collect()
    };
    let da = outside(divisor_of(a)?);
    let db = outside(divisor_of(b)?);
    if let Some(p) = da.iter().find(|p| db.contains(p)) {
        return Err(Error::CommonComponent(format!("{} lies in both div(a) and div(b)", p)));
    }
    let mut all: Vec<PrimeDivisor> = da.into_iter().chain(db).collect();
    all.sort();
    Ok(all)
}

/// Z·div(r) on U for a unit r along the affine prime Z.
fn unit_cycle(z: &P2, r: &R2, avoid: &[P2]) -> Result<ZeroCycle> {
    let mut out = intersection_cycle(z, r.num(), avoid)?;
    out.add(&intersection_cycle(z, r.den(), avoid)?, -1);
    Ok(out)
}

/// The zero-cycle of ∂_Z{a, b}: w·Z·(a') − v·Z·(b') with a', b' the unit parts along Z.
fn term_cycle(z: &P2, a: &R2, b: &R2, avoid: &[P2]) -> Result<ZeroCycle> {
    let zp = PrimeDivisor::Affine { poly: z.clone(), certified: true };
    let v = super::curve::ord_along(&zp, a)?;
    let w = super::curve::ord_along(&zp, b)?;
    let mut out = ZeroCycle::default();
    if w != 0 {
        out.add(&unit_cycle(z, &unit_part(z, a)?, avoid)?, w);
    }
    if v != 0 {
        out.add(&unit_cycle(z, &unit_part(z, b)?, avoid)?, -v);
    }
    Ok(out)
}

/// Σ_Z div_Z(∂_Z{a, b}) on U = P^2 minus C; zero by the Gersten complex.
pub fn gersten_cycle(a: &R2, b: &R2, c: &[PrimeDivisor]) -> Result<ZeroCycle> {
    let avoid = affine_part(c);
    let mut total = ZeroCycle::default();
    for z in boundary_primes(a, b, c)? {
        total.add(&term_cycle(z.poly().unwrap(), a, b, &avoid)?, 1);
    }
    Ok(total)
}

pub fn gersten_check(a: &R2, b: &R2, c: &[PrimeDivisor]) -> Result<bool> {
    Ok(gersten_cycle(a, b, c)?.is_zero())
}

/// ∂{a, b}: the tame symbols along the primes outside C with their expansions at the
/// points over C, and the zero-cycle on U they bound.
pub fn boundary(a: &R2, b: &R2, c: &[PrimeDivisor], prec: i64) -> Result<FormalIdeleElem> {
    let avoid = affine_part(c);
    let mut terms = vec![];
    let mut total = ZeroCycle::default();
    for z in boundary_primes(a, b, c)? {
        let function = tame_symbol(a, b, &z)?;
        let zp = z.poly().unwrap();
        let mut local = points_at_infinity(zp, &function.rep, prec)?;
        for cp in &avoid {
            local.extend(points_on_affine(zp, cp, &function.rep, prec)?);
        }
        total.add(&term_cycle(zp, a, b, &avoid)?, 1);
        terms.push(IdeleTerm { function, local });
    }
    Ok(FormalIdeleElem { terms, zero_cycle: total })
}

fn unit_or_note(r: Result<Jet>) -> Result<Option<Jet>> {
    match r {
        Ok(j) => Ok(Some(j)),
        Err(Error::DegenerateConfiguration(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Try the preferred uniformizer, then the fallback, then give up on a singular branch.
fn expand_with(
    zc: &Poly2<Pt>,
    num: &Poly2<Pt>,
    den: &Poly2<Pt>,
    pt: (&Pt, &Pt),
    ells: &[(Poly2<Pt>, String)],
    w_shift: Option<i64>,
    prec: i64,
) -> Result<(Option<Jet>, String)> {
    for (ell, name) in ells {
        match parametrize(zc, ell, pt, prec + 4) {
            Ok((xs, ys)) => {
                let mut e = expand_along(num, den, &xs, &ys, prec + 4)?;
                if let Some(k) = w_shift {
                    e = &e * &ys.powi(k)?;
                }
                return Ok((unit_or_note(Ok(e.truncate(prec)))?, name.clone()));
            }
            Err(Error::DegenerateConfiguration(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok((None, String::new()))
}

fn linear(l2: &ResidueField<super::cycle::L1>, cx: Pt, cy: Pt, c0: Pt) -> Poly2<Pt> {
    let z = l2.zero();
    Poly2::new(z.clone(), vec![Poly::new(z.clone(), vec![c0, cx]), Poly::constant(cy)])
}

fn points_at_infinity(z: &P2, rep: &R2, prec: i64) -> Result<Vec<LocalUnit>> {
    let mut out = vec![];
    let (n, d) = (rep.num(), rep.den());
    let shift = d.total_deg() - n.total_deg();
    // chart (u, w) = (y/x, 1/x): points [1 : s : 0]
    let zc = z.chart_x_infinity();
    let on_line = zc.coeff_y(0);
    let mut pts: Vec<(ClosedPoint, bool)> = vec![];
    if on_line.deg() > 0 {
        for (m, _) in factor(&on_line)? {
            let l = ResidueField::new(m.clone(), "a")?;
            pts.push((ClosedPoint { x_min: m, y_min: Poly::x(&l.zero()) }, true));
        }
    }
    // [0 : 1 : 0] when the top form has no y^d term
    if z.top_form().coeff(0, z.total_deg() as usize).is_zero() {
        pts.push((ClosedPoint::rational(&z.proto().zero_like(), &z.proto().zero_like()), false));
    }
    for (pt, x_chart) in pts {
        let (l2, th, et) = pt.field();
        let (zc, nc, dc, label, uname) = if x_chart {
            let label = match pt.coords() {
                Some((s, _)) => format!("[1 : {} : 0]", s),
                None => format!("[1 : s : 0], {} = 0", pt.x_min.fmt_var("s")),
            };
            (lift(&z.chart_x_infinity(), &l2), lift(&n.chart_x_infinity(), &l2), lift(&d.chart_x_infinity(), &l2), label, ("1/x", "y/x - s"))
        } else {
            (lift(&z.chart_y_infinity(), &l2), lift(&n.chart_y_infinity(), &l2), lift(&d.chart_y_infinity(), &l2), "[0 : 1 : 0]".to_string(), ("1/y", "x/y"))
        };
        let one = l2.one();
        let ells = vec![
            (linear(&l2, l2.zero(), one.clone(), l2.zero()), uname.0.to_string()),
            (linear(&l2, one, l2.zero(), -th.clone()), uname.1.to_string()),
        ];
        let (expansion, uniformizer) = expand_with(&zc, &nc, &dc, (&th, &et), &ells, Some(shift), prec)?;
        out.push(LocalUnit { point: label, uniformizer, expansion });
    }
    Ok(out)
}

fn points_on_affine(z: &P2, c: &P2, rep: &R2, prec: i64) -> Result<Vec<LocalUnit>> {
    let mut out = vec![];
    for (pt, _) in intersection_cycle(z, c, &[])?.0 {
        let (l2, th, et) = pt.field();
        let one = l2.one();
        let ells = vec![
            (lift(c, &l2), format!("{}", c)),
            (linear(&l2, one.clone(), l2.zero(), -th.clone()), "x - x(P)".to_string()),
            (linear(&l2, l2.zero(), one, -et.clone()), "y - y(P)".to_string()),
        ];
        let (expansion, uniformizer) =
            expand_with(&lift(z, &l2), &lift(rep.num(), &l2), &lift(rep.den(), &l2), (&th, &et), &ells, None, prec)?;
        out.push(LocalUnit { point: pt.to_string(), uniformizer, expansion });
    }
    Ok(out)
}
