//! The two-term symbol μ_{π,f}((α dπ + β df)/f) = {1+(β−α)}_{F,x} + {1+α}_{F_π,x}
//! and the checks around it.

use super::boundary::{FormalIdeleElem, IdeleTerm, LocalUnit};
use super::branch::{expand_along, parametrize, Jet};
use super::curve::{CurveFunction, PrimeDivisor, P2, R2};
use super::cycle::{lift, ClosedPoint, ZeroCycle};
use crate::algebra::{Field, FieldElem};
use crate::error::{Error, Result};

/// The prime component of div(g) through the rational point, which must be a smooth point of it.
fn component_through(g: &P2, pt: (&FieldElem, &FieldElem)) -> Result<P2> {
    let through: Vec<_> = g.factor()?.into_iter().filter(|t| t.poly.eval(pt.0, pt.1).is_zero()).collect();
    match through.as_slice() {
        [t] if t.mult == 1 => Ok(t.poly.clone()),
        [] => Err(Error::DegenerateConfiguration(format!("{} does not vanish at the point", g))),
        _ => Err(Error::DegenerateConfiguration(format!("div({}) is not a single reduced prime at the point", g))),
    }
}

fn jacobian(a: &P2, b: &P2, pt: (&FieldElem, &FieldElem)) -> FieldElem {
    let (x, y) = pt;
    a.derivative_x().eval(x, y) * b.derivative_y().eval(x, y) - a.derivative_y().eval(x, y) * b.derivative_x().eval(x, y)
}

/// g along the carrier through the rational point, in t = `uniformizer`.
fn expand_on(g: &R2, carrier: &P2, uniformizer: &P2, pt: (&FieldElem, &FieldElem), prec: i64) -> Result<Jet> {
    let (l2, th, et) = ClosedPoint::rational(pt.0, pt.1).field();
    let (xs, ys) = parametrize(&lift(carrier, &l2), &lift(uniformizer, &l2), (&th, &et), prec)?;
    expand_along(&lift(g.num(), &l2), &lift(g.den(), &l2), &xs, &ys, prec)
}

/// One term {unit}_{carrier, x}, with the unit expanded along the carrier in t = `uniformizer`.
fn symbol_term(unit: &R2, carrier: &P2, uniformizer: &P2, pt: (&FieldElem, &FieldElem), prec: i64) -> Result<(IdeleTerm, Jet)> {
    let e = expand_on(unit, carrier, uniformizer, pt, prec)?;
    let prime = PrimeDivisor::Affine { poly: carrier.clone(), certified: true };
    let function = CurveFunction::restrict(&prime, unit)?;
    let point = ClosedPoint::rational(pt.0, pt.1).to_string();
    let local = vec![LocalUnit { point, uniformizer: uniformizer.to_string(), expansion: Some(e.clone()) }];
    Ok((IdeleTerm { function, local }, e))
}

/// The emitted terms of μ_{π,f}, with their expansions in t = π along the carriers.
#[derive(Clone, Debug)]
pub struct MuSymbol {
    /// (γ, carrier, expansion of 1 + γ)
    pub terms: Vec<(R2, P2, Jet)>,
    pub element: FormalIdeleElem,
}

/// μ_{π,f}((α dπ + β df)/f) at the rational point x. Trivial terms are left out.
pub fn mu_symbol(alpha: &R2, beta: &R2, pi: &P2, f: &P2, pt: (&FieldElem, &FieldElem), prec: i64) -> Result<MuSymbol> {
    if !pi.eval(pt.0, pt.1).is_zero() || !f.eval(pt.0, pt.1).is_zero() || jacobian(pi, f, pt).is_zero() {
        return Err(Error::DegenerateConfiguration(format!("({}, {}) are not regular parameters at the point", pi, f)));
    }
    for g in [alpha, beta] {
        if g.den().eval(pt.0, pt.1).is_zero() {
            return Err(Error::PreconditionViolated(format!("{} is not regular at the point", g)));
        }
    }
    let one = alpha.one_like();
    let mut terms = vec![];
    let mut idele = vec![];
    let gamma = beta.clone() - alpha.clone();
    let carriers = [(gamma, component_through(f, pt)?), (alpha.clone(), component_through(&(f + pi), pt)?)];
    for (g, carrier) in carriers {
        if g.is_zero() {
            continue;
        }
        let (t, e) = symbol_term(&(one.clone() + g.clone()), &carrier, pi, pt, prec)?;
        terms.push((g, carrier, e));
        idele.push(t);
    }
    Ok(MuSymbol { terms, element: FormalIdeleElem { terms: idele, zero_cycle: ZeroCycle::default() } })
}

/// Differential 1-forms g dx + h dy.
type Form = (R2, R2);

fn d(g: &R2) -> Form {
    (g.derivative_x(), g.derivative_y())
}
fn scale(k: &R2, w: &Form) -> Form {
    (k.clone() * w.0.clone(), k.clone() * w.1.clone())
}
fn add(a: &Form, b: &Form) -> Form {
    (a.0.clone() + b.0.clone(), a.1.clone() + b.1.clone())
}

#[derive(Clone, Debug)]
pub struct MuTransformReport {
    /// ξ computed in (π, f) equals ξ in (π', f') = (vπ, uf) plus the explicit correction
    /// −β du/u − (απ/(vf)) dv, which lies in the kernel of the class map.
    pub form_identity: bool,
    /// The carrier of the first term is unchanged: div(uf) = div(f) at x.
    pub f_carrier: bool,
    /// div(f' + π') = div(uv⁻¹f + π) at x.
    pub f_pi_carrier: bool,
    /// μ_{π',f'} emits {1+(β−αuv⁻¹)}_F + {1+αuv⁻¹}_{F'_π'}, termwise to the jet precision.
    pub terms_match: bool,
}

impl MuTransformReport {
    pub fn ok(&self) -> bool {
        self.form_identity && self.f_carrier && self.f_pi_carrier && self.terms_match
    }
}

/// The coordinate change f' = uf, π' = vπ, α' = αuv⁻¹, β' = β for units u, v at x.
pub fn mu_transformation_check(
    alpha: &R2,
    beta: &R2,
    pi: &P2,
    f: &P2,
    u: &P2,
    v: &P2,
    pt: (&FieldElem, &FieldElem),
    prec: i64,
) -> Result<MuTransformReport> {
    if u.eval(pt.0, pt.1).is_zero() || v.eval(pt.0, pt.1).is_zero() {
        return Err(Error::PreconditionViolated("u and v must be units at the point".into()));
    }
    let r = |p: &P2| R2::from_poly(p.clone());
    let (fp, pip) = (u * f, v * pi);
    let ruv = r(u).div(&r(v))?;
    let alpha_p = alpha.clone() * ruv.clone();

    let xi = scale(&r(f).inv()?, &add(&scale(alpha, &d(&r(pi))), &scale(beta, &d(&r(f)))));
    let xi_p = scale(&r(&fp).inv()?, &add(&scale(&alpha_p, &d(&r(&pip))), &scale(beta, &d(&r(&fp)))));
    let corr = add(
        &scale(&(-beta.clone()).div(&r(u))?, &d(&r(u))),
        &scale(&(-(alpha.clone() * r(pi))).div(&(r(v) * r(f)))?, &d(&r(v))),
    );
    let rhs = add(&xi_p, &corr);
    let form_identity = xi.0 == rhs.0 && xi.1 == rhs.1;

    let f_carrier = component_through(&fp, pt)? == component_through(f, pt)?;
    // F'_π' from f' + π' against the carrier of uv⁻¹f + π
    let expected_fpi = component_through((r(f) * ruv.clone() + r(pi)).num(), pt)?;
    let f_pi_carrier = component_through(&(&fp + &pip), pt)? == expected_fpi;

    let got = mu_symbol(&alpha_p, beta, &pip, &fp, pt, prec)?;
    let one = alpha.one_like();
    let predicted = [
        (beta.clone() - alpha.clone() * ruv.clone(), component_through(f, pt)?),
        (alpha.clone() * ruv, expected_fpi),
    ];
    let mut terms_match = true;
    let mut k = 0;
    for (g, carrier) in predicted {
        if g.is_zero() {
            continue;
        }
        let Some((gg, gc, ge)) = got.terms.get(k) else {
            terms_match = false;
            break;
        };
        k += 1;
        let (_, e) = symbol_term(&(one.clone() + g.clone()), &carrier, &pip, pt, prec)?;
        terms_match &= *gg == g && *gc == carrier && e.agrees_with(ge);
    }
    terms_match &= k == got.terms.len();
    Ok(MuTransformReport { form_identity, f_carrier, f_pi_carrier, terms_match })
}

/// Jet comparison with η = {1+β}_F − {1+α}_F + {1+α}_{F_π}: the F-term of μ agrees with
/// (1+β)/(1+α) modulo t^{2m}, m the order of α, β along F, and the F_π-terms coincide.
pub fn nu_shape_check(alpha: &R2, beta: &R2, pi: &P2, f: &P2, pt: (&FieldElem, &FieldElem), prec: i64) -> Result<bool> {
    let mu = mu_symbol(alpha, beta, pi, f, pt, prec)?;
    let one = alpha.one_like();
    let carrier_f = component_through(f, pt)?;
    let carrier_fpi = component_through(&(f + pi), pt)?;
    let jet = |g: &R2, c: &P2| expand_on(g, c, pi, pt, prec);
    let order = |g: &R2| -> Result<i64> {
        if g.is_zero() {
            return Ok(prec);
        }
        Ok(jet(g, &carrier_f)?.valuation().unwrap_or(prec))
    };
    let m = order(alpha)?.min(order(beta)?);
    let eta_f = jet(&(one.clone() + beta.clone()).div(&(one.clone() + alpha.clone()))?, &carrier_f)?;
    let mut ok = true;
    for (g, c, e) in &mu.terms {
        if *c == carrier_f && *g == beta.clone() - alpha.clone() {
            ok &= e.truncate(2 * m).agrees_with(&eta_f.truncate(2 * m));
        } else if *c == carrier_fpi && g == alpha {
            ok &= e.agrees_with(&jet(&(one.clone() + alpha.clone()), &carrier_fpi)?);
        } else {
            ok = false;
        }
    }
    // when β = α the F-term is absent from μ and η's F-part must be trivial at jet level
    if (beta.clone() - alpha.clone()).is_zero() {
        let t = eta_f.truncate(2 * m);
        ok &= t.agrees_with(&Jet::constant(t.proto().one_like(), crate::localfield::EXACT));
    }
    Ok(ok)
}
