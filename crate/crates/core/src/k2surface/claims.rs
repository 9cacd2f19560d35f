//! Tame symbols of the two test families used for the local boundary tables, checked
//! prime by prime against the closed-form entries.

use std::fmt;

use serde::Serialize;

use super::curve::{tame_symbol, CurveFunction, PrimeDivisor, P2, R2};
use crate::algebra::{Field, FieldElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ClaimRow {
    /// Which family of primes the row belongs to ("f", "p1", "q", ...).
    pub label: String,
    pub prime: PrimeDivisor,
    pub expected: R2,
    pub got: CurveFunction,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub a: R2,
    pub b: R2,
    pub rows: Vec<ClaimRow>,
}

impl ClaimReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
    /// True when some prime's irreducibility was not proven.
    pub fn assumed_irreducible(&self) -> bool {
        self.rows.iter().any(|r| !r.prime.certified())
    }
    pub fn json(&self) -> Vec<RowJson> {
        self.rows
            .iter()
            .map(|r| RowJson {
                label: r.label.clone(),
                prime: r.prime.to_string(),
                expected: r.expected.to_string(),
                got: r.got.rep.to_string(),
                matches: r.matches,
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct RowJson {
    pub label: String,
    pub prime: String,
    pub expected: String,
    pub got: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "xi = {{{}, {}}}", self.a, self.b)?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<3} {:<24} expected {:<28} got {:<28} {}",
                r.label,
                r.prime.to_string(),
                r.expected.to_string(),
                r.got.rep.to_string(),
                if r.matches { "ok" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

fn primes_of(p: &P2) -> Result<Vec<(PrimeDivisor, i64)>> {
    if p.total_deg() <= 0 {
        return Ok(vec![]);
    }
    Ok(p.factor()?
        .into_iter()
        .map(|t| (PrimeDivisor::Affine { poly: t.poly, certified: t.certified }, t.mult as i64))
        .collect())
}

fn at_origin(p: &P2) -> FieldElem {
    let z = p.proto().zero_like();
    p.eval(&z, &z)
}

fn check_odd(p: &P2) -> Result<()> {
    if p.proto().characteristic() == 2 {
        return Err(Error::PreconditionViolated("the boundary tables assume p ≠ 2".into()));
    }
    Ok(())
}

/// (π, f) vanish at the origin with invertible Jacobian there.
fn check_coordinates(pi: &P2, f: &P2) -> Result<()> {
    let z = pi.proto().zero_like();
    let det = pi.derivative_x().eval(&z, &z) * f.derivative_y().eval(&z, &z)
        - pi.derivative_y().eval(&z, &z) * f.derivative_x().eval(&z, &z);
    if !at_origin(pi).is_zero() || !at_origin(f).is_zero() || det.is_zero() {
        return Err(Error::PreconditionViolated(format!("({}, {}) is not a coordinate system at the origin", pi, f)));
    }
    Ok(())
}

fn check_unit(u: &P2) -> Result<()> {
    if at_origin(u).is_zero() {
        return Err(Error::PreconditionViolated(format!("{} is not a unit at the origin", u)));
    }
    Ok(())
}

/// Rows for the given primes, each with its expected value as a function of the multiplicity.
fn build(a: &R2, b: &R2, groups: Vec<(&str, Vec<(PrimeDivisor, i64)>, Box<dyn Fn(i64) -> Result<R2> + '_>)>) -> Result<ClaimReport> {
    let mut seen: Vec<PrimeDivisor> = vec![];
    for (_, ps, _) in &groups {
        for (p, _) in ps {
            if seen.contains(p) {
                return Err(Error::DegenerateConfiguration(format!("{} occurs in two prime families", p)));
            }
            seen.push(p.clone());
        }
    }
    let mut rows = vec![];
    for (label, ps, expect) in groups {
        for (p, k) in ps {
            let got = tame_symbol(a, b, &p)?;
            let expected = expect(k)?;
            let matches = got.same_as(&expected);
            rows.push(ClaimRow { label: label.to_string(), prime: p, expected, got, matches });
        }
    }
    Ok(ClaimReport { a: a.clone(), b: b.clone(), rows })
}

/// ξ = {1 + απ/f, (u1 f + π)/(u2 f + π)} at the primes of f, u1 f + π, u2 f + π and f + απ.
pub fn claim1_table(pi: &P2, f: &P2, u1: &P2, u2: &P2, alpha: &P2) -> Result<ClaimReport> {
    check_odd(pi)?;
    check_coordinates(pi, f)?;
    check_unit(u1)?;
    check_unit(u2)?;
    let r = |p: &P2| R2::from_poly(p.clone());
    let one = r(&P2::one(pi.proto()));
    let (p1, p2) = (&(u1 * f) + pi, &(u2 * f) + pi);
    let q = f + &(alpha * pi);
    let a = r(&q).div(&r(f))?;
    let b = r(&p1).div(&r(&p2))?;
    if alpha.is_zero() {
        let mut ps = primes_of(&p1)?;
        ps.extend(primes_of(&p2)?);
        return build(&a, &b, vec![("b", ps, Box::new(|_| Ok(one.clone())))]);
    }
    let e1 = one.clone() - r(u1) * r(alpha);
    let e2 = one.clone() - r(u2) * r(alpha);
    build(
        &a,
        &b,
        vec![
            ("f", primes_of(f)?, Box::new(|_| Ok(one.clone()))),
            ("p1", primes_of(&p1)?, Box::new(|k| e1.powi(k))),
            ("p2", primes_of(&p2)?, Box::new(|k| e2.powi(-k))),
            ("q", primes_of(&q)?, Box::new(|k| e2.div(&e1)?.powi(k))),
        ],
    )
}

/// ξ = {1 + α u² π_D² / f^{e−1}, f^e + π_D u} at the primes of f^e + π_D u,
/// f^{e−1} + α u² π_D² and f.
pub fn claim2_table(pi_d: &P2, f: &P2, u: &P2, alpha: &P2, e: u32) -> Result<ClaimReport> {
    check_odd(pi_d)?;
    check_coordinates(pi_d, f)?;
    check_unit(u)?;
    if e < 2 {
        return Err(Error::PreconditionViolated(format!("e = {} < 2", e)));
    }
    let r = |p: &P2| R2::from_poly(p.clone());
    let one = r(&P2::one(pi_d.proto()));
    let fe1 = f.pow(e as u64 - 1);
    let bpoly = &(f * &fe1) + &(pi_d * u);
    let qpoly = &fe1 + &(&(alpha * &(u * u)) * &(pi_d * pi_d));
    let a = r(&qpoly).div(&r(&fe1))?;
    let b = r(&bpoly);
    if alpha.is_zero() {
        // a = 1: the q-primes disappear and every entry, including the one at f, is 1
        return build(
            &a,
            &b,
            vec![
                ("p", primes_of(&bpoly)?, Box::new(|_| Ok(one.clone()))),
                ("f", primes_of(f)?, Box::new(|_| Ok(one.clone()))),
            ],
        );
    }
    let upi = r(&(u * pi_d));
    let ep = one.clone() + r(alpha) * r(f).powi(e as i64 + 1)?;
    let eq = upi.clone() * (one.clone() - r(alpha) * r(f) * upi.clone());
    build(
        &a,
        &b,
        vec![
            ("p", primes_of(&bpoly)?, Box::new(|k| ep.powi(k))),
            ("q", primes_of(&qpoly)?, Box::new(|k| eq.powi(-k))),
            ("f", primes_of(f)?, Box::new(|k| upi.powi((e as i64 - 1) * k))),
        ],
    )
}
