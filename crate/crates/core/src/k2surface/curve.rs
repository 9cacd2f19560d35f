//! Prime divisors of P^2, valuations along them, and functions on them.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{FieldElem, Poly2, RatFunc2};
use crate::error::{Error, Result};

pub type P2 = Poly2<FieldElem>;
pub type R2 = RatFunc2<FieldElem>;

/// An irreducible curve on P^2: an affine prime or the line at infinity.
#[derive(Clone, Debug)]
pub enum PrimeDivisor {
    Affine {
        poly: P2,
        /// False when irreducibility rests on a bounded factor search.
        certified: bool,
    },
    LineAtInfinity,
}

impl PrimeDivisor {
    /// The prime (f); f must be irreducible.
    pub fn affine(f: &P2) -> Result<Self> {
        let fac = f.factor()?;
        match fac.as_slice() {
            [one] if one.mult == 1 => Ok(PrimeDivisor::Affine { poly: one.poly.clone(), certified: one.certified }),
            _ => Err(Error::PreconditionViolated(format!("{} is not irreducible", f))),
        }
    }
    pub fn poly(&self) -> Option<&P2> {
        match self {
            PrimeDivisor::Affine { poly, .. } => Some(poly),
            PrimeDivisor::LineAtInfinity => None,
        }
    }
    pub fn certified(&self) -> bool {
        match self {
            PrimeDivisor::Affine { certified, .. } => *certified,
            PrimeDivisor::LineAtInfinity => true,
        }
    }
}

impl PartialEq for PrimeDivisor {
    fn eq(&self, o: &Self) -> bool {
        self.poly() == o.poly()
    }
}
impl Eq for PrimeDivisor {}
impl PartialOrd for PrimeDivisor {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
/// Affine primes in polynomial order, the line at infinity last.
impl Ord for PrimeDivisor {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.poly(), o.poly()) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        }
    }
}

impl fmt::Display for PrimeDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeDivisor::Affine { poly, certified } => {
                write!(f, "({})", poly)?;
                if !certified {
                    write!(f, "[assumed irreducible]")?;
                }
                Ok(())
            }
            PrimeDivisor::LineAtInfinity => write!(f, "inf"),
        }
    }
}

/// Multiplicity of Z in div(a).
pub fn ord_along(z: &PrimeDivisor, a: &R2) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    Ok(match z {
        PrimeDivisor::Affine { poly, .. } => a.num().valuation_at(poly) as i64 - a.den().valuation_at(poly) as i64,
        PrimeDivisor::LineAtInfinity => a.den().total_deg() - a.num().total_deg(),
    })
}

/// div(a) on P^2, affine primes first.
pub fn divisor_of(a: &R2) -> Result<Vec<(PrimeDivisor, i64)>> {
    if a.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut out = vec![];
    for (part, sign) in [(a.num(), 1), (a.den(), -1)] {
        if part.total_deg() > 0 {
            for t in part.factor()? {
                out.push((PrimeDivisor::Affine { poly: t.poly, certified: t.certified }, sign * t.mult as i64));
            }
        }
    }
    out.sort();
    let inf = a.den().total_deg() - a.num().total_deg();
    if inf != 0 {
        out.push((PrimeDivisor::LineAtInfinity, inf));
    }
    Ok(out)
}

/// An element of k(Z)^×, stored as a representative that is a unit along Z.
#[derive(Clone, Debug)]
pub struct CurveFunction {
    pub prime: PrimeDivisor,
    pub rep: R2,
}

impl CurveFunction {
    /// Restrict a to Z, reducing modulo the prime when it is monic in y or in x.
    pub fn restrict(prime: &PrimeDivisor, a: &R2) -> Result<Self> {
        if ord_along(prime, a)? != 0 {
            return Err(Error::RestrictionUndefined(format!("{} has order {} along {}", a, ord_along(prime, a)?, prime)));
        }
        let rep = match prime {
            PrimeDivisor::Affine { poly, .. } => reduce_mod(a, poly)?,
            PrimeDivisor::LineAtInfinity => a.clone(),
        };
        Ok(CurveFunction { prime: prime.clone(), rep })
    }

    /// Equality in k(Z).
    pub fn same_as(&self, other: &R2) -> bool {
        let (n1, d1, n2, d2) = (self.rep.num(), self.rep.den(), other.num(), other.den());
        match &self.prime {
            PrimeDivisor::Affine { poly, .. } => poly.divides(&(&(n1 * d2) - &(n2 * d1))),
            PrimeDivisor::LineAtInfinity => {
                (n2.total_deg() == d2.total_deg())
                    && (&n1.top_form() * &d2.top_form()) == (&n2.top_form() * &d1.top_form())
            }
        }
    }
    pub fn is_one(&self) -> bool {
        self.same_as(&self.rep.one_like())
    }
}

impl PartialEq for CurveFunction {
    fn eq(&self, o: &Self) -> bool {
        self.prime == o.prime && self.same_as(&o.rep)
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.rep, self.prime)
    }
}

fn reduce_mod(a: &R2, z: &P2) -> Result<R2> {
    let lc_y = z.lc_y();
    if lc_y.is_constant() && z.deg_y() >= 1 {
        return R2::new(a.num().rem_y(z), a.den().rem_y(z));
    }
    let zs = z.swap();
    if zs.lc_y().is_constant() && zs.deg_y() >= 1 {
        let r = R2::new(a.num().swap().rem_y(&zs).swap(), a.den().swap().rem_y(&zs).swap())?;
        return Ok(r);
    }
    Ok(a.clone())
}

/// The tame symbol (−1)^{vw} a^w / b^v restricted to Z.
pub fn tame_symbol(a: &R2, b: &R2, z: &PrimeDivisor) -> Result<CurveFunction> {
    let v = ord_along(z, a)?;
    let w = ord_along(z, b)?;
    // the powers of Z cancel in a^w b^{-v}; strip them first to keep degrees small
    let (a, b) = match z.poly() {
        Some(p) => (unit_part(p, a)?, unit_part(p, b)?),
        None => (a.clone(), b.clone()),
    };
    let deg = |r: &R2| r.num().total_deg().max(r.den().total_deg());
    if w.abs() * deg(&a) + v.abs() * deg(&b) > crate::algebra::POLY2_DEGREE_CAP {
        return Err(Error::BudgetExceeded(format!("tame symbol of degree above {}", crate::algebra::POLY2_DEGREE_CAP)));
    }
    let mut rep = a.powi(w)? * b.powi(-v)?;
    if (v * w) % 2 != 0 {
        rep = -rep;
    }
    CurveFunction::restrict(z, &rep)
}

/// a / Z^{ord_Z(a)}: a unit along the affine prime Z.
pub fn unit_part(z: &P2, a: &R2) -> Result<R2> {
    let v = a.num().valuation_at(z) as i64 - a.den().valuation_at(z) as i64;
    let zp = R2::from_poly(z.clone()).powi(v)?;
    a.div(&zp)
}

