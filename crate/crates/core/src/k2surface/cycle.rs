//! Closed points of A^2, zero-cycles, and intersection cycles Z·(g).

use std::collections::BTreeMap;
use std::fmt;

use super::curve::P2;
use crate::algebra::{factor, Field, FieldElem, Poly, Poly2, Residue, ResidueField};
use crate::error::{Error, Result};

pub type L1 = Residue<FieldElem>;
/// Residue fields of closed points, as a tower F_q ⊂ F_q[x]/m ⊂ (F_q[x]/m)[y]/n.
pub type Pt = Residue<L1>;

/// A closed point of A^2: the minimal polynomial m of its x-coordinate and the
/// minimal polynomial n of its y-coordinate over F_q[x]/m.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedPoint {
    pub x_min: Poly<FieldElem>,
    pub y_min: Poly<L1>,
}

impl ClosedPoint {
    pub fn rational(a: &FieldElem, b: &FieldElem) -> Self {
        let m = Poly::new(a.zero_like(), vec![-a.clone(), a.one_like()]);
        let l = ResidueField::new(m.clone(), "a").unwrap();
        let n = Poly::new(l.zero(), vec![-l.embed(b), l.one()]);
        ClosedPoint { x_min: m, y_min: n }
    }
    pub fn degree(&self) -> usize {
        (self.x_min.deg() * self.y_min.deg()) as usize
    }
    /// The residue field with the images (θ, η) of x and y.
    pub fn field(&self) -> (ResidueField<L1>, Pt, Pt) {
        let l = ResidueField::new(self.x_min.clone(), "a").expect("x_min is irreducible");
        let n = self.y_min.map(&l.zero(), |c| l.elem(c.value()));
        let l2 = ResidueField::new(n, "b").expect("y_min is irreducible");
        let theta = l2.embed(&l.theta());
        (l2.clone(), theta, l2.theta())
    }
    /// Coordinates when the point is rational.
    pub fn coords(&self) -> Option<(FieldElem, FieldElem)> {
        if self.degree() != 1 {
            return None;
        }
        let a = -self.x_min.coeff(0);
        let b = (-self.y_min.coeff(0)).as_base()?;
        Some((a, b))
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coords() {
            Some((a, b)) => write!(f, "({}, {})", a, b),
            None => write!(f, "[{} = 0; {} = 0]", self.x_min, self.y_min.fmt_var("y")),
        }
    }
}

/// Finite Z-combination of closed points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroCycle(pub BTreeMap<ClosedPoint, i64>);

impl ZeroCycle {
    pub fn add_point(&mut self, p: ClosedPoint, k: i64) {
        let e = self.0.entry(p.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&p);
        }
    }
    pub fn add(&mut self, o: &ZeroCycle, k: i64) {
        for (p, &m) in &o.0 {
            self.add_point(p.clone(), k * m);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(p, m)| p.degree() as i64 * m).sum()
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, (p, &m)) in self.0.iter().enumerate() {
            let sign = if m < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if i > 0 || m < 0 {
                s.push(' ');
            }
            if m.abs() != 1 {
                s.push_str(&format!("{}*", m.abs()));
            }
            s.push_str(&format!("[{}]", p));
        }
        write!(f, "{}", s)
    }
}

/// Lift a polynomial over F_q to a point's residue field.
pub fn lift(f: &P2, l2: &ResidueField<L1>) -> Poly2<Pt> {
    let l = l2.zero().value().proto().field();
    f.map(&l2.zero(), |c| l2.embed(&l.embed(c)))
}

/// The intersection cycle Z·(g) on A^2 minus the zero sets of `avoid`.
/// Z and g must not share a component.
pub fn intersection_cycle(z: &P2, g: &P2, avoid: &[P2]) -> Result<ZeroCycle> {
    let mut out = ZeroCycle::default();
    if g.is_constant() {
        return Ok(out);
    }
    let common = || Error::CommonComponent(format!("({}) and ({})", z, g));
    let candidates = match (z.as_x_poly(), g.as_x_poly()) {
        (Some(a), Some(b)) => {
            if a.gcd(&b).deg() > 0 {
                return Err(common());
            }
            return Ok(out);
        }
        (Some(a), None) => factor(&a)?,
        (None, Some(b)) => factor(&b)?,
        (None, None) => {
            let r = z.resultant_y(g);
            if r.is_zero() {
                return Err(common());
            }
            if r.deg() <= 0 {
                return Ok(out);
            }
            factor(&r)?
        }
    };
    for (m, _) in candidates {
        let l = ResidueField::new(m.clone(), "a")?;
        let theta = l.theta();
        let zl = z.map(&l.zero(), |c| l.embed(c)).eval_x(&theta);
        let gl = g.map(&l.zero(), |c| l.embed(c)).eval_x(&theta);
        let h = match (zl.is_zero(), gl.is_zero()) {
            (true, true) => return Err(common()),
            (true, false) => gl,
            (false, true) => zl,
            (false, false) => zl.gcd(&gl),
        };
        if h.deg() < 1 {
            continue;
        }
        for (n, _) in factor(&h)? {
            let pt = ClosedPoint { x_min: m.clone(), y_min: n };
            let (l2, th, et) = pt.field();
            if avoid.iter().any(|c| lift(c, &l2).eval(&th, &et).is_zero()) {
                continue;
            }
            let k = intersection_multiplicity(&lift(z, &l2).translate(&th, &et), &lift(g, &l2).translate(&th, &et))?;
            out.add_point(pt, k as i64);
        }
    }
    Ok(out)
}

const FULTON_STEPS: usize = 100_000;

/// Intersection multiplicity at the origin, by Fulton's algorithm.
pub fn intersection_multiplicity<E: Field>(f: &Poly2<E>, g: &Poly2<E>) -> Result<u64> {
    let zero = f.proto().zero_like();
    let y = Poly2::y(&zero);
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc = 0u64;
    for _ in 0..FULTON_STEPS {
        if f.is_zero() || g.is_zero() {
            return Err(Error::CommonComponent("curves meet in a component".into()));
        }
        if !f.eval(&zero, &zero).is_zero() || !g.eval(&zero, &zero).is_zero() {
            return Ok(acc);
        }
        let (f0, g0) = (f.coeff_y(0), g.coeff_y(0));
        match (f0.is_zero(), g0.is_zero()) {
            (true, true) => return Err(Error::CommonComponent("both curves contain y = 0".into())),
            (true, false) => {
                acc += g0.low_degree().unwrap() as u64;
                f = f.div_exact(&y).unwrap();
            }
            (false, true) => {
                acc += f0.low_degree().unwrap() as u64;
                g = g.div_exact(&y).unwrap();
            }
            (false, false) => {
                if f0.deg() > g0.deg() {
                    std::mem::swap(&mut f, &mut g);
                }
                let (f0, g0) = (f.coeff_y(0), g.coeff_y(0));
                let shift = Poly::monomial(g0.lc(), (g0.deg() - f0.deg()) as usize);
                g = &g.scale(&f0.lc()) - &f.mul_x_poly(&shift);
            }
        }
    }
    Err(Error::BudgetExceeded("intersection multiplicity did not terminate".into()))
}
