//! Differential forms α·dt + β·du on K = E((t)), their residues and graded pieces.

use std::fmt;

use super::series::LaurentSeries;
use crate::algebra::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialForm<E: Field> {
    pub alpha: LaurentSeries<E>,
    pub beta: LaurentSeries<E>,
}

impl<E: Field> DifferentialForm<E> {
    pub fn new(alpha: LaurentSeries<E>, beta: LaurentSeries<E>) -> Self {
        let n = alpha.prec().min(beta.prec());
        DifferentialForm { alpha: alpha.truncate(n), beta: beta.truncate(n) }
    }
    pub fn zero(proto: &E, prec: i64) -> Self {
        let z = LaurentSeries::zero(proto, prec, "t");
        DifferentialForm { alpha: z.clone(), beta: z }
    }
    /// a·dt
    pub fn dt(a: LaurentSeries<E>) -> Self {
        let z = LaurentSeries::zero(a.proto(), a.prec(), a.var());
        Self::new(a, z)
    }
    pub fn prec(&self) -> i64 {
        self.alpha.prec()
    }
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.alpha + &o.alpha, &self.beta + &o.beta)
    }
    pub fn mul_series(&self, a: &LaurentSeries<E>) -> Self {
        Self::new(a * &self.alpha, a * &self.beta)
    }
    /// Lower bound for min(v(α), v(β)).
    pub fn valuation_bound(&self) -> i64 {
        self.alpha.valuation_bound().min(self.beta.valuation_bound())
    }
}

/// da = (∂a/∂t) dt + (Σ c_n' t^n) du.
pub fn d_form<E: Field>(a: &LaurentSeries<E>) -> DifferentialForm<E> {
    let alpha = a.derivative();
    let beta = if a.proto().is_perfect() {
        LaurentSeries::zero(a.proto(), a.prec(), a.var())
    } else {
        a.coeff_derivation()
    };
    DifferentialForm::new(alpha, beta)
}

/// Coefficient of t^-1 in the dt-component.
pub fn residue<E: Field>(w: &DifferentialForm<E>) -> Result<E> {
    w.alpha.try_coeff(-1)
}

/// A class in gr_m Ω¹ = m^{-m} Ω¹_O ⊗ E, given by its leading pair.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedForm<E: Field> {
    pub level: i64,
    pub c_dt: E,
    pub c_du: E,
}

impl<E: Field> GradedForm<E> {
    pub fn is_zero(&self) -> bool {
        self.c_dt.is_zero() && self.c_du.is_zero()
    }
    /// The representing form c_dt·t^{-m} dt + c_du·t^{-m} du.
    pub fn representative(&self) -> DifferentialForm<E> {
        let a = LaurentSeries::monomial(self.c_dt.clone(), -self.level, super::series::EXACT);
        let b = LaurentSeries::monomial(self.c_du.clone(), -self.level, super::series::EXACT);
        DifferentialForm::new(a, b)
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.level, o.level);
        GradedForm { level: self.level, c_dt: self.c_dt.clone() + o.c_dt.clone(), c_du: self.c_du.clone() + o.c_du.clone() }
    }
}

impl<E: Field> fmt::Display for GradedForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}: ({}, {})", self.level, self.c_dt, self.c_du)
    }
}

pub fn form_grade<E: Field>(w: &DifferentialForm<E>, m: i64) -> Result<GradedForm<E>> {
    if m < 1 {
        return Err(Error::PreconditionViolated(format!("grading level {} < 1", m)));
    }
    for comp in [&w.alpha, &w.beta] {
        match comp.valuation() {
            Some(v) if v < -m => return Err(Error::NotInFiltration(m)),
            None if comp.prec() <= -m => {
                return Err(Error::InsufficientPrecision(format!("form known only modulo t^{}", comp.prec())))
            }
            _ => {}
        }
    }
    Ok(GradedForm { level: m, c_dt: w.alpha.try_coeff(-m)?, c_du: w.beta.try_coeff(-m)? })
}

impl<E: Field> fmt::Display for DifferentialForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dt + ({})*du", self.alpha, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElem, Fq, RatFunc};
    use crate::localfield::series::EXACT;

    type E = RatFunc<FieldElem>;

    fn u(f: Fq) -> E {
        RatFunc::var(&f.zero(), "u")
    }

    #[test]
    fn d_of_u_over_t4() {
        let f = Fq::new(3, 1).unwrap();
        let u = u(f);
        let a = LaurentSeries::monomial(u.clone(), -4, 4);
        let w = d_form(&a);
        assert_eq!(w.alpha.leading(), Some((-5, u.from_int_like(2) * u.clone())));
        assert_eq!(w.beta.leading(), Some((-4, u.one_like())));
        let g = form_grade(&w, 5).unwrap();
        assert_eq!(g.c_dt, u.from_int_like(2) * u.clone());
        assert!(g.c_du.is_zero());
    }

    #[test]
    fn d_of_t_to_p_vanishes() {
        let f = Fq::new(3, 1).unwrap();
        let a = LaurentSeries::monomial(f.one(), 3, 10);
        assert!(d_form(&a).is_zero());
    }

    #[test]
    fn d_of_u_squared_char2() {
        let f = Fq::new(2, 1).unwrap();
        let u = u(f);
        let a = LaurentSeries::constant(u.clone() * u.clone(), 10);
        assert!(d_form(&a).beta.is_zero());
    }

    #[test]
    fn residues() {
        let f5 = Fq::new(5, 1).unwrap();
        let w = DifferentialForm::dt(LaurentSeries::from_terms(
            &f5.zero(),
            &[(-2, f5.one()), (-1, f5.from_i64(3)), (0, f5.one())],
            EXACT,
            "t",
        ));
        assert_eq!(residue(&w).unwrap(), f5.from_i64(3));
        let f7 = Fq::new(7, 1).unwrap();
        let a = LaurentSeries::from_terms(&f7.zero(), &[(-3, f7.one()), (2, f7.one())], 20, "t");
        assert!(residue(&d_form(&a)).unwrap().is_zero());
    }

    #[test]
    fn grading_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let w = DifferentialForm::dt(LaurentSeries::monomial(f3.one(), -2, EXACT));
        let g = form_grade(&w, 3).unwrap();
        assert!(g.is_zero());
        let u = u(f3);
        let a = LaurentSeries::monomial(u.one_like(), -3, EXACT);
        let w = DifferentialForm::new(a.clone(), a.scale(&u));
        let g = form_grade(&w, 3).unwrap();
        assert_eq!((g.c_dt, g.c_du), (u.one_like(), u));
        assert_eq!(form_grade(&w, 2), Err(Error::NotInFiltration(2)));
    }
}
