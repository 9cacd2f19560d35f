//! Rational functions in x and y, reduced, with normalized denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::FiniteField;
use super::poly2::{Poly2, POLY2_DEGREE_CAP};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc2<F: FiniteField> {
    num: Poly2<F>,
    den: Poly2<F>,
}

impl<F: FiniteField> RatFunc2<F> {
    /// Reduced num/den; fails on a zero denominator or degrees above the cap.
    pub fn new(num: Poly2<F>, den: Poly2<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.total_deg().max(den.total_deg()) > POLY2_DEGREE_CAP {
            return Err(Error::BudgetExceeded(format!("bivariate degree above cap {}", POLY2_DEGREE_CAP)));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly2<F>, den: Poly2<F>) -> Self {
        if num.is_zero() {
            return RatFunc2 { den: Poly2::one(num.proto()), num };
        }
        let g = num.gcd_uncapped(&den);
        let (n, d) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        let l = d.lead_coeff().inv().unwrap();
        RatFunc2 { num: n.scale(&l), den: d.scale(&l) }
    }

    pub fn from_poly(num: Poly2<F>) -> Self {
        let den = Poly2::one(num.proto());
        RatFunc2 { num, den }
    }
    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly2::constant(c))
    }
    pub fn x(proto: &F) -> Self {
        Self::from_poly(Poly2::x(proto))
    }
    pub fn y(proto: &F) -> Self {
        Self::from_poly(Poly2::y(proto))
    }
    pub fn num(&self) -> &Poly2<F> {
        &self.num
    }
    pub fn den(&self) -> &Poly2<F> {
        &self.den
    }
    pub fn proto(&self) -> &F {
        self.num.proto()
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    pub fn one_like(&self) -> Self {
        Self::constant(self.proto().one_like())
    }
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }
    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }
    pub fn powi(&self, e: i64) -> Result<Self> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        Ok(RatFunc2 { num: b.num.pow(e.unsigned_abs()), den: b.den.pow(e.unsigned_abs()) })
    }
    pub fn derivative_x(&self) -> Self {
        let n = &(&self.num.derivative_x() * &self.den) - &(&self.num * &self.den.derivative_x());
        Self::reduce(n, &self.den * &self.den)
    }
    pub fn derivative_y(&self) -> Self {
        let n = &(&self.num.derivative_y() * &self.den) - &(&self.num * &self.den.derivative_y());
        Self::reduce(n, &self.den * &self.den)
    }
    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, x: &F, y: &F) -> Option<F> {
        let d = self.den.eval(x, y);
        d.inv().map(|i| self.num.eval(x, y) * i)
    }
}

impl<F: FiniteField> Add for RatFunc2<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::reduce(&self.num + &o.num, self.den);
        }
        Self::reduce(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}
impl<F: FiniteField> Sub for RatFunc2<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl<F: FiniteField> Mul for RatFunc2<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}
impl<F: FiniteField> Neg for RatFunc2<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc2 { num: -&self.num, den: self.den }
    }
}

impl<F: FiniteField> fmt::Display for RatFunc2<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly2<F>| if p.is_compound() { format!("({})", p) } else { p.to_string() };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
