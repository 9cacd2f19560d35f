//! Rational functions in one variable, kept reduced with monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
    var: &'static str,
}

impl<F: Field> PartialEq for RatFunc<F> {
    fn eq(&self, o: &Self) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>, var: &'static str) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { den: Poly::one(num.proto()), num, var });
        }
        let g = num.gcd(&den);
        let (n, d) = (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
        let l = d.lc().inv().unwrap();
        Ok(RatFunc { num: n.scale(&l), den: d.scale(&l), var })
    }
    pub fn from_poly(num: Poly<F>, var: &'static str) -> Self {
        let den = Poly::one(num.proto());
        RatFunc { num, den, var }
    }
    pub fn constant(c: F, var: &'static str) -> Self {
        Self::from_poly(Poly::constant(c), var)
    }
    pub fn var(proto: &F, var: &'static str) -> Self {
        Self::from_poly(Poly::x(proto), var)
    }
    pub fn num(&self) -> &Poly<F> {
        &self.num
    }
    pub fn den(&self) -> &Poly<F> {
        &self.den
    }
    pub fn var_name(&self) -> &'static str {
        self.var
    }
    pub fn base_proto(&self) -> &F {
        self.num.proto()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    /// deg num - deg den (the negative of the valuation at infinity).
    pub fn degree(&self) -> i64 {
        self.num.deg() - self.den.deg()
    }
    /// max(deg num, deg den)
    pub fn height(&self) -> i64 {
        self.num.deg().max(self.den.deg())
    }
    pub fn derivative(&self) -> Self {
        // (n'd - nd') / d²
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den, self.var).unwrap()
    }
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) * d.inv().unwrap())
        }
    }
    fn combine(&self, num: Poly<F>, den: Poly<F>) -> Self {
        RatFunc::new(num, den, self.var).unwrap()
    }
}

impl<F: Field> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return self.combine(&self.num + &o.num, self.den.clone());
        }
        self.combine(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}
impl<F: Field> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}
impl<F: Field> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.combine(&self.num * &o.num, &self.den * &o.den)
    }
}
impl<F: Field> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -&self.num, den: self.den, var: self.var }
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero_like(&self) -> Self {
        RatFunc::from_poly(Poly::zero(self.num.proto()), self.var)
    }
    fn one_like(&self) -> Self {
        RatFunc::from_poly(Poly::one(self.num.proto()), self.var)
    }
    fn from_int_like(&self, n: i64) -> Self {
        RatFunc::constant(self.num.proto().from_int_like(n), self.var)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.combine(self.den.clone(), self.num.clone()))
        }
    }
    fn characteristic(&self) -> u64 {
        self.num.proto().characteristic()
    }
    fn pth_root(&self) -> Option<Self> {
        // reduced with monic denominator: a p-th power iff both parts are
        Some(RatFunc { num: self.num.pth_root()?, den: self.den.pth_root()?, var: self.var })
    }
    fn derivation(&self) -> Self {
        self.derivative()
    }
    fn is_perfect(&self) -> bool {
        false
    }
    fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || self.num.coeffs().iter().any(|c| c.is_compound())
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly<F>| {
            let s = p.fmt_var(self.var);
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num.fmt_var(self.var))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gf::{FieldElem, Fq};

    fn u(f: Fq) -> RatFunc<FieldElem> {
        RatFunc::var(&f.zero(), "u")
    }

    #[test]
    fn pth_root_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let u = u(f3);
        assert_eq!(u.pow(3).pth_root(), Some(u.clone()));
        assert_eq!(u.pth_root(), None);
    }

    #[test]
    fn derivative_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let u = u(f3);
        assert!(u.pow(3).derivative().is_zero());
        let r = (u.clone() + u.one_like()).inv().unwrap();
        let expect = RatFunc::new(
            Poly::from_ints(&f3.zero(), &[2]),
            Poly::from_ints(&f3.zero(), &[1, 2, 1]),
            "u",
        )
        .unwrap();
        assert_eq!(r.derivative(), expect);
        assert_eq!(expect.to_string(), "2/(u^2 + 2*u + 1)");
    }
}
