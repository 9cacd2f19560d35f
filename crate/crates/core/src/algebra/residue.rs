//! Finite extensions F[z]/(m) of a finite field, for residue fields of places and points.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::factor::is_irreducible;
use super::field::{finite_pth_root, Field, FiniteField};
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct ResidueCtx<F: FiniteField> {
    modulus: Poly<F>,
    var: &'static str,
}

#[derive(Clone)]
pub struct Residue<F: FiniteField> {
    ctx: Arc<ResidueCtx<F>>,
    val: Poly<F>,
}

/// Shared handle to a residue field, used to mint elements.
#[derive(Clone, Debug)]
pub struct ResidueField<F: FiniteField>(Arc<ResidueCtx<F>>);

impl<F: FiniteField> ResidueField<F> {
    /// F[z]/(m) for a monic irreducible m.
    pub fn new(modulus: Poly<F>, var: &'static str) -> Result<Self> {
        if !is_irreducible(&modulus) {
            return Err(Error::PreconditionViolated(format!("modulus {} is not irreducible", modulus)));
        }
        Ok(ResidueField(Arc::new(ResidueCtx { modulus: modulus.monic(), var })))
    }
    /// The base field itself, as a degree-1 extension.
    pub fn trivial(proto: &F) -> Self {
        ResidueField(Arc::new(ResidueCtx { modulus: Poly::x(proto), var: "z" }))
    }
    pub fn modulus(&self) -> &Poly<F> {
        &self.0.modulus
    }
    pub fn degree(&self) -> usize {
        self.0.modulus.deg() as usize
    }
    pub fn elem(&self, p: &Poly<F>) -> Residue<F> {
        Residue { ctx: self.0.clone(), val: p.rem(&self.0.modulus) }
    }
    pub fn embed(&self, c: &F) -> Residue<F> {
        self.elem(&Poly::constant(c.clone()))
    }
    /// The class of the variable.
    pub fn theta(&self) -> Residue<F> {
        self.elem(&Poly::x(self.0.modulus.proto()))
    }
    pub fn zero(&self) -> Residue<F> {
        self.elem(&Poly::zero(self.0.modulus.proto()))
    }
    pub fn one(&self) -> Residue<F> {
        self.elem(&Poly::one(self.0.modulus.proto()))
    }
}

impl<F: FiniteField> Residue<F> {
    pub fn value(&self) -> &Poly<F> {
        &self.val
    }
    pub fn field(&self) -> ResidueField<F> {
        ResidueField(self.ctx.clone())
    }
    fn with(&self, val: Poly<F>) -> Self {
        Residue { ctx: self.ctx.clone(), val }
    }
    fn base_proto(&self) -> &F {
        self.ctx.modulus.proto()
    }
    /// The element as a base-field constant, if it is one.
    pub fn as_base(&self) -> Option<F> {
        if self.val.is_constant() {
            Some(self.val.coeff(0))
        } else {
            None
        }
    }
}

impl<F: FiniteField> PartialEq for Residue<F> {
    fn eq(&self, o: &Self) -> bool {
        self.val == o.val
    }
}
impl<F: FiniteField> Eq for Residue<F> {}
impl<F: FiniteField> Hash for Residue<F> {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.val.hash(h)
    }
}
impl<F: FiniteField> PartialOrd for Residue<F> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<F: FiniteField> Ord for Residue<F> {
    fn cmp(&self, o: &Self) -> Ordering {
        self.index_key().cmp(&o.index_key())
    }
}

impl<F: FiniteField> Residue<F> {
    fn index_key(&self) -> Vec<F> {
        let d = self.ctx.modulus.deg() as usize;
        (0..d).rev().map(|i| self.val.coeff(i)).collect()
    }
}

impl<F: FiniteField> Add for Residue<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let v = &self.val + &o.val;
        self.with(v)
    }
}
impl<F: FiniteField> Sub for Residue<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let v = &self.val - &o.val;
        self.with(v)
    }
}
impl<F: FiniteField> Mul for Residue<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let v = self.val.mulmod(&o.val, &self.ctx.modulus);
        self.with(v)
    }
}
impl<F: FiniteField> Neg for Residue<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let v = -&self.val;
        self.with(v)
    }
}

impl<F: FiniteField> Field for Residue<F> {
    fn zero_like(&self) -> Self {
        self.with(Poly::zero(self.base_proto()))
    }
    fn one_like(&self) -> Self {
        self.with(Poly::one(self.base_proto()))
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.with(Poly::constant(self.base_proto().from_int_like(n)))
    }
    fn is_zero(&self) -> bool {
        self.val.is_zero()
    }
    fn is_one(&self) -> bool {
        self.val.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.val.is_zero() {
            return None;
        }
        self.val.inv_mod(&self.ctx.modulus).map(|v| self.with(v))
    }
    fn characteristic(&self) -> u64 {
        self.base_proto().characteristic()
    }
    fn pth_root(&self) -> Option<Self> {
        Some(finite_pth_root(self))
    }
    fn derivation(&self) -> Self {
        self.zero_like()
    }
    fn is_perfect(&self) -> bool {
        true
    }
    fn is_compound(&self) -> bool {
        self.val.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
            || self.val.coeffs().iter().any(|c| c.is_compound())
    }
}

impl<F: FiniteField> FiniteField for Residue<F> {
    fn abs_degree(&self) -> u32 {
        self.base_proto().abs_degree() * self.ctx.modulus.deg() as u32
    }
    fn index(&self) -> u64 {
        let q = self.base_proto().order();
        self.index_key().iter().fold(0u64, |acc, c| acc * q + c.index())
    }
    fn element_at(&self, mut idx: u64) -> Self {
        let q = self.base_proto().order();
        let d = self.ctx.modulus.deg() as usize;
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(self.base_proto().element_at(idx % q));
            idx /= q;
        }
        self.with(Poly::new(self.base_proto().zero_like(), v))
    }
    fn prime_value(&self) -> Option<u64> {
        if self.val.is_constant() {
            self.val.coeff(0).prime_value()
        } else {
            None
        }
    }
}

impl<F: FiniteField> fmt::Debug for Residue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<F: FiniteField> fmt::Display for Residue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.val.fmt_var(self.ctx.var))
    }
}
