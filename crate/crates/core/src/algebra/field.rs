use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

/// A field (or a truncated model of one) whose elements know their own context.
///
/// There is no separate context object: every element can produce the zero,
/// the one and integer constants of its own field, so containers only need to
/// keep a prototype element around.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn characteristic(&self) -> u64;

    /// Some r with r^p = self, if one exists.
    fn pth_root(&self) -> Option<Self>;

    /// The distinguished derivation of the field (d/du for F_q(u), zero for perfect fields).
    fn derivation(&self) -> Self;

    fn is_perfect(&self) -> bool;

    /// True when the rendering needs parentheses inside a product.
    fn is_compound(&self) -> bool {
        false
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    fn powi(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}

/// Finite fields: enumerable, with a canonical total order.
pub trait FiniteField: Field + Eq + Ord + Hash {
    /// Degree over the prime field.
    fn abs_degree(&self) -> u32;

    /// Number of elements; panics if it does not fit in a u64.
    fn order(&self) -> u64 {
        let p = self.characteristic();
        p.checked_pow(self.abs_degree()).expect("field order overflows u64")
    }

    /// Canonical enumeration index in 0..order.
    fn index(&self) -> u64;

    fn element_at(&self, idx: u64) -> Self;

    fn frobenius(&self) -> Self {
        self.pow(self.characteristic())
    }

    /// The value in 0..p if the element lies in the prime field.
    fn prime_value(&self) -> Option<u64>;

    /// Absolute trace down to the prime field.
    fn abs_trace(&self) -> u64 {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.abs_degree() {
            cur = cur.frobenius();
            acc = acc + cur.clone();
        }
        acc.prime_value().expect("trace lies in the prime field")
    }

    fn elements(&self) -> Vec<Self> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }
}

/// Frobenius inverse for a finite field of degree n over F_p: x^(p^(n-1)).
pub fn finite_pth_root<F: FiniteField>(x: &F) -> F {
    let mut r = x.clone();
    for _ in 1..x.abs_degree() {
        r = r.frobenius();
    }
    r
}
