use std::fmt;

use super::universal::{universal, WittOp};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::localfield::{LaurentSeries, EXACT};

pub const MAX_LENGTH: usize = 3;

/// A Witt vector (a_{s-1}, ..., a_1, a_0) over K = E((t)).
///
/// Stored in display order, which is also the standard Witt order: `comps[k]` is
/// the k-th Witt coordinate x_k, and a_i = comps[s-1-i]. The ghost weight of a_i
/// is p^i, so a_{s-1} is the Teichmüller slot.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<E: Field> {
    p: u64,
    comps: Vec<LaurentSeries<E>>,
}

pub fn ord_p(p: u64, mut m: u64) -> usize {
    if m == 0 {
        return usize::MAX;
    }
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    k
}

impl<E: Field> WittVector<E> {
    pub fn new(comps: Vec<LaurentSeries<E>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::PreconditionViolated("Witt vector of length 0".into()));
        }
        if comps.len() > MAX_LENGTH {
            return Err(Error::LengthOverflow(comps.len()));
        }
        let p = comps[0].proto().characteristic();
        Ok(WittVector { p, comps })
    }
    /// Build from (a_0, a_1, ...) in ascending a-index.
    pub fn from_a(mut a: Vec<LaurentSeries<E>>) -> Result<Self> {
        a.reverse();
        Self::new(a)
    }
    pub fn zero(proto: &E, s: usize) -> Self {
        WittVector { p: proto.characteristic(), comps: vec![LaurentSeries::exact_zero(proto); s] }
    }
    /// The vector whose only nonzero component is a_i = x.
    pub fn single(s: usize, i: usize, x: LaurentSeries<E>) -> Self {
        let mut w = Self::zero(x.proto(), s);
        w.comps[s - 1 - i] = x;
        w
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn len(&self) -> usize {
        self.comps.len()
    }
    pub fn comps(&self) -> &[LaurentSeries<E>] {
        &self.comps
    }
    /// a_i, the slot of filtration weight p^i; comps() holds a_{s-1} first.
    pub fn a(&self, i: usize) -> &LaurentSeries<E> {
        &self.comps[self.len() - 1 - i]
    }
    pub fn proto(&self) -> &E {
        self.comps[0].proto()
    }
    pub fn prec(&self) -> i64 {
        self.comps.iter().map(|c| c.prec()).min().unwrap_or(EXACT)
    }
    pub fn truncate(&self, n: i64) -> Self {
        WittVector { p: self.p, comps: self.comps.iter().map(|c| c.truncate(n)).collect() }
    }
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn op(&self, o: &Self, op: WittOp) -> Result<Self> {
        if self.len() != o.len() {
            return Err(Error::LengthMismatch(self.len(), o.len()));
        }
        let u = universal(self.p, self.len());
        Ok(WittVector { p: self.p, comps: u.apply(op, &self.comps, &o.comps) })
    }
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.op(o, WittOp::Sum)
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.op(o, WittOp::Diff)
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.op(o, WittOp::Prod)
    }
    pub fn neg(&self) -> Self {
        Self::zero(self.proto(), self.len()).sub(self).expect("same length")
    }
    /// n·w by double-and-add.
    pub fn mul_int(&self, n: u64) -> Self {
        let mut acc = Self::zero(self.proto(), self.len());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base).expect("same length");
            }
            k >>= 1;
            if k > 0 {
                base = base.add(&base).expect("same length");
            }
        }
        acc
    }
    pub fn frobenius(&self) -> Self {
        WittVector { p: self.p, comps: self.comps.iter().map(|c| Field::pow(c, self.p)).collect() }
    }
    pub fn verschiebung(&self) -> Result<Self> {
        if self.len() >= MAX_LENGTH {
            return Err(Error::LengthOverflow(self.len() + 1));
        }
        let mut comps = vec![LaurentSeries::exact_zero(self.proto())];
        comps.extend(self.comps.iter().cloned());
        Ok(WittVector { p: self.p, comps })
    }
    /// (1 - F)(self)
    pub fn one_minus_frobenius(&self) -> Self {
        self.sub(&self.frobenius()).expect("same length")
    }

    /// Log-weights -p^i v(a_i) by a-index; None for integral components.
    pub fn log_weights(&self) -> Result<Vec<Option<i64>>> {
        (0..self.len())
            .map(|i| {
                let a = self.a(i);
                if a.is_integral()? {
                    Ok(None)
                } else {
                    Ok(Some(-(self.p.pow(i as u32) as i64) * a.valuation().unwrap()))
                }
            })
            .collect()
    }
    pub fn is_integral(&self) -> Result<bool> {
        Ok(self.log_weights()?.iter().all(|w| w.is_none()))
    }
    /// max_i(-p^i v(a_i)), or 0 when integral.
    pub fn m_log(&self) -> Result<i64> {
        Ok(self.log_weights()?.into_iter().flatten().max().unwrap_or(0).max(0))
    }

    /// Per-slot check p^i v(a_i) ≥ -bound(i).
    fn in_box(&self, bound: impl Fn(usize) -> i64) -> Result<bool> {
        for i in 0..self.len() {
            let a = self.a(i);
            let pi = self.p.pow(i as u32) as i64;
            let b = bound(i);
            match a.valuation() {
                Some(v) => {
                    if pi * v < -b {
                        return Ok(false);
                    }
                }
                None => {
                    // zero modulo t^prec: decided only if every possible leading term clears the bound
                    if a.prec() < EXACT && pi.saturating_mul(a.prec()) < -b {
                        return Err(Error::InsufficientPrecision(format!(
                            "a_{} is zero only modulo {}^{}",
                            i,
                            a.var(),
                            a.prec()
                        )));
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn in_fillog(&self, m: i64) -> Result<bool> {
        if m < 0 {
            return Err(Error::PreconditionViolated(format!("filtration level {} < 0", m)));
        }
        self.in_box(|_| m)
    }

    pub fn in_fil(&self, m: i64) -> Result<bool> {
        if m < 1 {
            return Err(Error::PreconditionViolated(format!("filtration level {} < 1", m)));
        }
        let sp = self.len().min(ord_p(self.p, m as u64));
        self.in_box(|i| if i >= sp { m - 1 } else { m })
    }

    /// Representative modulo (1 - F) with no reducible leading terms.
    pub fn best_form(&self) -> Result<Self> {
        let s = self.len();
        let cap = 10 * (self.m_log()? as usize + s);
        let mut w = self.clone();
        for _ in 0..=cap {
            // offending slot with the largest log-weight; ties go to the higher slot
            let mut pick: Option<(i64, usize, i64, E)> = None;
            for i in 0..s {
                let a = w.a(i);
                let Some((n, c)) = a.leading() else { continue };
                if n >= 0 || n % self.p as i64 != 0 {
                    continue;
                }
                let Some(b) = c.pth_root() else { continue };
                let weight = -(self.p.pow(i as u32) as i64) * n;
                if pick.as_ref().map_or(true, |(wt, _, _, _)| weight >= *wt) {
                    pick = Some((weight, i, n / self.p as i64, b));
                }
            }
            let Some((_, i, e, b)) = pick else { return Ok(w) };
            let x = LaurentSeries::monomial(b, e, EXACT).with_var(w.a(i).var());
            let step = Self::single(s, i, x).one_minus_frobenius();
            w = w.add(&step)?;
        }
        Err(Error::NonTermination(cap))
    }

    /// Minimal m with the class in fil_m, 0 if unramified.
    pub fn artin_conductor(&self) -> Result<i64> {
        let bf = self.best_form()?;
        box_conductor(&bf)
    }
}

/// Conductor read off the box of a fixed representative, without reduction.
pub fn box_conductor<E: Field>(w: &WittVector<E>) -> Result<i64> {
    if w.is_integral()? {
        return Ok(0);
    }
    let ml = w.m_log()?;
    for m in ml.max(1)..=ml + 1 {
        if w.in_fil(m)? {
            return Ok(m);
        }
    }
    unreachable!("fil^log_m is contained in fil_(m+1)")
}

impl<E: Field> fmt::Display for WittVector<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}
