//! Brute-force conductor over all representatives w + (1-F)v with bounded v.

use std::collections::HashSet;

use super::vector::{ord_p, WittVector};
use crate::algebra::FiniteField;
use crate::error::{Error, Result};
use crate::localfield::{LaurentSeries, EXACT};

pub const MAX_ORACLE_LENGTH: usize = 2;
pub const MAX_ORACLE_SPACE: usize = 4;
pub const MAX_ORACLE_BUDGET: i64 = 6;

/// Box conductor from a-indexed valuations (None = integral).
fn conductor_from_vals(p: u64, vals: &[Option<i64>]) -> i64 {
    let weights: Vec<Option<i64>> =
        vals.iter().enumerate().map(|(i, v)| v.filter(|&v| v < 0).map(|v| -(p.pow(i as u32) as i64) * v)).collect();
    let Some(ml) = weights.iter().flatten().copied().max() else { return 0 };
    for m in ml.max(1)..=ml + 1 {
        let sp = vals.len().min(ord_p(p, m as u64));
        let ok = weights.iter().enumerate().all(|(i, w)| match w {
            None => true,
            Some(w) => *w <= if i >= sp { m - 1 } else { m },
        });
        if ok {
            return m;
        }
    }
    unreachable!()
}

/// All Σ_{j=0}^{budget} c_j t^{-j} with c_j drawn from `space`.
fn laurent_polys<E: FiniteField>(proto: &E, space: &[E], budget: i64, var: &'static str) -> Vec<LaurentSeries<E>> {
    let n = (budget + 1) as u32;
    let total = space.len().pow(n);
    (0..total)
        .map(|mut idx| {
            let mut c = Vec::with_capacity(n as usize);
            for _ in 0..n {
                c.push(space[idx % space.len()].clone());
                idx /= space.len();
            }
            c.reverse(); // c[0] is the coefficient of t^-budget
            LaurentSeries::from_coeffs(proto, -budget, c, EXACT, var)
        })
        .collect()
}

/// For each threshold k in [-depth, 0], the set of truncations (terms below t^k)
/// of the series in `taus`. Then max{v(y + τ)} is the largest k whose truncation of -y is hit.
struct CancellationTable {
    depth: i64,
    levels: Vec<HashSet<Vec<u64>>>,
}

fn trunc_key<E: FiniteField>(y: &LaurentSeries<E>, depth: i64, k: i64) -> Vec<u64> {
    (-depth..k).map(|e| y.coeff(e).index()).collect()
}

impl CancellationTable {
    fn new<E: FiniteField>(taus: &[LaurentSeries<E>], depth: i64) -> Self {
        let levels = (-depth..=0)
            .map(|k| taus.iter().map(|t| trunc_key(t, depth, k)).collect())
            .collect();
        CancellationTable { depth, levels }
    }
    /// max over τ of v(y + τ), capped at 0 (None = integral achievable).
    fn best_valuation<E: FiniteField>(&self, y: &LaurentSeries<E>) -> Option<i64> {
        let vy = y.valuation().filter(|&v| v < 0)?;
        if vy < -self.depth {
            return Some(vy);
        }
        let neg = -y.clone();
        for k in (vy + 1..=0).rev() {
            if self.levels[(k + self.depth) as usize].contains(&trunc_key(&neg, self.depth, k)) {
                return if k == 0 { None } else { Some(k) };
            }
        }
        Some(vy)
    }
}

/// Minimum box conductor of w + (1-F)v over every v whose components are
/// Laurent polynomials with poles ≤ `pole_budget` and coefficients in `space`.
pub fn conductor_oracle<E: FiniteField>(w: &WittVector<E>, pole_budget: i64, space: &[E]) -> Result<i64> {
    ConductorOracle::new(w.proto(), w.comps()[0].var(), pole_budget, space)?.conductor(w)
}

/// The tables behind [`conductor_oracle`], built once for many vectors over the same base.
pub struct ConductorOracle<E: FiniteField> {
    p: u64,
    table: CancellationTable,
    shifts: Vec<WittVector<E>>,
}

impl<E: FiniteField> ConductorOracle<E> {
    pub fn new(proto: &E, var: &'static str, pole_budget: i64, space: &[E]) -> Result<Self> {
        if space.len() > MAX_ORACLE_SPACE || !(0..=MAX_ORACLE_BUDGET).contains(&pole_budget) {
            return Err(Error::BudgetExceeded(format!(
                "oracle limited to |space| ≤ {}, budget ≤ {}",
                MAX_ORACLE_SPACE, MAX_ORACLE_BUDGET
            )));
        }
        let p = proto.characteristic();
        let vs = laurent_polys(proto, space, pole_budget, var);
        // the bottom slot is linear: (x, y) + (0, τ) = (x, y + τ) and (1-F)(0, v) = (0, v - v^p)
        let taus: Vec<LaurentSeries<E>> = vs.iter().map(|v| v - &crate::algebra::Field::pow(v, p)).collect();
        let table = CancellationTable::new(&taus, p as i64 * pole_budget);
        let shifts = vs
            .iter()
            .map(|v| Ok(WittVector::new(vec![v.clone(), LaurentSeries::exact_zero(proto)])?.one_minus_frobenius()))
            .collect::<Result<_>>()?;
        Ok(ConductorOracle { p, table, shifts })
    }

    pub fn conductor(&self, w: &WittVector<E>) -> Result<i64> {
        let s = w.len();
        if s > MAX_ORACLE_LENGTH {
            return Err(Error::BudgetExceeded(format!("oracle limited to s ≤ {}", MAX_ORACLE_LENGTH)));
        }
        let bottom = |z: &WittVector<E>| self.table.best_valuation(z.a(0));
        if s == 1 {
            return Ok(conductor_from_vals(self.p, &[bottom(w)]));
        }
        let mut best = i64::MAX;
        for shift in &self.shifts {
            let z = w.add(shift)?;
            let vtop = z.a(1).valuation().filter(|&x| x < 0);
            best = best.min(conductor_from_vals(self.p, &[bottom(&z), vtop]));
            if best == 0 {
                break;
            }
        }
        Ok(best)
    }
}
