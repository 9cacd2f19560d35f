//! Smith normal form of integer relation matrices.

use crate::error::{Error, Result};

/// Z^n / (row span of the relations) ≅ ⊕ Z/d_i.
///
/// `diag[i]` is d_i (0 for a free summand, 1 for a trivial one). Row i of `vinv`
/// is the element of Z^n that generates the i-th summand.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub vinv: Vec<Vec<i128>>,
}

fn ovf() -> Error {
    Error::BudgetExceeded("integer overflow in Smith form".into())
}

fn axpy(dst: &mut [i128], k: i128, src: &[i128]) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d = s.checked_mul(k).and_then(|v| d.checked_add(v)).ok_or_else(ovf)?;
    }
    Ok(())
}

struct Work {
    a: Vec<Vec<i128>>,
    vinv: Vec<Vec<i128>>,
}

impl Work {
    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.a {
            r.swap(i, j);
        }
        self.vinv.swap(i, j);
    }
    /// col j += k·col i
    fn add_col(&mut self, j: usize, k: i128, i: usize) -> Result<()> {
        for r in &mut self.a {
            r[j] = r[i].checked_mul(k).and_then(|v| r[j].checked_add(v)).ok_or_else(ovf)?;
        }
        let src = self.vinv[j].clone();
        axpy(&mut self.vinv[i], -k, &src)
    }
    fn add_row(&mut self, j: usize, k: i128, i: usize) -> Result<()> {
        let src = self.a[i].clone();
        axpy(&mut self.a[j], k, &src)
    }
}

pub fn smith(rows: &[Vec<i128>], ncols: usize) -> Result<Smith> {
    let mut w = Work {
        a: rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect(),
        vinv: (0..ncols).map(|i| (0..ncols).map(|j| (i == j) as i128).collect()).collect(),
    };
    let nrows = w.a.len();
    let mut diag = vec![0i128; ncols];
    for t in 0..nrows.min(ncols) {
        loop {
            // smallest nonzero entry of the remaining block goes to (t, t)
            let mut best: Option<(i128, usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    let v = w.a[i][j].abs();
                    if v != 0 && best.map_or(true, |(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((_, bi, bj)) = best else {
                return finish(w, diag);
            };
            w.a.swap(t, bi);
            if bj != t {
                w.swap_cols(t, bj);
            }
            let piv = w.a[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let q = w.a[i][t] / piv;
                if q != 0 {
                    w.add_row(i, -q, t)?;
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..ncols {
                let q = w.a[t][j] / piv;
                if q != 0 {
                    w.add_col(j, -q, t)?;
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and go again
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| w.a[i][j] % piv != 0));
            match bad {
                Some(i) => w.add_row(t, 1, i)?,
                None => break,
            }
        }
        diag[t] = w.a[t][t].abs();
        if w.a[t][t] < 0 {
            for r in &mut w.a {
                r[t] = -r[t];
            }
            for x in &mut w.vinv[t] {
                *x = -*x;
            }
        }
    }
    finish(w, diag)
}

fn finish(w: Work, diag: Vec<i128>) -> Result<Smith> {
    Ok(Smith { diag, vinv: w.vinv })
}

impl Smith {
    /// Nontrivial invariant factors, finite ones first in divisibility order, then free rank.
    pub fn invariant_factors(&self) -> (Vec<i128>, usize) {
        let mut fin: Vec<i128> = self.diag.iter().copied().filter(|&d| d > 1).collect();
        fin.sort();
        (fin, self.diag.iter().filter(|&&d| d == 0).count())
    }
    /// Coordinates of x ∈ Z^n in the summands: x·V, where V = vinv^{-1}.
    pub fn coordinates(&self, v: &[Vec<i128>], x: &[i128]) -> Vec<i128> {
        (0..self.diag.len())
            .map(|j| {
                let c: i128 = x.iter().zip(v).map(|(a, row)| a * row[j]).sum();
                if self.diag[j] > 0 {
                    c.rem_euclid(self.diag[j])
                } else {
                    c
                }
            })
            .collect()
    }
}

/// Inverse of a unimodular integer matrix by fraction-free elimination.
pub fn unimodular_inverse(m: &[Vec<i128>]) -> Result<Vec<Vec<i128>>> {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut inv: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for c in 0..n {
        loop {
            let piv = (c..n).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].abs());
            let Some(pi) = piv else {
                return Err(Error::PreconditionViolated("matrix is singular".into()));
            };
            a.swap(c, pi);
            inv.swap(c, pi);
            let mut done = true;
            for i in 0..n {
                if i != c && a[i][c] != 0 {
                    let q = a[i][c] / a[c][c];
                    let (ra, ri) = (a[c].clone(), inv[c].clone());
                    axpy(&mut a[i], -q, &ra)?;
                    axpy(&mut inv[i], -q, &ri)?;
                    done &= a[i][c] == 0;
                }
            }
            if done {
                break;
            }
        }
        if a[c][c].abs() != 1 {
            return Err(Error::PreconditionViolated("matrix is not unimodular".into()));
        }
        if a[c][c] == -1 {
            a[c].iter_mut().for_each(|x| *x = -*x);
            inv[c].iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(inv)
}
