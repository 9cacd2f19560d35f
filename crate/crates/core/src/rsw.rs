//! Refined Artin conductor: F^{s-1}d, graded extraction and its inverse for perfect
//! residue fields, Milnor symbols in V^m K^M, and the residue pairing.

use std::fmt;

use crate::algebra::{Field, FiniteField};
use crate::error::{Error, Result};
use crate::localfield::{d_form, form_grade, DifferentialForm, GradedForm, LaurentSeries, EXACT};
use crate::witt::{ord_p, WittVector, MAX_LENGTH};

/// Σ_i a_i^{p^i - 1} da_i.
pub fn fsd<E: Field>(w: &WittVector<E>) -> DifferentialForm<E> {
    let p = w.p();
    let mut acc = DifferentialForm::zero(w.proto(), EXACT);
    for i in 0..w.len() {
        let a = w.a(i);
        if a.is_zero() && a.is_exact() {
            continue;
        }
        let k = p.pow(i as u32) - 1;
        acc = acc.add(&d_form(a).mul_series(&Field::pow(a, k)));
    }
    acc
}

pub fn refined_artin<E: Field>(w: &WittVector<E>) -> Result<GradedForm<E>> {
    let m = w.artin_conductor()?;
    if m <= 1 {
        return Err(Error::ConductorTooSmall(m));
    }
    form_grade(&fsd(&w.best_form()?), m)
}

/// A Witt vector with refined Artin conductor g, for E perfect.
///
/// With m - 1 = n·p^i and p ∤ n, the single slot a_i = b·t^{-n} has
/// a_i^{p^i-1} da_i = -n·b^{p^i}·t^{-m} dt, so b = (-c/n)^{1/p^i}.
pub fn surject_preimage<E: Field>(g: &GradedForm<E>) -> Result<WittVector<E>> {
    let proto = g.c_dt.zero_like();
    if !proto.is_perfect() {
        return Err(Error::ImperfectResidue);
    }
    if g.level <= 1 {
        return Err(Error::ConductorTooSmall(g.level));
    }
    if g.is_zero() {
        return Err(Error::PreconditionViolated("graded target is zero".into()));
    }
    if !g.c_du.is_zero() {
        return Err(Error::NoPreimage("du-component over a perfect residue field".into()));
    }
    let p = proto.characteristic();
    let m1 = (g.level - 1) as u64;
    let i = ord_p(p, m1);
    let s = i + 1;
    if s > MAX_LENGTH {
        return Err(Error::NoPreimage(format!("level {} needs Witt length {}", g.level, s)));
    }
    let n = (m1 / p.pow(i as u32)) as i64;
    let mut b = (-g.c_dt.clone()).div(&proto.from_int_like(n)).expect("p does not divide n");
    for _ in 0..i {
        b = b.pth_root().ok_or(Error::ImperfectResidue)?;
    }
    let w = WittVector::single(s, i, LaurentSeries::monomial(b, -n, EXACT));
    if refined_artin(&w)? != *g {
        return Err(Error::NoPreimage(format!("round trip failed at level {}", g.level)));
    }
    Ok(w)
}

/// A symbol {b_1, ..., b_N} in K^M_N(K), N ≤ 2.
#[derive(Clone, Debug, PartialEq)]
pub struct MilnorSymbol<E: Field> {
    pub entries: Vec<LaurentSeries<E>>,
}

impl<E: Field> MilnorSymbol<E> {
    pub fn new(entries: Vec<LaurentSeries<E>>) -> Result<Self> {
        if entries.is_empty() || entries.len() > 2 {
            return Err(Error::MalformedPresentation(format!("symbol of length {}", entries.len())));
        }
        for e in &entries {
            if e.is_zero() {
                return Err(Error::MalformedPresentation("zero entry".into()));
            }
        }
        Ok(MilnorSymbol { entries })
    }
    pub fn degree(&self) -> usize {
        self.entries.len()
    }
}

impl<E: Field> fmt::Display for MilnorSymbol<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Whether every generator has the shape {1+a, units} or {1+aπ, units, π} with v(a) ≥ m.
pub fn vm_member<E: Field>(gens: &[MilnorSymbol<E>], m: i64) -> Result<bool> {
    if m < 1 {
        return Err(Error::PreconditionViolated(format!("level {} < 1", m)));
    }
    let mut all = true;
    for g in gens {
        let x = &g.entries[0] - &LaurentSeries::constant(g.entries[0].proto().one_like(), EXACT).with_var(g.entries[0].var());
        let rest = &g.entries[1..];
        let vals: Vec<i64> = rest.iter().map(|b| b.try_valuation()).collect::<Result<_>>()?;
        let (units, shift) = match vals.last() {
            Some(1) => (&vals[..vals.len() - 1], 1),
            _ => (&vals[..], 0),
        };
        if units.iter().any(|&v| v != 0) {
            return Err(Error::MalformedPresentation(format!("{}: entries are neither units nor a uniformizer", g)));
        }
        match x.valuation() {
            None if x.prec() < m + shift => {
                return Err(Error::InsufficientPrecision(format!("{} known only modulo t^{}", g, x.prec())))
            }
            None => {}
            Some(v) if v < 1 => {
                return Err(Error::MalformedPresentation(format!("{}: first entry is not a principal unit", g)))
            }
            Some(v) => all &= v - shift >= m,
        }
    }
    Ok(all)
}

/// {1 + a·b_1⋯b_{N-1}, b_1, ..., b_{N-1}}.
pub fn rho_m<E: Field>(a: &LaurentSeries<E>, bs: &[LaurentSeries<E>], m: i64) -> Result<MilnorSymbol<E>> {
    if bs.len() > 1 {
        return Err(Error::PreconditionViolated("at most one b-entry (N ≤ 2)".into()));
    }
    if !a.is_zero() && a.try_valuation()? < m - 1 {
        return Err(Error::PreconditionViolated(format!("v(a) = {} < m - 1 = {}", a.valuation().unwrap(), m - 1)));
    }
    if a.is_zero() && a.prec() < m - 1 {
        return Err(Error::InsufficientPrecision("a is zero only to low precision".into()));
    }
    for b in bs {
        let v = b.try_valuation()?;
        if v != 0 && v != 1 {
            return Err(Error::PreconditionViolated(format!("b-entry of valuation {}", v)));
        }
    }
    let mut prod = a.clone();
    for b in bs {
        prod = &prod * b;
    }
    let one = LaurentSeries::constant(a.proto().one_like(), EXACT).with_var(a.var());
    let mut entries = vec![&one + &prod];
    entries.extend(bs.iter().cloned());
    MilnorSymbol::new(entries)
}

/// N = 1: Tr Res(c·t^{-m}·a dt).
pub fn tau_pair_1<E: FiniteField>(g: &GradedForm<E>, a: &LaurentSeries<E>) -> Result<u64> {
    let r = (g.representative().alpha * a.clone()).try_coeff(-1)?;
    Ok(r.abs_trace())
}

/// N = 2 over E = F_q((u)): t^{-m}(c_dt·β - c_du·α) dt∧du, residue in t, then in u, then trace.
pub fn tau_pair_2<F: FiniteField>(g: &GradedForm<LaurentSeries<F>>, eta: &DifferentialForm<LaurentSeries<F>>) -> Result<u64> {
    let rep = g.representative();
    let top = &(&rep.alpha * &eta.beta) - &(&rep.beta * &eta.alpha);
    let res_t = top.try_coeff(-1)?;
    let res_u = res_t.try_coeff(-1)?;
    Ok(res_u.abs_trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElem, Fq, RatFunc};

    fn mono<E: Field>(c: E, e: i64) -> LaurentSeries<E> {
        LaurentSeries::monomial(c, e, EXACT)
    }

    #[test]
    fn fsd_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let u = RatFunc::var(&f3.zero(), "u");
        let w = WittVector::new(vec![mono(u.clone(), -4)]).unwrap();
        let d = fsd(&w);
        assert_eq!(d.alpha, mono(u.from_int_like(2) * u.clone(), -5));
        assert_eq!(d.beta, mono(u.one_like(), -4));

        let f2 = Fq::new(2, 1).unwrap();
        let w = WittVector::new(vec![mono(f2.one(), -1), LaurentSeries::exact_zero(&f2.zero())]).unwrap();
        assert_eq!(fsd(&w).alpha, mono(f2.one(), -3));
        assert!(fsd(&WittVector::zero(&f2.zero(), 2)).is_zero());
    }

    #[test]
    fn refined_artin_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let u = RatFunc::var(&f3.zero(), "u");
        let g = refined_artin(&WittVector::new(vec![mono(u.clone(), -4)]).unwrap()).unwrap();
        assert_eq!((g.level, g.c_dt, g.c_du.is_zero()), (5, u.from_int_like(2) * u.clone(), true));

        let g = refined_artin(&WittVector::new(vec![mono(u.clone(), -1)]).unwrap()).unwrap();
        assert_eq!((g.level, g.c_dt, g.c_du.is_zero()), (2, u.from_int_like(2) * u.clone(), true));

        let f2 = Fq::new(2, 1).unwrap();
        let g = refined_artin(&WittVector::new(vec![mono(f2.one(), -3)]).unwrap()).unwrap();
        assert_eq!((g.level, g.c_dt), (4, f2.one()));

        let tame = WittVector::new(vec![mono(f2.one(), 0)]).unwrap();
        assert_eq!(refined_artin(&tame), Err(Error::ConductorTooSmall(0)));
    }

    fn target(c: FieldElem, level: i64) -> GradedForm<FieldElem> {
        GradedForm { level, c_du: c.zero_like(), c_dt: c }
    }

    #[test]
    fn preimage_examples() {
        let f5 = Fq::new(5, 1).unwrap();
        let w = surject_preimage(&target(f5.from_i64(3), 3)).unwrap();
        assert_eq!(w, WittVector::new(vec![mono(f5.one(), -2)]).unwrap());
        assert_eq!(w.artin_conductor().unwrap(), 3);

        let f3 = Fq::new(3, 1).unwrap();
        let w = surject_preimage(&target(f3.one(), 2)).unwrap();
        assert_eq!(w, WittVector::new(vec![mono(f3.from_i64(2), -1)]).unwrap());

        assert!(surject_preimage(&target(f3.zero(), 2)).is_err());
        let u = RatFunc::var(&f3.zero(), "u");
        let g = GradedForm { level: 3, c_dt: u.clone(), c_du: u.zero_like() };
        assert_eq!(surject_preimage(&g), Err(Error::ImperfectResidue));
    }

    #[test]
    fn preimage_needs_longer_vectors_when_p_divides_m_minus_one() {
        let f2 = Fq::new(2, 1).unwrap();
        let w = surject_preimage(&target(f2.one(), 5)).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.artin_conductor().unwrap(), 5);
    }

    type K2 = LaurentSeries<FieldElem>;

    fn ufield(f: Fq) -> (K2, K2) {
        let u = LaurentSeries::monomial(f.one(), 1, EXACT).with_var("u");
        (u.one_like(), u)
    }

    #[test]
    fn vm_membership_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let (one, u) = ufield(f3);
        let one_t = mono(one.clone(), 0);
        let ut = |k: i64| mono(u.clone(), k);
        let s1 = MilnorSymbol::new(vec![&one_t + &ut(3), mono(u.clone(), 0)]).unwrap();
        assert!(vm_member(&[s1], 3).unwrap());
        let s2 = MilnorSymbol::new(vec![&one_t + &ut(2), mono(u.clone(), 0)]).unwrap();
        assert!(!vm_member(&[s2], 3).unwrap());
        let s3 = MilnorSymbol::new(vec![&one_t + &ut(4), mono(one.clone(), 1)]).unwrap();
        assert!(vm_member(&[s3], 3).unwrap());
        let bad = MilnorSymbol::new(vec![&one_t + &ut(4), mono(one.clone(), 2)]).unwrap();
        assert!(matches!(vm_member(&[bad], 3), Err(Error::MalformedPresentation(_))));
    }

    #[test]
    fn rho_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let (one, u) = ufield(f3);
        let s = rho_m(&mono(one.clone(), 2), &[mono(u.clone(), 0)], 3).unwrap();
        assert_eq!(s.entries[0], &mono(one.clone(), 0) + &mono(u.clone(), 2));
        assert_eq!(s.entries[1], mono(u.clone(), 0));
        let s = rho_m(&LaurentSeries::exact_zero(&one), &[mono(u.clone(), 0)], 3).unwrap();
        assert!(s.entries[0].is_one());
        let s = rho_m(&mono(f3.one(), 4), &[], 5).unwrap();
        assert_eq!(s.degree(), 1);
        assert!(rho_m(&mono(f3.one(), 2), &[], 5).is_err());
    }

    #[test]
    fn pairing_examples() {
        let f3 = Fq::new(3, 1).unwrap();
        let g = target(f3.from_i64(2), 2);
        assert_eq!(tau_pair_1(&g, &mono(f3.one(), 1)).unwrap(), 2);
        assert_eq!(tau_pair_1(&g, &mono(f3.one(), 2)).unwrap(), 0);

        let (one, u) = ufield(f3);
        let g = GradedForm { level: 2, c_dt: one.zero_like(), c_du: one.clone() };
        let uinv = u.try_inv().unwrap();
        let eta = DifferentialForm::new(LaurentSeries::exact_zero(&one), mono(uinv.clone(), 1));
        assert_eq!(tau_pair_2(&g, &eta).unwrap(), 0);
        // dt-part against du-part does pair: Res_u Res_t(t^-2 · t u^-1) = 1
        let g = GradedForm { level: 2, c_dt: one.clone(), c_du: one.zero_like() };
        assert_eq!(tau_pair_2(&g, &eta).unwrap(), 1);
    }
}
