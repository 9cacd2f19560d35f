use super::*;
use crate::algebra::{Field, FieldElem, Fq, RatFunc};
use crate::error::Error;
use crate::localfield::{LaurentSeries, EXACT};

fn mono(f: Fq, c: i64, e: i64) -> LaurentSeries<FieldElem> {
    LaurentSeries::monomial(f.from_i64(c), e, EXACT)
}

fn w(f: Fq, display: &[(i64, i64)]) -> WittVector<FieldElem> {
    WittVector::new(display.iter().map(|&(c, e)| mono(f, c, e)).collect()).unwrap()
}

#[test]
fn teichmuller_sum_carries_into_lower_slot() {
    let f2 = Fq::new(2, 1).unwrap();
    let one = w(f2, &[(1, 0), (0, 0)]);
    assert_eq!(one.add(&one).unwrap(), w(f2, &[(0, 0), (1, 0)]));
    // and 1 + 1 + 1 + 1 = 0 in Z/4
    assert!(one.mul_int(4).is_zero());
}

#[test]
fn three_ones_in_w2_f3() {
    let f3 = Fq::new(3, 1).unwrap();
    let one = w(f3, &[(1, 0), (0, 0)]);
    let three = one.mul_int(3);
    assert_eq!(three, w(f3, &[(0, 0), (1, 0)]));
    let vf = WittVector::new(vec![mono(f3, 1, 0)]).unwrap().frobenius().verschiebung().unwrap();
    assert_eq!(three, vf);
}

#[test]
fn adding_zero() {
    let f5 = Fq::new(5, 1).unwrap();
    let v = w(f5, &[(2, -3), (4, 1)]);
    assert_eq!(v.add(&WittVector::zero(&f5.zero(), 2)).unwrap(), v);
}

#[test]
fn frobenius_and_verschiebung() {
    let f3 = Fq::new(3, 1).unwrap();
    let u = LaurentSeries::from_terms(&f3.zero(), &[(0, f3.from_i64(2)), (1, f3.one())], EXACT, "t");
    let v = WittVector::new(vec![mono(f3, 1, -1), u.clone()]).unwrap();
    let fv = v.frobenius();
    assert_eq!(fv.comps()[0], mono(f3, 1, -3));
    assert_eq!(fv.comps()[1], Field::pow(&u, 3));
    assert!(WittVector::zero(&f3.zero(), 1).verschiebung().unwrap().is_zero());
    assert_eq!(WittVector::zero(&f3.zero(), 3).verschiebung(), Err(Error::LengthOverflow(4)));
    let fvw = v.verschiebung().unwrap().frobenius();
    // F V = p on length-2 truncations; compare the top two slots
    let three = v.mul_int(3);
    assert_eq!(&fvw.comps()[..1], &[LaurentSeries::exact_zero(&f3.zero())]);
    assert_eq!(WittVector::new(fvw.comps()[..2].to_vec()).unwrap(), three);
}

#[test]
fn fillog_examples() {
    let f3 = Fq::new(3, 1).unwrap();
    let v = w(f3, &[(1, -1), (1, -2)]);
    assert!(!v.in_fillog(2).unwrap());
    assert!(v.in_fillog(3).unwrap());
    assert!(w(f3, &[(1, 0), (2, 4)]).in_fillog(0).unwrap());
    let f2 = Fq::new(2, 1).unwrap();
    let v = w(f2, &[(1, -3)]);
    assert!(v.in_fillog(3).unwrap() && !v.in_fillog(2).unwrap());
}

#[test]
fn matsuda_membership_jumps_at_four() {
    let f3 = Fq::new(3, 1).unwrap();
    let v = w(f3, &[(1, -1), (1, -2)]);
    assert!(!v.in_fil(3).unwrap());
    assert!(v.in_fil(4).unwrap());
    assert_eq!(v.artin_conductor().unwrap(), 4);
    let z = WittVector::zero(&f3.zero(), 2);
    assert!((1..10).all(|m| z.in_fil(m).unwrap()));
}

#[test]
fn zero_to_precision_is_undecidable_below_its_precision() {
    let f2 = Fq::new(2, 1).unwrap();
    let v = WittVector::new(vec![LaurentSeries::zero(&f2.zero(), -2, "t")]).unwrap();
    assert!(matches!(v.in_fil(1), Err(Error::InsufficientPrecision(_))));
    assert!(v.in_fil(3).unwrap());
}

#[test]
fn best_form_examples() {
    let f2 = Fq::new(2, 1).unwrap();
    let v = w(f2, &[(1, -2)]);
    assert_eq!(v.best_form().unwrap(), w(f2, &[(1, -1)]));
    assert_eq!(v.artin_conductor().unwrap(), 2);

    let f3 = Fq::new(3, 1).unwrap();
    let u = RatFunc::var(&f3.zero(), "u");
    let v = WittVector::new(vec![LaurentSeries::monomial(u.clone(), -3, EXACT)]).unwrap();
    assert_eq!(v.best_form().unwrap(), v);

    let v = w(f3, &[(2, 0), (1, 5)]);
    assert_eq!(v.best_form().unwrap(), v);
    assert_eq!(v.artin_conductor().unwrap(), 0);
}

#[test]
fn trivial_classes_have_conductor_zero() {
    let f3 = Fq::new(3, 1).unwrap();
    let v = w(f3, &[(1, -2), (2, -1)]);
    assert_eq!(v.one_minus_frobenius().artin_conductor().unwrap(), 0);
}

#[test]
fn oracle_examples() {
    let f2 = Fq::new(2, 1).unwrap();
    let space: Vec<_> = f2.elements().collect();
    assert_eq!(conductor_oracle(&w(f2, &[(1, -2)]), 4, &space).unwrap(), 2);
    assert_eq!(conductor_oracle(&w(f2, &[(1, -1)]), 4, &space).unwrap(), 2);
    assert_eq!(conductor_oracle(&WittVector::zero(&f2.zero(), 1), 4, &space).unwrap(), 0);
    let v = w(f2, &[(1, -1), (1, 0)]);
    assert!(matches!(conductor_oracle(&v, 7, &space), Err(Error::BudgetExceeded(_))));
}
