use super::*;
use crate::algebra::{Fq, Poly2, RatFunc2};
use crate::error::Error;

fn vars(q: u64) -> (Fq, P2, P2) {
    let f = Fq::with_order(q).unwrap();
    (f.clone(), Poly2::x(&f.zero()), Poly2::y(&f.zero()))
}
fn r(p: &P2) -> R2 {
    RatFunc2::from_poly(p.clone())
}
fn c(f: &Fq, n: i64) -> P2 {
    Poly2::constant(f.from_i64(n))
}
fn prime(p: &P2) -> PrimeDivisor {
    PrimeDivisor::affine(p).unwrap()
}

#[test]
fn ord_along_examples() {
    let (_, x, y) = vars(3);
    assert_eq!(ord_along(&prime(&y), &r(&(&x * &(&y * &y)))).unwrap(), 2);
    let a = r(&(&(&x * &x) + &y));
    assert_eq!(ord_along(&PrimeDivisor::LineAtInfinity, &a).unwrap(), -2);
    let b = r(&(&(&x * &x) - &(&y * &y)));
    assert_eq!(ord_along(&prime(&(&x + &y)), &b).unwrap(), 1);
    assert_eq!(ord_along(&prime(&y), &r(&P2::zero(x.proto()))), Err(Error::ZeroFunction));
}

#[test]
fn tame_symbol_examples() {
    let (f3, x, y) = vars(3);
    let t = tame_symbol(&r(&x), &r(&y), &prime(&y)).unwrap();
    assert!(t.same_as(&r(&x)));
    let t = tame_symbol(&r(&x), &r(&x), &prime(&x)).unwrap();
    assert!(t.same_as(&r(&c(&f3, -1))));
    // a = (x + y^2)/x, b = (x + y)/(2x + y) along x + y: 1 - y
    let a = r(&(&x + &(&y * &y))).div(&r(&x)).unwrap();
    let b = r(&(&x + &y)).div(&r(&(&(&c(&f3, 2) * &x) + &y))).unwrap();
    let t = tame_symbol(&a, &b, &prime(&(&x + &y))).unwrap();
    assert!(t.same_as(&r(&(&c(&f3, 1) - &y))));
    assert!(!t.same_as(&r(&(&c(&f3, 1) + &y))));
}

#[test]
fn tame_symbol_relations() {
    let (f3, x, y) = vars(3);
    let z = prime(&(&(&(&y * &y) - &(&x * &(&x * &x))) - &x));
    let one = c(&f3, 1);
    let a = r(&(&x + &one)).div(&r(&(&y + &one))).unwrap();
    let a2 = r(&(&(&x * &y) + &one));
    let b = r(z.poly().unwrap()).powi(2).unwrap() * r(&(&x - &one));
    // bilinearity in the first slot
    let lhs = tame_symbol(&(a.clone() * a2.clone()), &b, &z).unwrap();
    let rhs = tame_symbol(&a, &b, &z).unwrap().rep * tame_symbol(&a2, &b, &z).unwrap().rep;
    assert!(lhs.same_as(&rhs));
    // {a, a} = {a, -1}, which is (-1)^{v} on Z; here v = 2
    let t = tame_symbol(&b, &b, &z).unwrap();
    assert!(t.same_as(&r(&one)));
    // Steinberg {g, 1 - g} = 1
    let g = r(z.poly().unwrap()) * a.clone();
    let s = tame_symbol(&g, &(r(&one) - g.clone()), &z).unwrap();
    assert!(s.is_one());
    // antisymmetry
    let ab = tame_symbol(&a, &b, &z).unwrap().rep;
    let ba = tame_symbol(&b, &a, &z).unwrap().rep;
    assert!(tame_symbol(&a, &b, &z).unwrap().same_as(&ba.inv().unwrap()));
    assert!(!ab.is_zero());
}

#[test]
fn divisor_and_restriction_at_infinity() {
    let (_, x, y) = vars(2);
    let a = r(&(&x * &y)).div(&r(&(&x + &y))).unwrap();
    let d = divisor_of(&a).unwrap();
    assert_eq!(d.len(), 4);
    assert_eq!(d.last().unwrap(), &(PrimeDivisor::LineAtInfinity, -1));
    let t = tame_symbol(&r(&x), &r(&y), &PrimeDivisor::LineAtInfinity).unwrap();
    // (-1)^{1}·x^{-1}/y^{-1} = -y/x on the line at infinity
    assert!(t.same_as(&r(&y).div(&r(&x)).unwrap()));
}

#[test]
fn intersection_multiplicities() {
    let (f3, x, y) = vars(3);
    // y = x^2 meets y = 0 doubly at the origin
    let par = &y - &(&x * &x);
    assert_eq!(intersection_multiplicity(&par, &y).unwrap(), 2);
    // cusp y^2 = x^3 against x: 2; against y: 3
    let cusp = &(&y * &y) - &(&x * &(&x * &x));
    assert_eq!(intersection_multiplicity(&cusp, &x).unwrap(), 2);
    assert_eq!(intersection_multiplicity(&cusp, &y).unwrap(), 3);
    assert!(intersection_multiplicity(&x, &x).is_err());
    // x^2 + 1 (irreducible over F_3) meets y in one closed point of degree 2
    let z = &y - &(&(&x * &x) + &c(&f3, 1));
    let cyc = intersection_cycle(&z, &y, &[]).unwrap();
    assert_eq!(cyc.0.len(), 1);
    assert_eq!(cyc.degree(), 2);
    let cyc = intersection_cycle(&y, &par, &[]).unwrap();
    assert_eq!(cyc.to_string(), "2*[(0, 0)]");
}

#[test]
fn gersten_examples() {
    let (_, x, y) = vars(3);
    let cset = [PrimeDivisor::LineAtInfinity];
    assert!(gersten_check(&r(&x), &r(&y), &cset).unwrap());
    assert!(gersten_check(&r(&(&x + &y)), &r(&(&x - &y)), &cset).unwrap());
    let e = boundary(&r(&x), &r(&y), &cset, BOUNDARY_PREC).unwrap();
    assert_eq!(e.terms.len(), 2);
    assert!(e.zero_cycle.is_zero());
    // (x + y)·(x - y) meet at the origin: each term contributes ±1 there
    let a = r(&(&x + &y));
    let b = r(&(&x - &y));
    let cyc = gersten_cycle(&a, &b, &cset).unwrap();
    assert!(cyc.is_zero());
    assert!(matches!(gersten_check(&r(&x), &r(&(&x * &y)), &cset), Err(Error::CommonComponent(_))));
}

#[test]
fn boundary_of_a_pulled_back_pair() {
    // a = x, b = 1 + x: constant symbols along the vertical lines, as on P^1
    let (f2, x, _) = vars(2);
    let one = c(&f2, 1);
    let e = boundary(&r(&x), &r(&(&x + &one)), &[PrimeDivisor::LineAtInfinity], 6).unwrap();
    assert_eq!(e.terms.len(), 2);
    for t in &e.terms {
        assert!(t.function.rep.num().is_constant() && t.function.rep.den().is_constant());
        assert_eq!(t.local.len(), 1);
        let s = t.local[0].expansion.as_ref().unwrap();
        assert_eq!(s.valuation(), Some(0));
    }
    assert!(e.zero_cycle.is_zero());
}

#[test]
fn boundary_with_an_affine_component() {
    let (f3, x, y) = vars(3);
    let one = c(&f3, 1);
    let cset = [PrimeDivisor::LineAtInfinity, prime(&(&y - &one))];
    let a = r(&(&x + &y));
    let b = r(&(&(&x * &x) + &y));
    let e = boundary(&a, &b, &cset, 5).unwrap();
    assert!(e.zero_cycle.is_zero());
    assert!(e.terms.iter().all(|t| t.local.iter().all(|u| u.expansion.is_some())));
    assert!(gersten_check(&a, &b, &cset).unwrap());
}

#[test]
fn claim1_example() {
    let (f3, x, y) = vars(3);
    let rep = claim1_table(&y, &x, &c(&f3, 1), &c(&f3, 2), &y).unwrap();
    assert!(rep.all_match(), "{}", rep);
    let labels: Vec<&str> = rep.rows.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["f", "p1", "p2", "q"]);
    let one = c(&f3, 1);
    assert!(rep.rows[1].got.same_as(&r(&(&one - &y))));
    let trivial = claim1_table(&y, &x, &c(&f3, 1), &c(&f3, 2), &P2::zero(x.proto())).unwrap();
    assert!(trivial.rows.iter().all(|r| r.got.is_one()));
    assert!(matches!(claim1_table(&y, &x, &one, &one, &y), Err(Error::DegenerateConfiguration(_))));
    let (_, x2, y2) = vars(2);
    assert!(claim1_table(&y2, &x2, &c(&Fq::new(2, 1).unwrap(), 1), &c(&Fq::new(2, 1).unwrap(), 1), &y2).is_err());
}

#[test]
fn claim2_example() {
    let (f3, x, y) = vars(3);
    let one = c(&f3, 1);
    let rep = claim2_table(&y, &x, &one, &one, 2).unwrap();
    assert!(rep.all_match(), "{}", rep);
    let at_f = rep.rows.iter().find(|r| r.label == "f").unwrap();
    assert!(at_f.got.same_as(&r(&y)));
    let trivial = claim2_table(&y, &x, &one, &P2::zero(x.proto()), 2).unwrap();
    assert!(trivial.rows.iter().all(|r| r.label != "q" && r.got.is_one()));
}

#[test]
fn mu_examples() {
    let (f3, x, y) = vars(3);
    let z = f3.zero();
    let pt = (&z, &z);
    let y2 = r(&(&y * &y));
    let y3 = r(&(&y * &(&y * &y)));
    let zero = r(&P2::zero(&z));
    let m = mu_symbol(&zero, &y2, &y, &x, pt, 6).unwrap();
    assert_eq!(m.terms.len(), 1);
    assert_eq!(m.terms[0].1, x.normalized());
    let m = mu_symbol(&y2, &y2, &y, &x, pt, 6).unwrap();
    assert_eq!(m.terms.len(), 1);
    assert_eq!(m.terms[0].1, (&x + &y).normalized());
    let m = mu_symbol(&y2, &(y2.clone() + y3), &y, &x, pt, 6).unwrap();
    assert_eq!(m.terms.len(), 2);
    // along x = 0: 1 + t^3; along x + y = 0: 1 + t^2
    assert_eq!(m.terms[0].2.to_string(), "1 + t^3 + O(t^6)");
    assert_eq!(m.terms[1].2.to_string(), "1 + t^2 + O(t^6)");
    assert!(matches!(mu_symbol(&y2, &y2, &y, &y, pt, 6), Err(Error::DegenerateConfiguration(_))));
}

#[test]
fn mu_transformation_and_shape() {
    let (f5, x, y) = vars(5);
    let z = f5.zero();
    let pt = (&z, &z);
    let alpha = r(&(&(&y * &y) * &(&x + &c(&f5, 2))));
    let beta = r(&(&(&y * &y) + &(&x * &(&y * &y))));
    let u = &c(&f5, 2) + &x;
    let v = &c(&f5, 3) + &(&x * &y);
    let rep = mu_transformation_check(&alpha, &beta, &y, &x, &u, &v, pt, 6).unwrap();
    assert!(rep.ok(), "{:?}", rep);
    assert!(nu_shape_check(&alpha, &beta, &y, &x, pt, 8).unwrap());
    assert!(nu_shape_check(&alpha, &alpha, &y, &x, pt, 8).unwrap());
}
