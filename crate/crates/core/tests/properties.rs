//! Randomized invariants. Each case draws a seed and builds its instance from the crate's samplers,
//! so a shrunk failure is replayable from the printed seed.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use ramify::algebra::{factor, Field, FieldElem, Fq, Poly, Poly2, RatFunc2};
use ramify::k2surface::{tame_symbol, PrimeDivisor};
use ramify::localfield::{d_form, form_grade, residue, DifferentialForm, LaurentSeries, EXACT};
use ramify::rayclass::{divisor_of, schmid_reciprocity_check};
use ramify::rsw::{fsd, refined_artin};
use ramify::sample::{self, SweepRng};
use ramify::Error;

fn rng(seed: u64) -> SweepRng {
    SweepRng::seed_from_u64(seed)
}

fn field() -> impl Strategy<Value = Fq> {
    prop::sample::select(vec![(2u32, 1u32), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 2), (13, 1)])
        .prop_map(|(p, n)| Fq::new(p, n).unwrap())
}

fn small_field() -> impl Strategy<Value = Fq> {
    prop::sample::select(vec![2u64, 3, 4, 5]).prop_map(|q| Fq::with_order(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(f in field(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let [a, b, c] = [0, 1, 2].map(|_| sample::elem(&f, &mut r));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn pth_root_inverts_frobenius(f in field(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = sample::elem(&f, &mut r);
        let root = e.pth_root().unwrap();
        prop_assert_eq!(root.pow(f.p() as u64), e);
        let g = sample::poly(&f, 3, &mut r);
        prop_assert_eq!(g.pow(f.p() as u64).pth_root(), Some(g));
    }

    #[test]
    fn factors_multiply_back(f in small_field(), seed in any::<u64>(), deg in 1usize..=8) {
        let mut r = rng(seed);
        let g = sample::poly(&f, deg, &mut r);
        prop_assume!(!g.is_zero());
        let back = factor(&g).unwrap().iter().fold(Poly::constant(g.lc()), |acc, (h, e)| &acc * &h.pow(*e as u64));
        prop_assert_eq!(back, g);
    }

    #[test]
    fn leibniz_rule(f in small_field(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (sample::ratfunc(&f, 3, &mut r), sample::ratfunc(&f, 3, &mut r));
        let lhs = (a.clone() * b.clone()).derivative();
        prop_assert_eq!(lhs, a.derivative() * b.clone() + a * b.derivative());
    }

    #[test]
    fn exact_forms_have_no_residue(f in small_field(), seed in any::<u64>()) {
        let a = sample::laurent(&f, 6, 4, EXACT, &mut rng(seed));
        prop_assert!(residue(&d_form(&a)).unwrap().is_zero());
    }

    #[test]
    fn valuation_is_a_valuation(f in small_field(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (sample::laurent(&f, 4, 3, EXACT, &mut r), sample::laurent(&f, 4, 3, EXACT, &mut r));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        prop_assert_eq!((a.clone() * b.clone()).valuation(), Some(va + vb));
        match (a + b).valuation() {
            None => prop_assert_eq!(va, vb),
            Some(v) if va != vb => prop_assert_eq!(v, va.min(vb)),
            Some(v) => prop_assert!(v >= va),
        }
    }

    #[test]
    fn grading_is_additive(f in small_field(), seed in any::<u64>(), m in 1i64..=6) {
        let mut r = rng(seed);
        let mut form = || DifferentialForm::dt(sample::laurent(&f, m, 3, EXACT, &mut r));
        let (w1, w2) = (form(), form());
        let sum = form_grade(&w1.add(&w2), m).unwrap();
        prop_assert_eq!(sum, form_grade(&w1, m).unwrap().add(&form_grade(&w2, m).unwrap()));
    }

    #[test]
    fn raising_precision_keeps_retained_terms(f in small_field(), seed in any::<u64>(), n in 4i64..=12) {
        let mut r = rng(seed);
        let (a, b) = (sample::laurent(&f, 3, 8, EXACT, &mut r), sample::laurent(&f, 3, 8, EXACT, &mut r));
        prop_assume!(!b.is_zero());
        let pipeline = |k: i64| -> LaurentSeries<FieldElem> {
            let (a, b) = (a.truncate(k), b.truncate(k));
            a.try_div(&b).unwrap() + Field::pow(&a, 3) - d_form(&b).alpha
        };
        prop_assert!(pipeline(n).agrees_with(&pipeline(n + 10)));
    }
}

fn witt_params() -> impl Strategy<Value = (Fq, usize)> {
    prop::sample::select(vec![(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)])
        .prop_map(|(p, s)| (Fq::with_order(p).unwrap(), s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conductor_ignores_artin_schreier_shifts((f, s) in witt_params(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (w, v) = (sample::witt(&f, s, 5, EXACT, &mut r), sample::witt(&f, s, 3, EXACT, &mut r));
        let shifted = w.add(&v.one_minus_frobenius()).unwrap();
        prop_assert_eq!(shifted.artin_conductor().unwrap(), w.artin_conductor().unwrap());
    }

    #[test]
    fn box_lemmas((f, s) in witt_params(), seed in any::<u64>(), m in 1i64..=14) {
        let w = sample::witt(&f, s, 6, EXACT, &mut rng(seed));
        let (fil, log) = (w.in_fil(m).unwrap(), w.in_fillog(m).unwrap());
        prop_assert!(!fil || log);
        prop_assert!(!log || w.in_fil(m + 1).unwrap());
        if m as u32 % f.p() != 0 {
            prop_assert_eq!(fil, w.in_fillog(m - 1).unwrap());
        }
    }

    #[test]
    fn fil_box_is_closed_under_addition((f, s) in witt_params(), seed in any::<u64>(), m in 1i64..=10) {
        let mut r = rng(seed);
        let (w, v) = (sample::witt(&f, s, 4, EXACT, &mut r), sample::witt(&f, s, 4, EXACT, &mut r));
        if w.in_fil(m).unwrap() && v.in_fil(m).unwrap() {
            prop_assert!(w.add(&v).unwrap().in_fil(m).unwrap());
        }
    }

    #[test]
    fn fsd_respects_the_filtration((f, s) in witt_params(), seed in any::<u64>(), m in 1i64..=10) {
        let w = sample::witt(&f, s, 4, EXACT, &mut rng(seed));
        if w.in_fil(m).unwrap() {
            prop_assert!(form_grade(&fsd(&w), m).is_ok(), "fsd({}) = {} outside fil_{}", w, fsd(&w), m);
        }
    }

    #[test]
    fn refined_conductor_is_well_defined((f, s) in witt_params(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (w, v) = (sample::witt(&f, s, 5, EXACT, &mut r), sample::witt(&f, s, 2, EXACT, &mut r));
        prop_assume!(w.artin_conductor().unwrap() > 1);
        let g = refined_artin(&w).unwrap();
        prop_assert!(!g.is_zero());
        prop_assert_eq!(refined_artin(&w.add(&v.one_minus_frobenius()).unwrap()).unwrap(), g);
    }

    #[test]
    fn principal_divisors_have_degree_zero(f in small_field(), seed in any::<u64>()) {
        let g = sample::ratfunc(&f, 5, &mut rng(seed));
        prop_assert_eq!(divisor_of(&g).unwrap().degree(), 0);
    }

    #[test]
    fn schmid_sum_vanishes(f in small_field(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (sample::ratfunc(&f, 4, &mut r), sample::ratfunc(&f, 4, &mut r));
        prop_assert!(schmid_reciprocity_check(&a, &b).unwrap());
    }
}

fn unit_ratfunc2(f: &Fq, r: &mut SweepRng) -> RatFunc2<FieldElem> {
    sample::ratfunc2(f, 2, 1, r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // along Z: y = x^2 + c·x + d
    #[test]
    fn tame_symbol_relations(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let f = Fq::with_order(p).unwrap();
        let mut r = rng(seed);
        let z = f.zero();
        let (c, d) = (sample::elem(&f, &mut r), sample::elem(&f, &mut r));
        let neg = |e: FieldElem| -e;
        let prime = Poly2::from_terms(&z, &[(0, 1, f.one()), (2, 0, neg(f.one())), (1, 0, neg(c)), (0, 0, neg(d))]);
        let zp = PrimeDivisor::Affine { poly: prime.clone(), certified: true };
        let (a, a2, b) = (unit_ratfunc2(&f, &mut r), unit_ratfunc2(&f, &mut r), unit_ratfunc2(&f, &mut r));
        let k = r.gen_range(0..=2);
        let b = b * RatFunc2::from_poly(prime.clone()).powi(k).unwrap();
        let sym = |x: &RatFunc2<FieldElem>, y: &RatFunc2<FieldElem>| tame_symbol(x, y, &zp);
        let (Ok(ab), Ok(a2b), Ok(prod), Ok(ba)) = (sym(&a, &b), sym(&a2, &b), sym(&(a.clone() * a2.clone()), &b), sym(&b, &a)) else {
            return Err(TestCaseError::reject("restriction out of budget"));
        };
        prop_assert!(prod.same_as(&(ab.rep.clone() * a2b.rep)));
        prop_assert!(ab.same_as(&ba.rep.inv().unwrap()));
        let bb = sym(&b, &b).unwrap();
        prop_assert!(bb.same_as(&RatFunc2::constant(f.from_i64(-1)).powi(k).unwrap()));
        let g = RatFunc2::from_poly(prime) * a.clone();
        match sym(&g, &(g.one_like() - g.clone())) {
            Ok(s) => prop_assert!(s.is_one()),
            Err(Error::BudgetExceeded(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
