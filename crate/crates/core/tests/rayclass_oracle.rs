use ramify::algebra::Fq;
use ramify::rayclass::{closed_form_order, moduli_up_to, places_up_to, ray_class_group, Divisor, Modulus, OracleTables};

#[test]
fn unit_group_presentation_matches_oracle_up_to_degree_four() {
    for (q, want) in [(2u64, 56usize), (3, 178)] {
        let fq = Fq::with_order(q).unwrap();
        let tables = OracleTables::new(fq.clone(), 6).unwrap();
        let ms = moduli_up_to(&fq.zero(), 4);
        assert_eq!(ms.len(), want);
        for d in &ms {
            let a = ray_class_group(fq.clone(), d).unwrap();
            let b = tables.compute(d, 6).unwrap();
            assert_eq!(a.group.invariant_factors, b.invariant_factors, "q={} D={}", q, d);
            assert_eq!(a.order(), closed_form_order(q, d), "q={} D={}", q, d);
        }
    }
}

#[test]
fn fixture_two_infinity_over_f2() {
    let fq = Fq::with_order(2).unwrap();
    let d = Modulus::new(Divisor::point(places_up_to(&fq.zero(), 1).into_iter().find(|v| v.poly().is_none()).unwrap(), 2))
        .unwrap();
    assert_eq!(ray_class_group(fq, &d).unwrap().order(), 2);
}

// D ≤ D' gives a surjection C(P^1, D') -> C(P^1, D)
#[test]
fn enlarging_the_modulus_only_grows_the_group() {
    for q in [2u64, 3] {
        let fq = Fq::with_order(q).unwrap();
        let places = places_up_to(&fq.zero(), 1);
        for d in moduli_up_to(&fq.zero(), 3) {
            let small = ray_class_group(fq.clone(), &d).unwrap().order();
            for v in &places {
                let bigger = Modulus::new(d.divisor().add(&Divisor::point(v.clone(), 1))).unwrap();
                let big = ray_class_group(fq.clone(), &bigger).unwrap().order();
                assert_eq!(big % small, 0, "q={} |C({})| = {} vs |C({})| = {}", q, d, small, bigger, big);
            }
        }
    }
}
