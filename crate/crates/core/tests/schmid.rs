use rand::SeedableRng;
use ramify::algebra::Fq;
use ramify::rayclass::{schmid_local, schmid_places, schmid_terms};
use ramify::sample;

#[test]
fn local_symbols_sum_to_zero() {
    let mut rng = sample::SweepRng::seed_from_u64(11);
    for q in [2u64, 3, 4, 5, 9] {
        let fq = Fq::with_order(q).unwrap();
        for _ in 0..60 {
            let (a, b) = (sample::ratfunc(&fq, 3, &mut rng), sample::ratfunc(&fq, 3, &mut rng));
            let terms = schmid_terms(&a, &b).unwrap();
            let sum: u64 = terms.iter().map(|(_, v)| v).sum();
            assert_eq!(sum % fq.p() as u64, 0, "q={} a={} b={}: {:?}", q, a, b, terms);
        }
    }
}

#[test]
fn places_outside_the_support_contribute_nothing() {
    let mut rng = sample::SweepRng::seed_from_u64(12);
    let fq = Fq::with_order(3).unwrap();
    let everything = ramify::rayclass::places_up_to(&fq.zero(), 2);
    for _ in 0..20 {
        let (a, b) = (sample::ratfunc(&fq, 2, &mut rng), sample::ratfunc(&fq, 2, &mut rng));
        let support = schmid_places(&a, &b).unwrap();
        for v in everything.iter().filter(|v| !support.contains(v)) {
            assert_eq!(schmid_local(&a, &b, v).unwrap(), 0, "a={} b={} at {}", a, b, v);
        }
    }
}
