//! Fixed inputs shared by the benchmarks.

use ramify::algebra::{FieldElem, Fq, RatFunc, RatFunc2};
use ramify::expr;
use ramify::rayclass::Modulus;
use ramify::witt::WittVector;

pub fn fq(q: u64) -> Fq {
    Fq::with_order(q).expect("supported field")
}

pub fn witt(q: u64, src: &str) -> WittVector<FieldElem> {
    let f = fq(q);
    expr::witt(src, &f, &f.zero()).expect("valid Witt vector")
}

pub fn modulus(q: u64, src: &str) -> Modulus {
    Modulus::new(expr::divisor(src, &fq(q)).expect("valid divisor")).expect("effective")
}

pub fn ratfunc(q: u64, src: &str) -> RatFunc<FieldElem> {
    expr::ratfunc(src, &fq(q)).expect("valid function")
}

pub fn ratfunc2(q: u64, src: &str) -> RatFunc2<FieldElem> {
    expr::ratfunc2(src, &fq(q)).expect("valid function")
}
