use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ramify::k2surface::{claim1_table, gersten_check, PrimeDivisor};
use ramify::rayclass::{ray_class_group, ray_class_oracle, schmid_reciprocity_check};
use ramify::witt::conductor_oracle;
use ramify_bench::{fq, modulus, ratfunc, ratfunc2, witt};

fn witt_kernels(c: &mut Criterion) {
    let a = witt(3, "[t^-2 + 2*t + O(t^12); t^-5 + t^-1 + 1]");
    let b = witt(3, "[2*t^-1 + t^2 + O(t^12); t^-4 + 2*t]");
    c.bench_function("witt/mul p=3 s=2", |bn| bn.iter(|| black_box(&a).mul(black_box(&b)).unwrap()));
    let w = witt(3, "[t^-3 + t^-1 + O(t^8); 2*t^-4 + t^-2]");
    c.bench_function("witt/artin_conductor p=3 s=2", |bn| bn.iter(|| black_box(&w).artin_conductor().unwrap()));
    let space: Vec<_> = fq(3).elements().collect();
    let w = witt(3, "[t^-3 + t^-1 + O(t^4); 2*t^-4 + t^-2]");
    c.bench_function("witt/conductor_oracle budget 4", |bn| bn.iter(|| conductor_oracle(black_box(&w), 4, &space).unwrap()));
}

fn rayclass_kernels(c: &mut Criterion) {
    let d = modulus(3, "2*inf + (x^2+1)");
    c.bench_function("rayclass/unit group q=3 deg 4", |bn| bn.iter(|| ray_class_group(fq(3), black_box(&d)).unwrap()));
    let d = modulus(2, "2*inf + (x) + (x+1)");
    c.bench_function("rayclass/oracle q=2 deg 4", |bn| bn.iter(|| ray_class_oracle(fq(2), black_box(&d), 6).unwrap()));
    let (a, b) = (ratfunc(5, "(x^3 + 2*x + 1)/(x^2 + 3)"), ratfunc(5, "(x^4 + x)/(x + 2)"));
    c.bench_function("rayclass/schmid q=5", |bn| bn.iter(|| schmid_reciprocity_check(black_box(&a), black_box(&b)).unwrap()));
}

fn k2_kernels(c: &mut Criterion) {
    let (a, b) = (ratfunc2(3, "(x^2 + y + 1)/(x + y^2)"), ratfunc2(3, "(x*y + 2)/(y + 1)"));
    let curves = [PrimeDivisor::LineAtInfinity];
    c.bench_function("k2/gersten q=3", |bn| bn.iter(|| gersten_check(black_box(&a), black_box(&b), &curves).unwrap()));
    let f3 = fq(3);
    let p2 = |s: &str| ramify::expr::poly2(s, &f3).unwrap();
    let (pi, f, u1, u2, alpha) = (p2("y"), p2("x"), p2("1"), p2("2"), p2("y"));
    c.bench_function("k2/claim1 p=3", |bn| bn.iter(|| claim1_table(&pi, &f, &u1, &u2, black_box(&alpha)).unwrap()));
}

criterion_group!(benches, witt_kernels, rayclass_kernels, k2_kernels);
criterion_main!(benches);
