//! Acceptance criteria 1-10. Run with `cargo test -p ramify-cli --test acceptance`;
//! pass criterion numbers as arguments to run a subset.

#[path = "../../core/tests/common/mod.rs"]
mod ghost;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use ramify::algebra::{FieldElem, FiniteField, Fq, Poly2};
use ramify::k2surface::{claim1_table, claim2_table, gersten_check, PrimeDivisor, P2};
use ramify::localfield::{GradedForm, LaurentSeries, EXACT};
use ramify::rayclass::{
    closed_form_order, factorization_check, find_violation, in_congruence, moduli_up_to, ray_class_group,
    s1_characters, schmid_reciprocity_check, Divisor, Modulus, OracleTables, Place,
};
use ramify::rsw::{refined_artin, surject_preimage};
use ramify::sample::{self, SweepRng};
use ramify::witt::{ConductorOracle, WittVector};
use ramify::Error;

type Outcome = Result<String, String>;

fn fq(q: u64) -> Fq {
    Fq::with_order(q).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{}: {}", ctx, e)
}

fn agree(a: &WittVector<FieldElem>, b: &WittVector<FieldElem>) -> bool {
    a.len() == b.len() && a.comps().iter().zip(b.comps()).all(|(x, y)| x.agrees_with(y))
}

fn witt_ring() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.witt");
    let mut n = 0;
    for (p, s) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2)] {
        let f = fq(p);
        let one = WittVector::new(
            (0..s).map(|i| LaurentSeries::constant(if i == 0 { f.one() } else { f.zero() }, EXACT)).collect(),
        )
        .unwrap();
        for _ in 0..500 {
            let [a, b, c] = [0, 1, 2].map(|_| sample::witt(&f, s, 2, EXACT, &mut rng));
            let ctx = format!("p={} s={} a={} b={} c={}", p, s, a, b, c);
            let run = || -> ramify::Result<Vec<(&str, bool)>> {
                let ab = a.add(&b)?;
                let m_ab = a.mul(&b)?;
                Ok(vec![
                    ("add assoc", agree(&ab.add(&c)?, &a.add(&b.add(&c)?)?)),
                    ("mul assoc", agree(&m_ab.mul(&c)?, &a.mul(&b.mul(&c)?)?)),
                    ("add comm", agree(&ab, &b.add(&a)?)),
                    ("mul comm", agree(&m_ab, &b.mul(&a)?)),
                    ("distrib", agree(&a.mul(&b.add(&c)?)?, &m_ab.add(&a.mul(&c)?)?)),
                    ("unit", agree(&a.mul(&one)?, &a)),
                    ("inverse", a.add(&a.neg())?.is_zero()),
                    ("ghost add", agree(&ab, &ghost::oracle(ghost::Op::Add, &a, &b, &f))),
                    ("ghost mul", agree(&m_ab, &ghost::oracle(ghost::Op::Mul, &a, &b, &f))),
                    ("ghost neg", agree(&a.neg(), &ghost::oracle(ghost::Op::Neg, &a, &b, &f))),
                ])
            };
            for (what, ok) in run().map_err(err(&ctx))? {
                ensure(ok, || format!("{} fails at {}", what, ctx))?;
            }
            n += 1;
        }
    }
    Ok(format!("{} triples, 10 identities each", n))
}

/// Every Σ_{j=-budget}^{top} c_j t^j with c_j in F_q.
fn laurent_polys(f: &Fq, budget: i64, top: i64) -> Vec<LaurentSeries<FieldElem>> {
    let q = f.q() as usize;
    let len = (top + budget + 1) as u32;
    (0..q.pow(len))
        .map(|mut idx| {
            let mut c = Vec::new();
            for _ in 0..len {
                c.push(f.zero().element_at((idx % q) as u64));
                idx /= q;
            }
            LaurentSeries::from_coeffs(&f.zero(), -budget, c, EXACT, "t")
        })
        .collect()
}

// The constant term of the bottom slot is left out: it changes w by an integral,
// carry-free summand and cannot move the conductor.
fn conductor_scan() -> Outcome {
    let mut n = 0;
    for q in [2u64, 3] {
        let f = fq(q);
        let space: Vec<FieldElem> = f.elements().collect();
        let oracle = ConductorOracle::new(&f.zero(), "t", 4, &space).map_err(err(q))?;
        let low = laurent_polys(&f, 4, -1);
        for s in [1usize, 2] {
            let tops: Vec<Option<LaurentSeries<FieldElem>>> =
                if s == 1 { vec![None] } else { laurent_polys(&f, 4, 0).into_iter().map(Some).collect() };
            for top in &tops {
                for a0 in &low {
                    let w = WittVector::new(top.iter().cloned().chain([a0.clone()]).collect()).unwrap();
                    let art = w.artin_conductor().map_err(err(&w))?;
                    let oracle = oracle.conductor(&w).map_err(err(&w))?;
                    ensure(art == oracle, || format!("q={} w={}: art {} oracle {}", q, w, art, oracle))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{} Witt vectors agree with the oracle", n))
}

fn filtration() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.filtration");
    let mut n = 0;
    for (p, s) in [(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)] {
        let f = fq(p);
        for _ in 0..1000 {
            let w = sample::witt(&f, s, 6, EXACT, &mut rng);
            for m in 1..=12i64 {
                let got = (|| -> ramify::Result<_> {
                    Ok((w.in_fil(m)?, w.in_fillog(m)?, w.in_fil(m + 1)?, w.in_fillog(m - 1)?))
                })();
                let (fil, log, next, prev) = got.map_err(err(format!("p={} m={} w={}", p, m, w)))?;
                ensure(!fil || log, || format!("fil_{} not in fil^log_{} at {}", m, m, w))?;
                ensure(!log || next, || format!("fil^log_{} not in fil_{} at {}", m, m + 1, w))?;
                ensure(m as u64 % p == 0 || fil == prev, || format!("fil_{} != fil^log_{} at {}", m, m - 1, w))?;
            }
            n += 1;
        }
    }
    Ok(format!("{} samples, levels 1..12", n))
}

/// All vectors whose slot of weight p^i has a polar part of order ≤ 6 / p^i.
fn box_vectors(f: &Fq, s: usize) -> Vec<WittVector<FieldElem>> {
    let p = f.p() as i64;
    let mut out: Vec<Vec<LaurentSeries<FieldElem>>> = vec![vec![]];
    for j in 0..s {
        let budget = 6 / p.pow((s - 1 - j) as u32);
        let slot = laurent_polys(f, budget, -1);
        out = out.iter().flat_map(|pre| slot.iter().map(move |c| [pre.clone(), vec![c.clone()]].concat())).collect();
    }
    out.into_iter().map(|c| WittVector::new(c).unwrap()).collect()
}

fn refined_conductor() -> Outcome {
    let mut injective = 0;
    for q in [2u64, 3] {
        let f = fq(q);
        let max_s = if q == 2 { 3 } else { 2 };
        for s in 1..=max_s {
            for w in box_vectors(&f, s) {
                let best = w.best_form().map_err(err(&w))?;
                let m = best.artin_conductor().map_err(err(&w))?;
                if !(2..=6).contains(&m) {
                    continue;
                }
                let g = refined_artin(&best).map_err(err(&best))?;
                ensure(!g.is_zero() && g.level == m, || format!("q={} w={}: graded form {} at level {}", q, best, g, m))?;
                injective += 1;
            }
        }
    }
    let mut surjective = 0;
    for q in [2u64, 3, 5] {
        let f = fq(q);
        for level in 2..=6 {
            for c in f.elements().filter(|c| *c != f.zero()) {
                let target = GradedForm { level, c_dt: c, c_du: f.zero() };
                let w = surject_preimage(&target).map_err(err(&target))?;
                let m = w.artin_conductor().map_err(err(&w))?;
                let back = refined_artin(&w).map_err(err(&w))?;
                ensure(m == level && back == target, || format!("q={} {} -> {} -> {}", q, target, w, back))?;
                surjective += 1;
            }
        }
    }
    Ok(format!("{} best-form vectors with nonzero leading pair, {} targets round-trip", injective, surjective))
}

fn ray_class_groups() -> Outcome {
    let mut n = 0;
    for q in [2u64, 3, 4] {
        let f = fq(q);
        let tables = OracleTables::new(f.clone(), 6).map_err(err(q))?;
        for d in moduli_up_to(&f.zero(), 4) {
            let a = ray_class_group(f.clone(), &d).map_err(err(&d))?.group;
            let b = tables.compute(&d, 6).map_err(err(&d))?;
            let closed = closed_form_order(q, &d);
            ensure(a.invariant_factors == b.invariant_factors, || format!("q={} D={}: {} vs oracle {}", q, d, a, b))?;
            ensure(a.order() == closed && b.order() == closed, || format!("q={} D={}: closed form {}", q, d, closed))?;
            n += 1;
        }
    }
    let d = Modulus::new(Divisor::point(Place::Infinity, 2)).unwrap();
    let order = ray_class_group(fq(2), &d).map_err(err(&d))?.order();
    ensure(order == 2, || format!("|C(P^1, 2*inf)^0| = {} over F_2", order))?;
    Ok(format!("{} moduli over F_2, F_3, F_4; |C(P^1, 2*inf)^0| = 2", n))
}

fn reciprocity() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.reciprocity");
    let mut n = 0;
    let mut worst = 0;
    for q in [2u64, 3] {
        let f = fq(q);
        for chi in s1_characters(&f, 5).map_err(err(q))? {
            let cond = chi.global_conductor().map_err(err(&chi))?;
            ensure(cond.degree() <= 5, || format!("{} has conductor {}", chi, cond))?;
            let d = Modulus::new(cond.clone()).map_err(err(&cond))?;
            let rep = factorization_check(&chi, &d, 100, &mut rng).map_err(err(&chi))?;
            ensure(rep.passed && rep.trials == 100, || format!("chi = {} at D = {}: {:?}", chi, d, rep.counterexample))?;
            let (v, _) = cond.terms().next().unwrap();
            let smaller = Modulus::new(cond.sub(&Divisor::point(v.clone(), 1))).map_err(err(&cond))?;
            let hit = find_violation(&chi, &smaller, 4).map_err(err(&chi))?;
            let (g, val) = hit.ok_or_else(|| format!("no violation for chi = {} at D' = {}", chi, smaller))?;
            let congruent = in_congruence(&g, &smaller).map_err(err(&g))?;
            ensure(g.height() <= 4 && congruent && val != 0, || format!("bad witness {} for chi = {}", g, chi))?;
            worst = worst.max(g.height());
            n += 1;
        }
    }
    Ok(format!("{} characters; every negative control found a witness of degree <= {}", n, worst))
}

fn schmid() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.schmid");
    for q in [2u64, 3, 5] {
        let f = fq(q);
        for _ in 0..200 {
            let (a, b) = (sample::ratfunc(&f, 4, &mut rng), sample::ratfunc(&f, 4, &mut rng));
            let ok = schmid_reciprocity_check(&a, &b).map_err(err(format!("a={} b={}", a, b)))?;
            ensure(ok, || format!("F_{}: a={} b={}", q, a, b))?;
        }
    }
    Ok("200 pairs each over F_2, F_3, F_5".into())
}

fn gersten() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.gersten");
    let c = [PrimeDivisor::LineAtInfinity];
    let mut resampled = 0;
    for q in [2u64, 3] {
        let f = fq(q);
        let mut done = 0;
        while done < 100 {
            let (a, b) = (sample::ratfunc2(&f, 3, 3, &mut rng), sample::ratfunc2(&f, 3, 3, &mut rng));
            match gersten_check(&a, &b, &c) {
                Err(Error::CommonComponent(_)) => resampled += 1,
                got => {
                    let ok = got.map_err(err(format!("F_{}: a={} b={}", q, a, b)))?;
                    ensure(ok, || format!("F_{}: a={} b={}", q, a, b))?;
                    done += 1;
                }
            }
        }
    }
    Ok(format!("100 pairs each over F_2, F_3 ({} resampled for a common component)", resampled))
}

/// (π, f) = (a·y + c·x^2, b·x + d·y^2) with c·d = 0.
fn coordinates(f: &Fq, r: &mut SweepRng) -> (P2, P2) {
    let (a, b) = (sample::nonzero(f, r), sample::nonzero(f, r));
    let c = sample::elem(f, r);
    let (c, d) = if r.gen_bool(0.5) { (c, f.zero()) } else { (f.zero(), c) };
    let z = f.zero();
    (Poly2::from_terms(&z, &[(0, 1, a), (2, 0, c)]), Poly2::from_terms(&z, &[(1, 0, b), (0, 2, d)]))
}

fn claims() -> Outcome {
    let mut rng = sample::stream(0, "acceptance.claims");
    let mut summary = vec![];
    for p in [3u64, 5] {
        let f = fq(p);
        for which in [1, 2] {
            let (mut done, mut resampled) = (0, 0);
            while done < 20 {
                ensure(resampled < 2000, || format!("claim{} over F_{}: too few admissible instances", which, p))?;
                let (pi, fx) = coordinates(&f, &mut rng);
                let alpha = sample::poly2(&f, 1, &mut rng);
                let (u1, u2) = (P2::constant(sample::nonzero(&f, &mut rng)), P2::constant(sample::nonzero(&f, &mut rng)));
                let e = rng.gen_range(2..=3);
                let got = if which == 1 { claim1_table(&pi, &fx, &u1, &u2, &alpha) } else { claim2_table(&pi, &fx, &u1, &alpha, e) };
                let ctx = || format!("claim{} F_{}: pi={} f={} u1={} u2={} alpha={} e={}", which, p, pi, fx, u1, u2, alpha, e);
                match got {
                    Err(
                        Error::DegenerateConfiguration(_)
                        | Error::RestrictionUndefined(_)
                        | Error::BudgetExceeded(_)
                        | Error::ZeroFunction,
                    ) => resampled += 1,
                    Err(e) => return Err(format!("{}: {}", ctx(), e)),
                    Ok(rep) => {
                        ensure(rep.all_match(), || format!("{}\n{}", ctx(), rep))?;
                        done += 1;
                    }
                }
            }
            summary.push(format!("claim{}/F_{} {} ({} resampled)", which, p, done, resampled));
        }
    }
    Ok(summary.join(", "))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ramify"))
            .args(["selftest", "--seed", "0"])
            .output()
            .map_err(|e| format!("could not run ramify: {}", e))
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || format!("selftest exited with {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "the two reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

const CRITERIA: &[(u32, &str, u64, fn() -> Outcome)] = &[
    (1, "Witt ring axioms and ghost-lift oracle", 30, witt_ring),
    (2, "conductor equals oracle, pole budget 4", 120, conductor_scan),
    (3, "filtration box implications", 10, filtration),
    (4, "refined Artin conductor", 60, refined_conductor),
    (5, "ray class groups vs oracle and closed form", 120, ray_class_groups),
    (6, "reciprocity with modulus", 120, reciprocity),
    (7, "Schmid reciprocity", 30, schmid),
    (8, "Gersten cancellation", 60, gersten),
    (9, "boundary tables", 60, claims),
    (10, "selftest determinism", 60, determinism),
];

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for &(id, name, limit, run) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let got = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let got = got.and_then(|d| {
            if took > Duration::from_secs(limit) {
                Err(format!("{} (over the time limit)", d))
            } else {
                Ok(d)
            }
        });
        let (tag, detail) = match &got {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {}: {} [{:.1}s, limit {}s] {}", id, tag, name, took.as_secs_f64(), limit, detail);
        failed += got.is_err() as usize;
    }
    if failed > 0 {
        println!("{} criteria failed", failed);
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
