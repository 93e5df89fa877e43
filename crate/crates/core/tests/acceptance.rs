//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistspin_core::abelian::{
    smith_invariant_factors, AbelianInvariants, Abelianization, IntMatrix,
};
use twistspin_core::decide::{decide_double, decide_iterated, decide_single, Status};
use twistspin_core::finquot::{hom_count_signature, Battery};
use twistspin_core::knotio::{
    braid_closure_presentation, figure_eight_braid, torus_presentation, trefoil_braid, KnotClass,
};
use twistspin_core::spin::{
    central_quotient, eliminated_presentation, iterated_twist_spin, orbifold_presentation,
    torus_center_witness, twist_spin, CenterVerdict, SpinSequence,
};
use twistspin_core::verify::{random_elementary_op, random_matrix, DEFAULT_SEED};
use twistspin_core::{Presentation, Word};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const TREFOIL_TEXT: &str = "gens a b\nrel a b a B A B\nmeridian a\n";

fn knots() -> Vec<(&'static str, Presentation)> {
    vec![
        (
            "trefoil",
            braid_closure_presentation(&trefoil_braid()).unwrap(),
        ),
        (
            "figure-eight",
            braid_closure_presentation(&figure_eight_braid()).unwrap(),
        ),
    ]
}

fn sig(p: &Presentation, battery: &Battery) -> Result<Vec<u64>, String> {
    hom_count_signature(p, battery).map_err(|e| e.to_string())
}

fn seq(v: &[u64]) -> SpinSequence {
    SpinSequence::new(v.to_vec()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn unit_twist_collapse() -> Outcome {
    let battery = Battery::default_battery();
    let free = sig(&Presentation::free(["t"]).unwrap(), &battery)?;
    ensure(free == [2, 3, 6, 6, 8, 12, 24], || {
        format!("free signature {free:?}")
    })?;
    for (name, knot) in knots() {
        let got = sig(&twist_spin(&knot, 1).map_err(|e| e.to_string())?, &battery)?;
        ensure(got == free, || format!("{name}: {got:?}"))?;
    }
    Ok(())
}

fn zero_twist_identity() -> Outcome {
    let battery = Battery::default_battery();
    for (name, knot) in knots() {
        let before = sig(&knot, &battery)?;
        let after = sig(&twist_spin(&knot, 0).map_err(|e| e.to_string())?, &battery)?;
        ensure(before == after, || {
            format!("{name}: {before:?} vs {after:?}")
        })?;
    }
    Ok(())
}

fn coprime_double_spin() -> Outcome {
    let battery = Battery::default_battery();
    let free = sig(&Presentation::free(["t"]).unwrap(), &battery)?;
    let trefoil = &knots()[0].1;
    for s in [[2, 3], [3, 4]] {
        let spun = iterated_twist_spin(trefoil, &seq(&s)).map_err(|e| e.to_string())?;
        let got = sig(&spun, &battery)?;
        ensure(got == free, || format!("{s:?}: {got:?}"))?;
    }
    Ok(())
}

fn central_quotient_oracles() -> Outcome {
    let small = Battery::parse("C2,C3,S3,D4").unwrap();
    let err = |e: twistspin_core::Error| e.to_string();
    for (name, knot) in knots() {
        for s in [[2, 2], [2, 4], [3, 3], [2, 6], [4, 6]] {
            let s = seq(&s);
            let iter = sig(&iterated_twist_spin(&knot, &s).map_err(err)?, &small)?;
            let elim = sig(&eliminated_presentation(&knot, &s).map_err(err)?, &small)?;
            ensure(iter == elim, || {
                format!("{name} ({s}) iterated {iter:?} vs eliminated {elim:?}")
            })?;

            let cq = central_quotient(&knot, &s).map_err(err)?;
            let orb = orbifold_presentation(&knot, s.gcd()).map_err(err)?;
            let (a, b) = (sig(&cq.presentation, &small)?, sig(&orb, &small)?);
            ensure(a == b, || {
                format!("{name} ({s}) quotient {a:?} vs orbifold {b:?}")
            })?;

            let inv = Abelianization::of(&cq.presentation).invariants().clone();
            ensure(inv == AbelianInvariants::cyclic(s.gcd()), || {
                format!("{name} ({s}) abelianizes to {inv}")
            })?;
        }
    }
    Ok(())
}

fn torus_center_sweep() -> Outcome {
    let mut rows = 0;
    for p in 2..=7i64 {
        for q in p + 1..=7 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let knot = torus_presentation(p, q).unwrap();
            let x = Word::generator(knot.generator_index("x").unwrap());
            for m in 2..=12u64 {
                rows += 1;
                let pq = (p * q) as u64;
                let report = torus_center_witness(p, q, m).map_err(|e| e.to_string())?;
                let expect = if pq.is_multiple_of(m) {
                    CenterVerdict::Inconclusive
                } else {
                    CenterVerdict::NonTrivialCenter
                };
                ensure(report.verdict == expect, || {
                    format!("({p},{q},{m}) verdict {}", report.verdict)
                })?;
                ensure(report.formula_image == pq % m, || {
                    format!("({p},{q},{m}) formula {}", report.formula_image)
                })?;

                // independent route: Smith form of the orbifold relation matrix
                let orb = orbifold_presentation(&knot, m).unwrap();
                let abz = Abelianization::of(&orb);
                let mu = orb.meridian().unwrap();
                let snf = abz
                    .cyclic_coordinate(&x.pow(&BigInt::from(p)), mu)
                    .map_err(|e| e.to_string())?;
                ensure(snf == Some(BigInt::from(pq % m)), || {
                    format!("({p},{q},{m}) snf {snf:?}")
                })?;
                ensure(report.agree, || format!("({p},{q},{m}) report disagrees"))?;
            }
        }
    }
    ensure(rows == 121, || format!("{rows} rows"))
}

fn orbifold_abelianization() -> Outcome {
    for (name, knot) in knots() {
        for m in 2..=6 {
            let orb = orbifold_presentation(&knot, m).map_err(|e| e.to_string())?;
            let inv = Abelianization::of(&orb).invariants().clone();
            ensure(
                inv.free_rank == 0 && inv.torsion == [BigInt::from(m)],
                || format!("{name} m={m}: {inv}"),
            )?;
        }
    }
    Ok(())
}

fn decision_table() -> Outcome {
    use Status::*;
    let trefoil = KnotClass::Torus { p: 2, q: 3 };
    let row = |label: &str,
               status: Status,
               rule: &str,
               m: Option<u64>,
               v: twistspin_core::decide::Verdict| {
        ensure(
            v.status == status && v.rule == rule && (m.is_none() || v.m == m),
            || format!("{label}: {} {} {:?}", v.status, v.rule, v.m),
        )
    };
    let dd = |c, a, b| decide_double(c, a, b, None).unwrap();
    row(
        "double trefoil 2,3",
        Trivial,
        "coprime-double-spin",
        None,
        dd(trefoil, 2, 3),
    )?;
    row(
        "double hyperbolic 3,6",
        NonTrivial,
        "central-quotient",
        Some(3),
        dd(KnotClass::Hyperbolic, 3, 6),
    )?;
    row(
        "double trefoil 2,4",
        Unknown,
        "center-unknown",
        None,
        dd(trefoil, 2, 4),
    )?;
    row(
        "double torus(2,5) 4,8",
        Unknown,
        "center-nontrivial",
        None,
        dd(KnotClass::Torus { p: 2, q: 5 }, 4, 8),
    )?;
    row(
        "double satellite 2,4",
        NonTrivial,
        "central-quotient",
        Some(2),
        dd(KnotClass::PrimeSatellite, 2, 4),
    )?;

    row(
        "single trivial 5",
        Trivial,
        "trivial-knot",
        None,
        decide_single(KnotClass::Trivial, 5),
    )?;
    row(
        "single trefoil 1",
        Trivial,
        "unit-twist",
        None,
        decide_single(trefoil, 1),
    )?;
    row(
        "single trefoil 2",
        NonTrivial,
        "nontrivial-twist-spin",
        None,
        decide_single(trefoil, 2),
    )?;

    let di = |c, s: &[u64]| decide_iterated(c, &seq(s), None).unwrap();
    row(
        "iterated hyperbolic 3,6,9",
        NonTrivial,
        "iterated-central-quotient",
        Some(3),
        di(KnotClass::Hyperbolic, &[3, 6, 9]),
    )?;
    row(
        "iterated trefoil 2,3,5",
        Unknown,
        "coprime-iterated-open",
        None,
        di(trefoil, &[2, 3, 5]),
    )?;
    row(
        "iterated trefoil 1,4,4",
        Trivial,
        "unit-twist-stage",
        None,
        di(trefoil, &[1, 4, 4]),
    )
}

/// Determinant by cofactor expansion.
fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let t = &m[0][j] * cofactor_det(&minor);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum()
}

fn snf_properties() -> Outcome {
    let mut square = 0;
    for i in 0..500u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED.wrapping_add(i));
        let m: IntMatrix = random_matrix(&mut rng);
        let (factors, rank) = smith_invariant_factors(&m);
        ensure(
            factors.len() == rank && factors.iter().all(|f| f.is_positive()),
            || format!("#{i}: {factors:?}"),
        )?;
        ensure(
            factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])),
            || format!("#{i}: chain {factors:?}"),
        )?;

        let mut moved = m.clone();
        for _ in 0..100 {
            random_elementary_op(&mut moved, &mut rng);
        }
        ensure(
            smith_invariant_factors(&moved) == (factors.clone(), rank),
            || format!("#{i}: not invariant"),
        )?;

        if m.rows() == m.cols() {
            let d = cofactor_det(&m.to_rows());
            if !d.is_zero() {
                square += 1;
                let prod: BigInt = factors.iter().product();
                ensure(prod == d.abs(), || {
                    format!("#{i}: product {prod} vs det {d}")
                })?;
            }
        }
    }
    ensure(square > 0, || "no nonsingular square case drawn".into())
}

fn random_presentation(rng: &mut impl Rng) -> Presentation {
    let u = rng.gen_range(1..=5);
    let names: Vec<String> = (0..u).map(|i| format!("g{i}")).collect();
    let rels: Vec<Word> = (0..rng.gen_range(0..=4))
        .map(|_| {
            Word::from_pairs((0..rng.gen_range(1..=8)).map(|_| {
                let e: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                (rng.gen_range(0..u), e)
            }))
        })
        .collect();
    let meridian = rng
        .gen_bool(0.7)
        .then(|| Word::generator(rng.gen_range(0..u)));
    Presentation::new(names, rels, meridian).unwrap()
}

/// Homomorphisms into S3 by direct enumeration of permutation pairs.
fn brute_s3_trefoil() -> usize {
    let mut perms = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    perms.push([a, b, c]);
                }
            }
        }
    }
    let mul = |x: [usize; 3], y: [usize; 3]| [y[x[0]], y[x[1]], y[x[2]]];
    let mut n = 0;
    for &a in &perms {
        for &b in &perms {
            if mul(mul(a, b), a) == mul(mul(b, a), b) {
                n += 1;
            }
        }
    }
    n
}

fn round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for i in 0..50 {
        let p = random_presentation(&mut rng);
        let text = p.to_text();
        let back = Presentation::parse(&text).map_err(|e| format!("#{i}: {e}"))?;
        ensure(back == p && back.to_text() == text, || {
            format!("#{i}: {text:?}")
        })?;
    }
    let by_hand = Presentation::parse(TREFOIL_TEXT).unwrap();
    let closure = braid_closure_presentation(&trefoil_braid()).unwrap();
    let battery = Battery::default_battery();
    let (a, b) = (sig(&closure, &battery)?, sig(&by_hand, &battery)?);
    ensure(a == b, || format!("closure {a:?} vs hand-written {b:?}"))?;
    let s3 = sig(&closure, &Battery::parse("S3").unwrap())?[0];
    let brute = brute_s3_trefoil();
    ensure(s3 == 12 && brute == 12, || {
        format!("S3 count {s3}, brute force {brute}")
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "unit twist collapses to Z over the default battery",
            unit_twist_collapse,
        ),
        (
            "zero twist preserves the knot-group signature",
            zero_twist_identity,
        ),
        (
            "coprime double spins of the trefoil look infinite cyclic",
            coprime_double_spin,
        ),
        (
            "iterated = eliminated, central quotient = orbifold, quotient is Z/gcd",
            central_quotient_oracles,
        ),
        (
            "torus center sweep: verdict iff m does not divide pq, formula = SNF",
            torus_center_sweep,
        ),
        ("orbifold groups abelianize to Z/m", orbifold_abelianization),
        ("decision table rows", decision_table),
        (
            "Smith form properties on 500 seeded matrices",
            snf_properties,
        ),
        (
            "text round trips and trefoil closure vs hand-written",
            round_trips,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
