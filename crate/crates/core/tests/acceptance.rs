//! Acceptance gate: one check per shipped guarantee, each printing a
//! single pass/fail line. Everything is exact arithmetic; no tolerances.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::cmp::Ordering;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cutpoint::field::{axiom_suite, FieldElement, FieldHandle, FieldKind, FieldOps};
use cutpoint::laurent::{seq_limit, sum_series, LaurentSeries, LimitOutcome, SeriesSequence};
use cutpoint::probes::cuts::{
    cut_halo, cut_laurent_finite, cut_sqrt2, refute_cutpoint, verify_cutpoint_witness, Side,
};
use cutpoint::probes::maps::{bump_sum, contraction_check};
use cutpoint::probes::sequences::{
    decimal_interval_probe, nested_refuter, verify_nested_witness,
};
use cutpoint::probes::series::{
    alternating_terms, factorial_sum, halving_partial_sum, ratio_test_refuter_rationals,
    verify_rational_ratio_witness,
};
use cutpoint::probes::ProbeStatus;
use cutpoint::report::{expected_status, mismatches, render, run_matrix, Format, Status};
use cutpoint::Rational;

const SEED: u64 = 20260823;

fn all_fields() -> [FieldHandle; 3] {
    [
        FieldHandle::rationals(),
        FieldHandle::ratfun(),
        FieldHandle::laurent(),
    ]
}

fn check(ord: bool, msg: String) -> Result<(), String> {
    if ord {
        Ok(())
    } else {
        Err(msg)
    }
}

// 1. Field axioms on 10^3 randomized trials per field.
fn field_axioms() -> Result<(), String> {
    for h in all_fields() {
        let out = axiom_suite(&h, 1000, SEED);
        check(
            out.passed(),
            format!("axiom failure in {}: {:?}", h.name(), out.failure),
        )?;
        check(
            out.inconclusive <= 10,
            format!("{} inconclusive trials in {}", out.inconclusive, h.name()),
        )?;
    }
    Ok(())
}

// 2. Non-Archimedean certificates: w > n and e < 1/n for n in {1, 10^3,
//    10^6}, plus the degree/valuation certificate behind them.
fn non_archimedean_certificates() -> Result<(), String> {
    for h in [FieldHandle::ratfun(), FieldHandle::laurent()] {
        let w = h.omega().map_err(|e| e.to_string())?;
        let eps = h.epsilon().map_err(|e| e.to_string())?;
        for n in [1i64, 1_000, 1_000_000] {
            let bound = h.from_int(n);
            let over = h.cmp(&w, &bound).map_err(|e| e.to_string())?;
            check(
                over == Ordering::Greater,
                format!("w > {n} failed in {}", h.name()),
            )?;
            let inv = h
                .div(&h.one(), &bound)
                .map_err(|e| e.to_string())?;
            let under = h.cmp(&eps, &inv).map_err(|e| e.to_string())?;
            check(
                under == Ordering::Less,
                format!("e < 1/{n} failed in {}", h.name()),
            )?;
        }
        // the certificate is the leading valuation: -1 for w, +1 for e
        let val = |x: &FieldElement| -> Result<i64, String> {
            match x {
                FieldElement::RatFun(f) => f.valuation().ok_or("zero".to_string()),
                FieldElement::Laurent(s) => s
                    .leading_term(h.horizon)
                    .map_err(|e| e.to_string())?
                    .map(|t| t.exponent)
                    .ok_or("zero".to_string()),
                FieldElement::Rat(_) => Err("wrong field".to_string()),
            }
        };
        check(val(&w)? == -1, format!("w valuation in {}", h.name()))?;
        check(val(&eps)? == 1, format!("e valuation in {}", h.name()))?;
    }
    Ok(())
}

// 3. (1 - e) * recip(1 - e) has coefficients (1, 0, 0, ...) through 64.
fn laurent_reciprocal() -> Result<(), String> {
    let s = LaurentSeries::one().sub(&LaurentSeries::epsilon());
    let r = s.recip(128).map_err(|e| e.to_string())?;
    let p = s.mul(&r);
    check(p.coeff(0).is_one(), "constant coefficient is not 1".into())?;
    for k in 1..=64 {
        check(
            p.coeff(k).is_zero(),
            format!("coefficient at exponent {k} is nonzero"),
        )?;
    }
    Ok(())
}

// 4. Rational-function comparison agrees with Laurent comparison of the
//    expansions on 100 seeded random pairs.
fn cross_field_oracle() -> Result<(), String> {
    let rf = FieldHandle::ratfun();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100 {
        let (a, b) = (rf.sample(&mut rng), rf.sample(&mut rng));
        let (f, g) = (a.as_ratfun().unwrap(), b.as_ratfun().unwrap());
        let fa = f.to_laurent().map_err(|e| e.to_string())?;
        let gb = g.to_laurent().map_err(|e| e.to_string())?;
        if f == g {
            check(
                fa.eq_through_order(&gb, 64),
                format!("trial {trial}: equal functions, unequal expansions"),
            )?;
            continue;
        }
        let direct = f.cmp_order(g).map_err(|e| e.to_string())?;
        let expanded = fa.cmp_order(&gb, 128).map_err(|e| e.to_string())?;
        check(
            direct == expanded,
            format!("trial {trial}: {f:?} vs {g:?}: {direct:?} != {expanded:?}"),
        )?;
    }
    Ok(())
}

// 5. Convergence dichotomy: e^n -> 0 exactly; 2^-n has no limit, with a
//    concrete exponent-0 witness.
fn convergence_dichotomy() -> Result<(), String> {
    let powers = SeriesSequence::with_bound(
        |n| LaurentSeries::epsilon_pow(n as i64),
        |k| (k.max(0) + 1) as usize,
    );
    match seq_limit(&powers, 32).map_err(|e| e.to_string())? {
        LimitOutcome::Limit(l) => check(l.is_structural_zero(), "limit of e^n is not 0".into())?,
        LimitOutcome::NoStabilization { .. } => return Err("e^n must converge".into()),
    }
    let halving =
        SeriesSequence::new(|n| LaurentSeries::from_rational(Rational::pow2(-(n as i64))));
    match seq_limit(&halving, 8).map_err(|e| e.to_string())? {
        LimitOutcome::NoStabilization { exponent, i, j } => {
            check(exponent == 0, format!("witness exponent {exponent} != 0"))?;
            check(i < j, "witness indices are not ordered".into())?;
        }
        LimitOutcome::Limit(_) => return Err("2^-n must not converge".into()),
    }
    Ok(())
}

// 6. The alternating geometric series sums to -e/(1+e) through order 32.
fn alternating_sum_closed_form() -> Result<(), String> {
    let sum = sum_series(&alternating_terms(), 32).map_err(|e| e.to_string())?;
    let closed = LaurentSeries::epsilon()
        .neg()
        .div(&LaurentSeries::one().add(&LaurentSeries::epsilon()), 64)
        .map_err(|e| e.to_string())?;
    check(
        sum.eq_through_order(&closed, 32),
        "sum differs from -e/(1+e)".into(),
    )
}

// 7. Gap refuters: 100 seeded candidates per shipped cut each yield a
//    re-verifiable witness; the sqrt2 witness strictly tightens the
//    bracket between the candidate and the gap every time.
fn gap_refuters() -> Result<(), String> {
    let q = FieldHandle::rationals();
    let sqrt2 = cut_sqrt2(q);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100 {
        let cand = q.sample(&mut rng);
        let w = refute_cutpoint(&sqrt2, &cand).map_err(|e| e.to_string())?;
        check(
            verify_cutpoint_witness(&sqrt2, &w).map_err(|e| e.to_string())?,
            format!("sqrt2 trial {trial}: witness failed re-verification"),
        )?;
        // strict tightening: the new endpoint lies strictly between the
        // candidate and the gap, on the candidate's own side
        let side = sqrt2.side_of(&cand).map_err(|e| e.to_string())?;
        let wit = w.elements[0].as_rat().unwrap().clone();
        let c = cand.as_rat().unwrap().clone();
        let in_a = |x: &Rational| x.is_negative() || (&(x * x) - &Rational::from_int(2)).is_negative();
        match side {
            Side::A => check(
                wit > c && in_a(&wit),
                format!("sqrt2 trial {trial}: A-side witness {wit} does not tighten {c}"),
            )?,
            Side::B => check(
                wit < c && !in_a(&wit),
                format!("sqrt2 trial {trial}: B-side witness {wit} does not tighten {c}"),
            )?,
        }
    }
    for cut in [
        cut_halo(FieldHandle::ratfun(), Rational::ratio(3, 2)).map_err(|e| e.to_string())?,
        cut_laurent_finite(FieldHandle::laurent()).map_err(|e| e.to_string())?,
    ] {
        let h = *cut.handle();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for trial in 0..100 {
            let cand = h.sample(&mut rng);
            let w = refute_cutpoint(&cut, &cand).map_err(|e| e.to_string())?;
            check(
                verify_cutpoint_witness(&cut, &w).map_err(|e| e.to_string())?,
                format!("{} trial {trial}: witness failed re-verification", h.name()),
            )?;
        }
    }
    Ok(())
}

// 8. Contraction inequality |f(x)-f(y)| <= (1 - (1/2)/w^2)|x-y| on 10^3
//    sampled pairs including infinite and infinitesimal strata, with
//    f(x) != x certified on every stratum representative.
fn contraction_battery() -> Result<(), String> {
    let l = FieldHandle::laurent();
    let report = contraction_check(&l, 1000, SEED).map_err(|e| e.to_string())?;
    check(
        report.pairs_checked + report.inconclusive == 1000,
        "pair accounting is off".into(),
    )?;
    check(
        report.pairs_checked >= 990,
        format!("only {} conclusive pairs", report.pairs_checked),
    )?;
    check(
        !report.witnesses.is_empty(),
        "no fixed-point-freeness witnesses".into(),
    )?;
    // cross-check in the rational-function field at desk scale
    let rf = FieldHandle::ratfun();
    let report = contraction_check(&rf, 60, SEED).map_err(|e| e.to_string())?;
    check(
        report.pairs_checked == 60,
        "ratfun cross-check lost pairs".into(),
    )
}

// 9. Nested-interval refuter: each listed candidate escapes some [n, w/n].
fn nested_interval_refuter() -> Result<(), String> {
    for h in [FieldHandle::ratfun(), FieldHandle::laurent()] {
        let w = h.omega().map_err(|e| e.to_string())?;
        let eps = h.epsilon().map_err(|e| e.to_string())?;
        let candidates = [
            h.from_int(5),
            w.clone(),
            h.div(&w, &h.from_int(2)).map_err(|e| e.to_string())?,
            h.sub(&w, &h.from_int(1_000_000)).map_err(|e| e.to_string())?,
            h.add(&h.from_rational(&Rational::ratio(3, 2)), &eps)
                .map_err(|e| e.to_string())?,
        ];
        for (i, cand) in candidates.iter().enumerate() {
            let w = nested_refuter(&h, cand).map_err(|e| e.to_string())?;
            check(
                verify_nested_witness(&h, &w).map_err(|e| e.to_string())?,
                format!("{} candidate #{i}: witness failed re-verification", h.name()),
            )?;
        }
    }
    Ok(())
}

// 10. Bump-sum unboundedness in Q: f(a_n) >= n for n <= 10, each bump at
//     most 1, and cutoff certificates validate.
fn bump_sum_unbounded() -> Result<(), String> {
    let cut = cut_sqrt2(FieldHandle::rationals());
    for n in 1..=10u32 {
        let (a_n, _) = cut.dyadic_pair(n).map_err(|e| e.to_string())?;
        let f = bump_sum(&cut, &a_n, n).map_err(|e| e.to_string())?;
        check(
            f.value >= Rational::from_int(n as i64),
            format!("f(a_{n}) = {} < {n}", f.value),
        )?;
    }
    // each individual bump is the depth-k increment; never more than 1
    for x in [
        Rational::from_int(1),
        Rational::ratio(7, 5),
        Rational::ratio(3, 2),
        cut.dyadic_pair(10).map_err(|e| e.to_string())?.0,
    ] {
        let mut prev = Rational::zero();
        for k in 1..=10u32 {
            let val = bump_sum(&cut, &x, k).map_err(|e| e.to_string())?.value;
            let bump = &val - &prev;
            check(
                !bump.is_negative() && bump <= Rational::from_int(1),
                format!("bump {k} at {x} is {bump}"),
            )?;
            prev = val;
        }
    }
    // cutoff certificates: far from the gap the sum freezes at the cutoff
    for x in [Rational::zero(), Rational::from_int(3)] {
        let shallow = bump_sum(&cut, &x, 12).map_err(|e| e.to_string())?;
        let cutoff = shallow
            .cutoff
            .ok_or_else(|| format!("no cutoff for {x}"))?;
        let deep = bump_sum(&cut, &x, 64).map_err(|e| e.to_string())?;
        check(
            shallow.value == deep.value,
            format!("sum at {x} grew past its cutoff {cutoff}"),
        )?;
        check(
            !shallow.certificate.is_empty(),
            "empty cutoff certificate".into(),
        )?;
    }
    Ok(())
}

// 11. Ratio-test failure: partial sums of 2^-n stay pairwise more than e
//     apart in the Laurent field; in Q the q!-certificate against 20
//     seeded candidates p/q lands strictly inside (0, 1).
fn ratio_test_failure() -> Result<(), String> {
    let l = FieldHandle::laurent();
    let eps = l.epsilon().map_err(|e| e.to_string())?;
    let sums: Vec<_> = (1..=32u32)
        .map(|n| l.from_rational(&halving_partial_sum(n)))
        .collect();
    for i in 0..sums.len() {
        for j in i + 1..sums.len() {
            let gap = l
                .abs(&l.sub(&sums[i], &sums[j]).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            check(
                l.cmp(&gap, &eps).map_err(|e| e.to_string())? == Ordering::Greater,
                format!("partial sums {} and {} are within e", i + 1, j + 1),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    use rand::Rng;
    for trial in 0..20 {
        let q = rng.gen_range(2..=30u64);
        let p = rng.gen_range(1..=(4 * q));
        let cand = Rational::ratio(p as i64, q as i64);
        let w = ratio_test_refuter_rationals(&cand).map_err(|e| e.to_string())?;
        check(
            verify_rational_ratio_witness(&w),
            format!("trial {trial}: witness for {cand} failed re-verification"),
        )?;
        // the certificate's engine: q! times the tail of sum 1/n! beyond
        // s_q lies strictly inside (0, 1)
        let q_red = cand.denom().to_u64().expect("small denominator");
        let tail = &factorial_sum(q_red as u32 + 10) - &factorial_sum(q_red as u32);
        let scaled = &Rational::factorial(q_red) * &tail;
        check(
            scaled.is_positive() && scaled < Rational::from_int(1),
            format!("trial {trial}: q! tail {scaled} is not inside (0, 1)"),
        )?;
    }
    Ok(())
}

// 12. Decimal demo: 1 and 1 - e both lie in [1 - 10^-k, 1] for k <= 50 in
//     the Laurent field; in Q every candidate != 1 is eventually excluded.
fn decimal_demo() -> Result<(), String> {
    let l = FieldHandle::laurent();
    let pr = decimal_interval_probe(&l, 50).map_err(|e| e.to_string())?;
    check(
        pr.status == ProbeStatus::FailsWitnessed,
        format!("laurent decimal probe: {:?}", pr.status),
    )?;
    let q = FieldHandle::rationals();
    let pr = decimal_interval_probe(&q, 50).map_err(|e| e.to_string())?;
    check(
        pr.status == ProbeStatus::HoldsConstructive,
        format!("rational decimal probe: {:?}", pr.status),
    )?;
    // explicit exclusion levels for candidates other than 1
    for cand in [
        Rational::ratio(1, 2),
        Rational::ratio(9_999, 10_000),
        Rational::ratio(3, 2),
        Rational::zero(),
    ] {
        let one = Rational::from_int(1);
        let mut tenth = Rational::from_int(1);
        let excluded = (1..=64i64).any(|_| {
            tenth = tenth.checked_div(&Rational::from_int(10)).unwrap();
            let lo = &one - &tenth;
            cand < lo || cand > one
        });
        check(excluded, format!("{cand} never leaves the decimal intervals"))?;
    }
    Ok(())
}

// 13. The full matrix reproduces the expected table, with the four Laurent
//     convergence cells holding, nested intervals failing, and JSON output
//     byte-identical across same-seed runs.
fn matrix_fixture() -> Result<(), String> {
    let fields = all_fields();
    let first = run_matrix(&fields, 123);
    let gaps = mismatches(&first);
    check(gaps.is_empty(), format!("matrix mismatches: {gaps:?}"))?;
    let laurent = first
        .fields
        .iter()
        .find(|f| f.name == "laurent")
        .ok_or("no laurent column")?;
    for n in [11u8, 14, 15, 17] {
        let cell = &laurent.results[n as usize - 1];
        check(
            cell.status == Status::HoldsConstructive,
            format!("laurent property {n}: {:?}", cell.status),
        )?;
    }
    let cell = &laurent.results[17];
    check(
        cell.status == Status::FailsWitnessed && !cell.witnesses.is_empty(),
        "laurent nested intervals must fail with a witness".into(),
    )?;
    check(
        expected_status(FieldKind::Laurent, 18) == Status::FailsWitnessed,
        "expected table disagrees on laurent nested intervals".into(),
    )?;
    let second = run_matrix(&fields, 123);
    check(
        render(&first, Format::Json) == render(&second, Format::Json),
        "same-seed JSON runs are not byte-identical".into(),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("field axioms, 10^3 random trials per field", field_axioms),
        ("non-archimedean certificates for w and e", non_archimedean_certificates),
        ("laurent reciprocal exact through order 64", laurent_reciprocal),
        ("rational-function order matches laurent expansion on 100 pairs", cross_field_oracle),
        ("convergence dichotomy: e^n -> 0, 2^-n diverges", convergence_dichotomy),
        ("alternating series sums to -e/(1+e)", alternating_sum_closed_form),
        ("gap refuters re-verified on 100 candidates per cut", gap_refuters),
        ("contraction inequality on 10^3 pairs, fixed-point free", contraction_battery),
        ("nested-interval refuter on the listed candidates", nested_interval_refuter),
        ("bump sum unbounded with validated cutoffs", bump_sum_unbounded),
        ("ratio test fails: separated sums and q! certificates", ratio_test_failure),
        ("decimal intervals pin 1 in Q but not in Q((e))", decimal_demo),
        ("matrix matches expected table, byte-stable JSON", matrix_fixture),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(()) => println!("criterion {:2}: pass — {name}", i + 1),
            Err(why) => {
                println!("criterion {:2}: FAIL — {name}: {why}", i + 1);
                failures.push(format!("criterion {}: {why}", i + 1));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
