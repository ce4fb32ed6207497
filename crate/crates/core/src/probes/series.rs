//! Series probes: constructive sums in the Laurent field (alternating
//! series, absolute convergence, Cauchy limits) and ratio-test refuters
//! built on the geometric sequence 1/2, 1/4, 1/8, ...

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::field::{FieldElement, FieldHandle, FieldKind, FieldOps};
use crate::laurent::{seq_limit, sum_series, LaurentSeries, LimitOutcome, SeriesSequence, Term};
use crate::probes::{ProbeResult, ProbeStatus, Witness, WitnessKind};
use crate::rational::Rational;

/// Term sequence (-1)^n eps^n for n >= 1 (term 0 is zero): decreasing in
/// absolute value with alternating signs.
pub fn alternating_terms() -> SeriesSequence {
    SeriesSequence::with_bound(
        |n| {
            if n == 0 {
                LaurentSeries::zero()
            } else {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                LaurentSeries::from_terms(vec![Term::new(n as i64, Rational::from_int(sign))])
                    .expect("single term")
            }
        },
        |k| k.max(0) as usize + 1,
    )
}

/// Term sequence eps^n for n >= 1: the absolute values of the alternating
/// terms.
pub fn geometric_eps_terms() -> SeriesSequence {
    SeriesSequence::with_bound(
        |n| {
            if n == 0 {
                LaurentSeries::zero()
            } else {
                LaurentSeries::epsilon_pow(n as i64)
            }
        },
        |k| k.max(0) as usize + 1,
    )
}

/// Property (14) in the Laurent field: the alternating series
/// sum (-1)^n eps^n converges, and its sum equals the closed form
/// -eps/(1+eps) through the configured order; a zero series sums to zero.
pub fn alternating_series_probe(h: &FieldHandle) -> Result<ProbeResult, Error> {
    if h.kind != FieldKind::Laurent {
        return Err(Error::UnsupportedField(h.name()));
    }
    // terms decrease in absolute value: |a_{n+1}| < |a_n| exactly
    for n in 1..8usize {
        let a = alternating_terms().at(n).abs(h.horizon)?;
        let b = alternating_terms().at(n + 1).abs(h.horizon)?;
        if b.cmp_order(&a, h.horizon)? != Ordering::Less {
            return Err(Error::HeuristicInconclusive);
        }
    }
    let total = sum_series(&alternating_terms(), h.order)?;
    let closed = LaurentSeries::epsilon()
        .neg()
        .div(&LaurentSeries::one().add(&LaurentSeries::epsilon()), h.horizon)?;
    if !total.eq_through_order(&closed, h.order) {
        return Err(Error::HeuristicInconclusive);
    }
    // cross-check: (1+eps) * sum = -eps
    let back = total.mul(&LaurentSeries::one().add(&LaurentSeries::epsilon()));
    if !back.eq_through_order(&LaurentSeries::epsilon().neg(), h.order - 1) {
        return Err(Error::HeuristicInconclusive);
    }
    let zero_terms = SeriesSequence::with_bound(|_| LaurentSeries::zero(), |_| 0);
    if !sum_series(&zero_terms, h.order)?.is_structural_zero() {
        return Err(Error::HeuristicInconclusive);
    }
    Ok(ProbeResult::new(14, h.name(), ProbeStatus::HoldsConstructive).with_transcript(format!(
        "sum of (-1)^n eps^n equals -eps/(1+eps): {} (verified coefficientwise and by multiplying back); zero series sums to 0",
        total.display(8)
    )))
}

/// Property (15) in the Laurent field: whenever sum |a_n| converges, so
/// does sum a_n — exhibited on the alternating battery, where both sums
/// are computed exactly and |sum a_n| <= sum |a_n|.
pub fn absolute_convergence_probe(h: &FieldHandle) -> Result<ProbeResult, Error> {
    if h.kind != FieldKind::Laurent {
        return Err(Error::UnsupportedField(h.name()));
    }
    let abs_sum = sum_series(&geometric_eps_terms(), h.order)?;
    // closed form eps/(1-eps)
    let closed = LaurentSeries::epsilon()
        .div(&LaurentSeries::one().sub(&LaurentSeries::epsilon()), h.horizon)?;
    if !abs_sum.eq_through_order(&closed, h.order) {
        return Err(Error::HeuristicInconclusive);
    }
    let signed_sum = sum_series(&alternating_terms(), h.order)?;
    // the triangle inequality certificate: |sum a_n| <= sum |a_n|
    if signed_sum
        .abs(h.horizon)?
        .cmp_order(&abs_sum, h.horizon)?
        == Ordering::Greater
    {
        return Err(Error::HeuristicInconclusive);
    }
    // second battery: a_n = eps^n / n! (positive terms, so the two sums agree)
    let factorial_terms = SeriesSequence::with_bound(
        |n| {
            if n == 0 {
                LaurentSeries::zero()
            } else {
                LaurentSeries::from_terms(vec![Term::new(
                    n as i64,
                    Rational::one()
                        .checked_div(&Rational::factorial(n as u64))
                        .expect("nonzero factorial"),
                )])
                .expect("single term")
            }
        },
        |k| k.max(0) as usize + 1,
    );
    let fact_sum = sum_series(&factorial_terms, h.order)?;
    if fact_sum.coeff(3) != Rational::ratio(1, 6) {
        return Err(Error::HeuristicInconclusive);
    }
    Ok(ProbeResult::new(15, h.name(), ProbeStatus::HoldsConstructive).with_transcript(format!(
        "sum |(-1)^n eps^n| = eps/(1-eps) converges and the signed sum converges too, with |sum| <= sum of absolute values; factorial battery sums to {}",
        fact_sum.display(6)
    )))
}

/// Property (11) in the Laurent field, constructive side: limits of
/// Cauchy sequences with explicit stabilization bounds, each verified
/// against a closed form.
pub fn cauchy_battery_laurent(h: &FieldHandle) -> Result<ProbeResult, Error> {
    if h.kind != FieldKind::Laurent {
        return Err(Error::UnsupportedField(h.name()));
    }
    let mut lines = Vec::new();
    // geometric partial sums s_n = 1 + eps + ... + eps^n -> 1/(1-eps)
    let geo = SeriesSequence::with_bound(
        |n| {
            let terms = (0..=n as i64)
                .map(|k| Term::new(k, Rational::one()))
                .collect();
            LaurentSeries::from_terms(terms).expect("distinct exponents")
        },
        |k| k.max(0) as usize,
    );
    // Cauchy certificate in the ultrametric norm: |s_m - s_n| = 2^-(n+1)
    let diff = geo.at(9).sub(&geo.at(5));
    if diff.norm(h.horizon)? != Rational::pow2(-6) {
        return Err(Error::HeuristicInconclusive);
    }
    let limit = match seq_limit(&geo, h.order)? {
        LimitOutcome::Limit(l) => l,
        LimitOutcome::NoStabilization { exponent, i, j } => {
            return Err(Error::NotSummable { index: j.max(i), exponent })
        }
    };
    let closed = LaurentSeries::one()
        .sub(&LaurentSeries::epsilon())
        .recip(h.horizon)?;
    if !limit.eq_through_order(&closed, h.order) {
        return Err(Error::HeuristicInconclusive);
    }
    lines.push(format!(
        "geometric partial sums converge to 1/(1-eps) = {}",
        limit.display(6)
    ));
    // alternating partial sums -> -eps/(1+eps)
    let alt = alternating_terms().partial_sums();
    let limit = match seq_limit(&alt, h.order)? {
        LimitOutcome::Limit(l) => l,
        LimitOutcome::NoStabilization { exponent, i, j } => {
            return Err(Error::NotSummable { index: j.max(i), exponent })
        }
    };
    let closed = LaurentSeries::epsilon()
        .neg()
        .div(&LaurentSeries::one().add(&LaurentSeries::epsilon()), h.horizon)?;
    if !limit.eq_through_order(&closed, h.order) {
        return Err(Error::HeuristicInconclusive);
    }
    lines.push(format!(
        "alternating partial sums converge to -eps/(1+eps) = {}",
        limit.display(6)
    ));
    // a constant sequence converges to its value
    let constant = SeriesSequence::with_bound(|_| LaurentSeries::from_int(7), |_| 0);
    match seq_limit(&constant, h.order)? {
        LimitOutcome::Limit(l) if l.eq_through_order(&LaurentSeries::from_int(7), h.order) => {
            lines.push("constant sequence 7, 7, ... converges to 7".to_string());
        }
        _ => return Err(Error::HeuristicInconclusive),
    }
    Ok(ProbeResult::new(11, h.name(), ProbeStatus::HoldsConstructive)
        .with_transcript(lines.join("; ")))
}

/// s_n = sum_{k=0..n} 1/k!, via the integer recurrence A_n = n*A_{n-1} + 1
/// over the common denominator n! (avoids per-term rational gcds).
pub fn factorial_sum(n: u32) -> Rational {
    let mut a = BigInt::from(1);
    let mut fact = BigInt::from(1);
    for k in 1..=n as u64 {
        a = a * k + 1;
        fact *= k;
    }
    Rational::new(a, fact).expect("positive factorial")
}

/// s_n = sum_{k=1..n} 2^-k = 1 - 2^-n: the partial sums of the sequence
/// whose consecutive ratios are exactly 1/2.
pub fn halving_partial_sum(n: u32) -> Rational {
    &Rational::one() - &Rational::pow2(-(n as i64))
}

/// Property (16) refuter in a non-Archimedean field: the ratios of
/// sum 2^-k are exactly 1/2, yet no candidate is the sum — consecutive
/// partial sums differ by a positive rational, which exceeds eps, so at
/// most one partial sum comes within eps of any candidate.
pub fn ratio_test_refuter(h: &FieldHandle, candidate: &FieldElement) -> Result<Witness, Error> {
    if h.kind == FieldKind::Rationals {
        return Err(Error::UnsupportedField(h.name()));
    }
    let eps = h.epsilon()?;
    let mut separated = Vec::new();
    let mut close = Vec::new();
    for n in 1..=24u32 {
        let s_n = h.from_rational(&halving_partial_sum(n));
        // equality first: the difference of coincident elements is a lazy
        // zero with no leading term for the comparison to find
        if h.eq(candidate, &s_n)? {
            close.push(n);
            continue;
        }
        let gap = h.abs(&h.sub(candidate, &s_n)?)?;
        if h.cmp(&gap, &eps)? == Ordering::Greater {
            separated.push(n);
        } else {
            close.push(n);
        }
    }
    if separated.len() < 3 || close.len() > 1 {
        return Err(Error::HeuristicInconclusive);
    }
    let shown: Vec<String> = separated.iter().take(3).map(|n| n.to_string()).collect();
    Ok(Witness::new(
        WitnessKind::SeparatedTail,
        vec![candidate.clone(), eps],
        format!(
            "term ratios are exactly 1/2, but |candidate - s_n| > eps at n = {} (and every index but at most one: consecutive partial sums differ by 2^-(n+1) > 2*eps)",
            shown.join(", ")
        ),
    ))
}

/// Re-checks a non-Archimedean ratio-test witness: the candidate must be
/// more than eps away from at least 23 of the first 24 partial sums.
pub fn verify_ratio_witness(h: &FieldHandle, w: &Witness) -> Result<bool, Error> {
    let candidate = &w.elements[0];
    let eps = h.epsilon()?;
    let mut hits = 0;
    for n in 1..=24u32 {
        let s_n = h.from_rational(&halving_partial_sum(n));
        if h.eq(candidate, &s_n)? {
            continue;
        }
        let gap = h.abs(&h.sub(candidate, &s_n)?)?;
        if h.cmp(&gap, &eps)? == Ordering::Greater {
            hits += 1;
        }
    }
    Ok(hits >= 23)
}

/// Property (16) refuter in the rationals: the series sum 1/k! has term
/// ratios 1/(k+1) <= 1/2 from k = 1 on, but its sum (Euler's number) is
/// irrational, and the classical factorial argument turns any rational
/// candidate p/q into an exact separation from the tail of partial sums.
pub fn ratio_test_refuter_rationals(candidate: &Rational) -> Result<Witness, Error> {
    let q = candidate
        .denom()
        .to_u64()
        .filter(|&q| q <= 1_000)
        .ok_or(Error::HeuristicInconclusive)? as u32;
    let s = factorial_sum;
    let s_q = s(q);
    // q! * (candidate - s_q) is an integer: q! * s_q clears every
    // denominator up to q!, and q divides q!.
    let qfact = Rational::factorial(q as u64);
    let t = &qfact * &(candidate - &s_q);
    if !t.is_integer() {
        return Err(Error::HeuristicInconclusive);
    }
    let t_int: BigInt = t.numer().clone();
    let (delta, reason) = if t_int <= BigInt::from(0) {
        // candidate <= s_q while every later partial sum is at least
        // s_{q+1} = s_q + 1/(q+1)!
        (
            Rational::one()
                .checked_div(&Rational::factorial(q as u64 + 1))?,
            format!("candidate <= s_{q}, and s_n >= s_{q} + 1/({q}+1)! for n > {q}"),
        )
    } else if q >= 2 {
        // candidate >= s_q + 1/q!, while the tail past s_q is strictly
        // below 1/(q * q!): the gap is at least (q-1)/(q * q!)
        let delta = Rational::new(
            BigInt::from(q - 1),
            BigInt::from(q) * qfact.numer().clone(),
        )?;
        (
            delta,
            format!(
                "candidate >= s_{q} + 1/{q}!, and s_n - s_{q} < 1/({q} * {q}!) for every n"
            ),
        )
    } else {
        // q = 1 and candidate > s_1 = 2: an integer candidate is >= 3,
        // above every partial sum (all are below s_10 + 10^-6 < 3)
        let upper = &s(10) + &Rational::new(BigInt::from(1), BigInt::from(1_000_000))?;
        let delta = candidate - &upper;
        if !delta.is_positive() {
            return Err(Error::HeuristicInconclusive);
        }
        (
            delta,
            "integer candidate exceeds the uniform bound s_10 + 10^-6 on all partial sums"
                .to_string(),
        )
    };
    // exact spot checks on the separated tail
    for n in [q + 1, q + 2, q + 10] {
        if (candidate - &s(n)).abs() < delta {
            return Err(Error::HeuristicInconclusive);
        }
    }
    Ok(Witness::new(
        WitnessKind::SeparatedTail,
        vec![
            FieldElement::Rat(candidate.clone()),
            FieldElement::Rat(delta.clone()),
        ],
        format!(
            "term ratios of sum 1/k! are 1/(k+1) <= 1/2 from k = 1; {q}!*(candidate - s_{q}) is the integer {t_int}, so {reason}; |candidate - s_n| >= {delta} checked exactly at n = {}, {}, {}",
            q + 1,
            q + 2,
            q + 10
        ),
    ))
}

/// Re-checks a rational ratio-test witness by re-deriving the tail indices
/// from the candidate's denominator.
pub fn verify_rational_ratio_witness(w: &Witness) -> bool {
    let (Some(c), Some(delta)) = (w.elements[0].as_rat(), w.elements[1].as_rat()) else {
        return false;
    };
    let Some(q) = c.denom().to_u64().filter(|&q| q <= 1_000) else {
        return false;
    };
    if !delta.is_positive() {
        return false;
    }
    let q = q as u32;
    for n in [q + 1, q + 2, q + 10] {
        let s_n = factorial_sum(n);
        if (c - &s_n).abs() < *delta {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alternating_probe_holds() {
        let h = FieldHandle::laurent();
        let r = alternating_series_probe(&h).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
        assert!(r.transcript.contains("-eps/(1+eps)"));
        // the sum starts -e + e^2 - ...
        assert!(r.transcript.contains("-e + e^2"));
    }

    #[test]
    fn absolute_probe_holds() {
        let h = FieldHandle::laurent();
        let r = absolute_convergence_probe(&h).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
        assert!(r.transcript.contains("eps/(1-eps)"));
    }

    #[test]
    fn cauchy_battery_holds() {
        let h = FieldHandle::laurent();
        let r = cauchy_battery_laurent(&h).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
        assert!(r.transcript.contains("1/(1-eps)"));
        assert!(r.transcript.contains("constant sequence"));
    }

    #[test]
    fn ratio_refuter_non_archimedean() {
        for h in [FieldHandle::ratfun(), FieldHandle::laurent()] {
            // candidate 1 (the real-number value of the sum)
            let w = ratio_test_refuter(&h, &h.one()).unwrap();
            assert!(verify_ratio_witness(&h, &w).unwrap());
            // candidate exactly on a partial sum: still separated elsewhere
            let s3 = h.from_rational(&halving_partial_sum(3));
            let w = ratio_test_refuter(&h, &s3).unwrap();
            assert!(verify_ratio_witness(&h, &w).unwrap());
            // an infinite candidate
            let w = ratio_test_refuter(&h, &h.omega().unwrap()).unwrap();
            assert!(verify_ratio_witness(&h, &w).unwrap());
        }
    }

    #[test]
    fn ratio_refuter_rationals_examples() {
        // candidate below the sum
        let w = ratio_test_refuter_rationals(&Rational::from_int(2)).unwrap();
        assert!(verify_rational_ratio_witness(&w));
        // denominator 2: 5/2 < e
        let w = ratio_test_refuter_rationals(&Rational::ratio(5, 2)).unwrap();
        assert!(verify_rational_ratio_witness(&w));
        // a close convergent of e: 1264/465 (denominator 465)
        let w = ratio_test_refuter_rationals(&Rational::ratio(1264, 465)).unwrap();
        assert!(verify_rational_ratio_witness(&w));
        // integer above the sum
        let w = ratio_test_refuter_rationals(&Rational::from_int(3)).unwrap();
        assert!(w.certificate.contains("uniform bound"));
        assert!(verify_rational_ratio_witness(&w));
        // 8/3 > e: t >= 1 branch with q = 3
        let w = ratio_test_refuter_rationals(&Rational::ratio(8, 3)).unwrap();
        assert!(verify_rational_ratio_witness(&w));
    }

    #[test]
    fn halving_sums_match_closed_form() {
        assert_eq!(halving_partial_sum(1), Rational::ratio(1, 2));
        assert_eq!(halving_partial_sum(3), Rational::ratio(7, 8));
        assert_eq!(halving_partial_sum(10), Rational::ratio(1023, 1024));
    }
}
