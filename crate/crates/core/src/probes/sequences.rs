//! Sequence- and interval-based probes: the Archimedean check, refuters
//! for bounded-monotone and Cauchy convergence, the empty nested and
//! shrinking interval families, and the repeating-decimal demonstration.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::{FieldElement, FieldHandle, FieldKind, FieldOps};
use crate::laurent::{seq_limit, LimitOutcome, SeriesSequence};
use crate::poly::Polynomial;
use crate::probes::cuts::{cut_sqrt2, Cut};
use crate::probes::{ProbeResult, ProbeStatus, Witness, WitnessKind};
use crate::ratfun::{OrderTag, RationalFunction};
use crate::rational::Rational;

/// The rational part an element sits on: the element itself, the value at
/// the order-zero coefficient, or the ratio of leading coefficients.
pub fn standard_part(x: &FieldElement) -> Rational {
    match x {
        FieldElement::Rat(q) => q.clone(),
        // infinite elements have no standard part; zero is a sound stand-in
        // for the bound-picking callers here (they clamp to >= 1 anyway)
        FieldElement::RatFun(f) => {
            if f.valuation().map_or(false, |v| v < 0) {
                Rational::zero()
            } else {
                f.standard_part()
            }
        }
        FieldElement::Laurent(s) => s.coeff(0),
    }
}

/// Property (2): is x exceeded by a natural-number image? Constructive in
/// the rationals and for finite elements; positively infinite elements
/// come back with a certificate good for every n at once.
pub fn archimedean_probe(h: &FieldHandle, x: &FieldElement) -> Result<ProbeResult, Error> {
    let infinite_positive = match x {
        FieldElement::Rat(_) => false,
        FieldElement::RatFun(f) => f.valuation().map_or(false, |v| v < 0) && f.sign() > 0,
        FieldElement::Laurent(s) => {
            if s.is_structural_zero() {
                false
            } else {
                let t = s.leading_term(h.horizon)?;
                t.map_or(false, |t| t.exponent < 0 && t.coefficient.is_positive())
            }
        }
    };
    if infinite_positive {
        let cert = match x {
            FieldElement::RatFun(f) => format!(
                "near-zero valuation {} < 0 with positive sign: x - n keeps the same leading term for every integer n",
                f.valuation().expect("nonzero")
            ),
            FieldElement::Laurent(s) => format!(
                "leading exponent {} < 0 with positive coefficient: x - n keeps the same leading term for every integer n",
                s.leading_term(h.horizon)?.expect("nonzero").exponent
            ),
            FieldElement::Rat(_) => unreachable!(),
        };
        // spot checks backing the symbolic certificate
        for n in [1i64, 1_000, 1_000_000] {
            if h.cmp(x, &h.from_int(n))? != Ordering::Greater {
                return Err(Error::HeuristicInconclusive);
            }
        }
        let w = Witness::new(
            WitnessKind::BiggerValue,
            vec![x.clone()],
            format!("{cert}; verified exactly against n = 1, 10^3, 10^6"),
        );
        return Ok(ProbeResult::new(2, h.name(), ProbeStatus::FailsWitnessed)
            .with_witnesses(vec![w])
            .with_transcript(format!(
                "no natural number exceeds {}",
                h.format(x)
            )));
    }
    // finite (or negatively infinite) elements are dominated constructively
    let std = standard_part(x);
    let mut n = std.floor_int() + BigInt::from(1);
    if n < BigInt::from(1) {
        n = BigInt::from(1);
    }
    let bound = h.from_rational(&Rational::new(n.clone(), BigInt::from(1))?);
    if h.cmp(&bound, x)? != Ordering::Greater {
        return Err(Error::HeuristicInconclusive);
    }
    Ok(ProbeResult::new(2, h.name(), ProbeStatus::HoldsConstructive).with_transcript(
        format!("n = {} exceeds {} (exact comparison)", n, h.format(x)),
    ))
}

/// Property (10) refuter in a non-Archimedean field: the sequence 1, 2, 3,
/// ... is increasing and bounded above by omega, yet no candidate is its
/// limit — consecutive terms differ by 1, so at most one term comes within
/// 1/2 of any candidate.
pub fn monotone_refuter(h: &FieldHandle, candidate: &FieldElement) -> Result<Witness, Error> {
    if h.kind == FieldKind::Rationals {
        return Err(Error::UnsupportedField(h.name()));
    }
    let infinite = super::maps::is_infinite(h, candidate)?;
    if infinite {
        return Ok(Witness::new(
            WitnessKind::SeparatedTail,
            vec![candidate.clone()],
            format!(
                "|{} - n| stays infinite for every n: an infinite element minus an integer keeps its leading term",
                h.format(candidate)
            ),
        ));
    }
    let std = standard_part(candidate);
    let n = std.floor_int() + BigInt::from(2);
    let n_rat = Rational::new(n.clone(), BigInt::from(1))?;
    let half = h.from_rational(&Rational::ratio(1, 2));
    let term = h.from_rational(&n_rat);
    if h.eq(candidate, &term)? {
        return Err(Error::HeuristicInconclusive);
    }
    let gap = h.abs(&h.sub(candidate, &term)?)?;
    if h.cmp(&gap, &half)? != Ordering::Greater {
        return Err(Error::HeuristicInconclusive);
    }
    Ok(Witness::new(
        WitnessKind::SeparatedTail,
        vec![candidate.clone(), term.clone()],
        format!(
            "|{} - {}| > 1/2 exactly, and every later term is even further; consecutive terms differ by 1, so no tail stays within 1/2 of the candidate",
            h.format(candidate),
            n
        ),
    ))
}

/// Re-checks a monotone/Cauchy separation witness built over terms n.
pub fn verify_separation_witness(h: &FieldHandle, w: &Witness) -> Result<bool, Error> {
    if w.elements.len() < 2 {
        // classification certificate: candidate is infinite
        return super::maps::is_infinite(h, &w.elements[0]);
    }
    let half = h.from_rational(&Rational::ratio(1, 2));
    if h.eq(&w.elements[0], &w.elements[1])? {
        return Ok(false);
    }
    let gap = h.abs(&h.sub(&w.elements[0], &w.elements[1])?)?;
    Ok(h.cmp(&gap, &half)? == Ordering::Greater)
}

/// The increasing dyadic approximants `a_n` of the sqrt2 gap.
pub fn sqrt2_lower_approximant(n: u32) -> Rational {
    let cut = cut_sqrt2(FieldHandle::rationals());
    cut.dyadic_pair(n).expect("rational bracket").0
}

fn sqrt2_pair(cut: &Cut, n: u32) -> (Rational, Rational) {
    cut.dyadic_pair(n).expect("rational bracket")
}

/// Property (11)/(10)/(17)/(18) refuter in the rationals: the dyadic
/// sqrt2 approximants form a Cauchy, increasing, bounded sequence whose
/// intervals [a_n, b_n] are nested with lengths 2^-n, yet any rational
/// candidate is eventually separated / excluded.
///
/// Returns the witness plus the level at which the exclusion is certified.
pub fn cauchy_refuter_rationals(candidate: &Rational) -> Result<Witness, Error> {
    let cut = cut_sqrt2(FieldHandle::rationals());
    // separation radius: |c^2 - 2|/8 within the bracket, 1/2 outside
    let inside = *candidate >= Rational::zero() && *candidate <= Rational::from_int(3);
    let d = if inside {
        let c2 = candidate * candidate;
        (&c2 - &Rational::from_int(2))
            .abs()
            .checked_div(&Rational::from_int(8))?
    } else {
        Rational::ratio(1, 2)
    };
    if d.is_zero() {
        // cannot happen: no rational squares to 2
        return Err(Error::NotAGap);
    }
    for n in 1..=64u32 {
        let (a, b) = sqrt2_pair(&cut, n);
        let dist = if *candidate < a {
            &a - candidate
        } else if *candidate > b {
            candidate - &b
        } else {
            continue;
        };
        if dist >= d {
            // all later terms stay inside [a_n, b_n], so every one of them
            // is at least `dist >= d` away from the candidate
            for m in [n, n + 1, n + 5] {
                let (am, _) = sqrt2_pair(&cut, m);
                if (&am - candidate).abs() < d {
                    return Err(Error::HeuristicInconclusive);
                }
            }
            return Ok(Witness::new(
                WitnessKind::SeparatedTail,
                vec![
                    FieldElement::Rat(candidate.clone()),
                    FieldElement::Rat(a.clone()),
                    FieldElement::Rat(b.clone()),
                    FieldElement::Rat(d.clone()),
                ],
                format!(
                    "every term from level {n} on lies in [{a}, {b}], and {candidate} is {dist} away from that interval (at least the separation {d})"
                ),
            ));
        }
    }
    Err(Error::HeuristicInconclusive)
}

/// Re-checks a rational separation witness: candidate, interval, radius.
pub fn verify_rational_separation(w: &Witness) -> bool {
    let get = |i: usize| w.elements[i].as_rat().cloned();
    let (Some(c), Some(a), Some(b), Some(d)) = (get(0), get(1), get(2), get(3)) else {
        return false;
    };
    let dist = if c < a {
        &a - &c
    } else if c > b {
        &c - &b
    } else {
        return false;
    };
    dist >= d && d.is_positive()
}

/// Property (11) refuter in the rational-function field: the partial sums
/// of sum eps^k / k! form a Cauchy sequence (tails are higher powers of
/// eps) whose limit is not a rational function. Any candidate disagrees
/// with the factorial coefficients at some order, which separates the tail.
pub fn cauchy_refuter_ratfun(
    h: &FieldHandle,
    candidate: &RationalFunction,
) -> Result<Witness, Error> {
    let expansion = candidate.to_laurent()?;
    let lower = expansion.lower_bound().min(0);
    // target coefficients: 1/k! for k >= 1, zero elsewhere
    let target = |k: i64| {
        if k >= 1 {
            Rational::one()
                .checked_div(&Rational::factorial(k as u64))
                .expect("nonzero factorial")
        } else {
            Rational::zero()
        }
    };
    let mut first_diff = None;
    for k in lower..=h.horizon {
        if expansion.coeff(k) != target(k) {
            first_diff = Some(k);
            break;
        }
    }
    let Some(k0) = first_diff else {
        return Err(Error::HeuristicInconclusive);
    };
    let gap_coeff = (&target(k0) - &expansion.coeff(k0)).abs();
    // separation: half the eventual leading term of s_n - candidate
    let half_gap = gap_coeff.checked_div(&Rational::from_int(2))?;
    let delta = RationalFunction::new(
        Polynomial::monomial(half_gap, k0.max(0) as usize),
        if k0 < 0 {
            Polynomial::monomial(Rational::one(), (-k0) as usize)
        } else {
            Polynomial::one()
        },
        OrderTag::NearZero,
    )?;
    // exact spot checks past the stabilization index
    let n0 = k0.max(1) as usize;
    for n in [n0 + 1, n0 + 2, n0 + 6] {
        let s_n = factorial_partial_sum(n);
        let diff = s_n.sub(candidate)?.abs();
        if diff.cmp_order(&delta)? != Ordering::Greater {
            return Err(Error::HeuristicInconclusive);
        }
    }
    Ok(Witness::new(
        WitnessKind::SeparatedTail,
        vec![
            FieldElement::RatFun(candidate.clone()),
            FieldElement::RatFun(delta.clone()),
        ],
        format!(
            "the candidate's expansion disagrees with the factorial series at order {k0}; from index {} on, |s_n - candidate| exceeds {} (checked exactly at three indices)",
            n0 + 1,
            delta
        ),
    ))
}

/// s_n = sum_{k=1..n} eps^k / k! as a rational function.
pub fn factorial_partial_sum(n: usize) -> RationalFunction {
    let coeffs: Vec<Rational> = (0..=n)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                Rational::one()
                    .checked_div(&Rational::factorial(k as u64))
                    .expect("nonzero factorial")
            }
        })
        .collect();
    RationalFunction::new(Polynomial::new(coeffs), Polynomial::one(), OrderTag::NearZero)
        .expect("unit denominator")
}

/// Property (18) refuter: an interval [n, omega/n] the candidate escapes.
pub fn nested_refuter(h: &FieldHandle, candidate: &FieldElement) -> Result<Witness, Error> {
    let w = h.omega()?;
    let infinite = super::maps::is_infinite(h, candidate)?;
    let positive = h.sign(candidate)? > 0;
    if infinite && positive {
        // smallest n with n * candidate > omega, found by exact comparison
        // starting from the leading-coefficient estimate
        let std_guess = match candidate {
            FieldElement::RatFun(f) => {
                if f.valuation() == Some(-1) {
                    let lead = leading_ratio(f);
                    lead.recip()?.floor_int().max(BigInt::from(1))
                } else {
                    BigInt::from(1)
                }
            }
            FieldElement::Laurent(s) => {
                let t = s.leading_term(h.horizon)?.expect("infinite element");
                if t.exponent == -1 {
                    t.coefficient.recip()?.floor_int().max(BigInt::from(1))
                } else {
                    BigInt::from(1)
                }
            }
            FieldElement::Rat(_) => unreachable!("rationals are finite"),
        };
        let mut n = std_guess;
        loop {
            let n_elem = h.from_rational(&Rational::new(n.clone(), BigInt::from(1))?);
            let scaled = h.mul(&n_elem, candidate)?;
            // equality first: n*candidate may coincide with omega, leaving
            // a lazy zero the comparison scan cannot classify
            if !h.eq(&scaled, &w)? && h.cmp(&scaled, &w)? == Ordering::Greater {
                let upper = h.div(&w, &n_elem)?;
                return Ok(Witness::new(
                    WitnessKind::EscapedInterval,
                    vec![candidate.clone(), n_elem.clone()],
                    format!(
                        "{} > omega/{} (exact: {} * candidate exceeds omega), so the candidate escapes [{}, omega/{}]; omega/{} = {}",
                        h.format(candidate),
                        n,
                        n,
                        n,
                        n,
                        n,
                        h.format(&upper)
                    ),
                ));
            }
            n += 1;
        }
    }
    // finite or non-positive candidates fail the lower bound
    let std = standard_part(candidate);
    let mut n = std.floor_int() + BigInt::from(1);
    if n < BigInt::from(1) {
        n = BigInt::from(1);
    }
    let n_elem = h.from_rational(&Rational::new(n.clone(), BigInt::from(1))?);
    if h.cmp(candidate, &n_elem)? != Ordering::Less {
        return Err(Error::HeuristicInconclusive);
    }
    Ok(Witness::new(
        WitnessKind::EscapedInterval,
        vec![candidate.clone(), n_elem],
        format!(
            "{} < {} (exact), so the candidate escapes [{}, omega/{}]",
            h.format(candidate),
            n,
            n,
            n
        ),
    ))
}

fn leading_ratio(f: &RationalFunction) -> Rational {
    let tn = f.num().trailing_coeff().cloned().unwrap_or_else(Rational::zero);
    let td = f.den().trailing_coeff().cloned().unwrap_or_else(Rational::one);
    tn.checked_div(&td).expect("nonzero trailing coefficient")
}

/// Re-checks a nested-interval witness: the candidate must lie below n or
/// above omega/n.
pub fn verify_nested_witness(h: &FieldHandle, w: &Witness) -> Result<bool, Error> {
    let (candidate, n_elem) = (&w.elements[0], &w.elements[1]);
    if h.cmp(candidate, n_elem)? == Ordering::Less {
        return Ok(true);
    }
    let upper = h.div(&h.omega()?, n_elem)?;
    Ok(h.cmp(candidate, &upper)? == Ordering::Greater)
}

/// Property (17), constructive side: the common point of a shrinking nested
/// family in the Laurent field, as the limit of the left endpoints. The
/// containment and nesting of the scanned prefix are certified exactly.
pub fn shrinking_intersect(
    h: &FieldHandle,
    lo: &SeriesSequence,
    hi: &SeriesSequence,
    scan: usize,
) -> Result<FieldElement, Error> {
    let point = match seq_limit(lo, h.order)? {
        LimitOutcome::Limit(p) => p,
        LimitOutcome::NoStabilization { exponent, i, j } => {
            return Err(Error::NotSummable { index: j.max(i), exponent })
        }
    };
    let p = FieldElement::Laurent(point);
    for n in 0..scan {
        let (a, b) = (FieldElement::Laurent(lo.at(n)), FieldElement::Laurent(hi.at(n)));
        let (a2, b2) = (
            FieldElement::Laurent(lo.at(n + 1)),
            FieldElement::Laurent(hi.at(n + 1)),
        );
        // nesting of consecutive intervals
        if h.sign(&h.sub(&a2, &a)?)? < 0 || h.sign(&h.sub(&b, &b2)?)? < 0 {
            return Err(Error::NotNested(n));
        }
        // containment of the limit point
        if h.sign(&h.sub(&p, &a)?)? < 0 || h.sign(&h.sub(&b, &p)?)? < 0 {
            return Err(Error::NotNested(n));
        }
    }
    Ok(p)
}

/// The repeating-decimal demonstration: in the Laurent field both 1 and
/// 1 - eps lie in every interval [1 - 10^-k, 1], so the decimal address
/// 0.999... names two points; in the rationals every candidate other than
/// 1 is eventually excluded.
pub fn decimal_interval_probe(h: &FieldHandle, k_max: u32) -> Result<ProbeResult, Error> {
    match h.kind {
        FieldKind::Rationals => {
            let one = Rational::one();
            let battery = [
                Rational::ratio(9999, 10_000),
                Rational::ratio(1, 2),
                Rational::from_int(2),
                Rational::ratio(1_000_001, 1_000_000),
            ];
            let mut lines = Vec::new();
            for c in &battery {
                let gap = (&one - c).abs();
                let mut excluded = None;
                for k in 1..=k_max {
                    let width = Rational::one()
                        .checked_div(&Rational::from_int(10).pow(k as i64)?)?;
                    if width < gap {
                        excluded = Some(k);
                        break;
                    }
                }
                let k = excluded.ok_or(Error::HeuristicInconclusive)?;
                lines.push(format!("{c} excluded from [1 - 10^-{k}, 1]"));
            }
            lines.push("1 lies in every interval; the address names exactly one point".into());
            Ok(ProbeResult::new(0, h.name(), ProbeStatus::HoldsConstructive)
                .with_transcript(lines.join("; ")))
        }
        _ => {
            let one = h.one();
            let near = h.sub(&one, &h.epsilon()?)?;
            for k in 1..=k_max {
                let width = h.from_rational(
                    &Rational::one().checked_div(&Rational::from_int(10).pow(k as i64)?)?,
                );
                let lo = h.sub(&one, &width)?;
                // 1 - eps >= 1 - 10^-k: difference 10^-k - eps has a
                // positive rational leading term
                if h.sign(&h.sub(&near, &lo)?)? < 0 || h.sign(&h.sub(&one, &near)?)? < 0 {
                    return Err(Error::HeuristicInconclusive);
                }
            }
            let w = Witness::new(
                WitnessKind::WrongSideElement,
                vec![near.clone(), one.clone()],
                format!(
                    "both 1 and {} lie in [1 - 10^-k, 1] for every k up to {}: the decimal address 0.999... fails to name a unique point",
                    h.format(&near),
                    k_max
                ),
            );
            Ok(ProbeResult::new(0, h.name(), ProbeStatus::FailsWitnessed)
                .with_witnesses(vec![w])
                .with_transcript(format!(
                    "1 and {} are distinct (their difference has sign {}), yet share every decimal interval",
                    h.format(&near),
                    h.sign(&h.sub(&one, &near)?)?
                )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentSeries;

    #[test]
    fn archimedean_examples() {
        let q = FieldHandle::rationals();
        let r = archimedean_probe(&q, &q.from_rational(&Rational::ratio(7, 2))).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
        assert!(r.transcript.contains("n = 4"));
        let rf = FieldHandle::ratfun();
        let r = archimedean_probe(&rf, &rf.omega().unwrap()).unwrap();
        assert_eq!(r.status, ProbeStatus::FailsWitnessed);
        assert!(r.witnesses[0].certificate.contains("valuation -1"));
        let l = FieldHandle::laurent();
        let w = l.omega().unwrap();
        let w2 = l.mul(&w, &w).unwrap();
        let r = archimedean_probe(&l, &w2).unwrap();
        assert_eq!(r.status, ProbeStatus::FailsWitnessed);
        assert!(r.witnesses[0].certificate.contains("exponent -2"));
        // finite elements of the big fields are still dominated
        let r = archimedean_probe(&l, &l.epsilon().unwrap()).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
    }

    #[test]
    fn monotone_refuter_examples() {
        let l = FieldHandle::laurent();
        let w = monotone_refuter(&l, &l.omega().unwrap()).unwrap();
        assert!(w.certificate.contains("infinite"));
        assert!(verify_separation_witness(&l, &w).unwrap());
        let w = monotone_refuter(&l, &l.from_int(5)).unwrap();
        // witness index floor(5) + 2 = 7
        assert!(w.certificate.contains("- 7|"));
        assert!(verify_separation_witness(&l, &w).unwrap());
        let c = l
            .add(&l.from_rational(&Rational::ratio(3, 2)), &l.epsilon().unwrap())
            .unwrap();
        let w = monotone_refuter(&l, &c).unwrap();
        assert!(w.certificate.contains("- 3|"));
        assert!(verify_separation_witness(&l, &w).unwrap());
    }

    #[test]
    fn cauchy_refuter_rationals_examples() {
        // candidate 7/5: separation |49/25 - 2|/8 = 1/200
        let w = cauchy_refuter_rationals(&Rational::ratio(7, 5)).unwrap();
        assert_eq!(w.elements[3].as_rat().unwrap(), &Rational::ratio(1, 200));
        assert!(verify_rational_separation(&w));
        // candidate 3/2: separation |9/4 - 2|/8 = 1/32
        let w = cauchy_refuter_rationals(&Rational::ratio(3, 2)).unwrap();
        assert_eq!(w.elements[3].as_rat().unwrap(), &Rational::ratio(1, 32));
        assert!(verify_rational_separation(&w));
        // far outside the bracket
        let w = cauchy_refuter_rationals(&Rational::from_int(-7)).unwrap();
        assert!(verify_rational_separation(&w));
        // a convergent of sqrt2, very close: still separated within 64 levels
        let w = cauchy_refuter_rationals(&Rational::ratio(665_857, 470_832)).unwrap();
        assert!(verify_rational_separation(&w));
    }

    #[test]
    fn cauchy_refuter_ratfun_examples() {
        let h = FieldHandle::ratfun();
        // candidate eps: disagrees at order 2 (coefficient 0 vs 1/2)
        let w = cauchy_refuter_ratfun(&h, &RationalFunction::epsilon(OrderTag::NearZero)).unwrap();
        assert!(w.certificate.contains("order 2"));
        // candidate 0: disagrees at order 1
        let w =
            cauchy_refuter_ratfun(&h, &RationalFunction::from_int(0, OrderTag::NearZero)).unwrap();
        assert!(w.certificate.contains("order 1"));
        // candidate omega: disagrees at order -1 already
        let w =
            cauchy_refuter_ratfun(&h, &RationalFunction::omega(OrderTag::NearZero)).unwrap();
        assert!(w.certificate.contains("order -1"));
    }

    #[test]
    fn factorial_partial_sums_are_cauchy_in_the_order_topology() {
        // |s_m - s_n| is a positive multiple of eps^(min+1): smaller than
        // any positive rational function of valuation <= min
        let s3 = factorial_partial_sum(3);
        let s6 = factorial_partial_sum(6);
        let diff = s6.sub(&s3).unwrap();
        assert_eq!(diff.valuation(), Some(4));
        let eps3 = RationalFunction::epsilon(OrderTag::NearZero)
            .mul(&RationalFunction::epsilon(OrderTag::NearZero))
            .unwrap()
            .mul(&RationalFunction::epsilon(OrderTag::NearZero))
            .unwrap();
        assert_eq!(diff.abs().cmp_order(&eps3).unwrap(), Ordering::Less);
    }

    #[test]
    fn nested_refuter_examples() {
        let l = FieldHandle::laurent();
        let w = nested_refuter(&l, &l.from_int(5)).unwrap();
        assert!(w.certificate.contains("[6, omega/6]"));
        assert!(verify_nested_witness(&l, &w).unwrap());
        let omega = l.omega().unwrap();
        let w = nested_refuter(&l, &omega).unwrap();
        assert!(w.certificate.contains("omega/2"));
        assert!(verify_nested_witness(&l, &w).unwrap());
        let half_omega = l.div(&omega, &l.from_int(2)).unwrap();
        let w = nested_refuter(&l, &half_omega).unwrap();
        assert!(w.certificate.contains("omega/3"));
        assert!(verify_nested_witness(&l, &w).unwrap());
        let shifted = l.sub(&omega, &l.from_int(1_000_000)).unwrap();
        let w = nested_refuter(&l, &shifted).unwrap();
        assert!(w.certificate.contains("omega/2"));
        assert!(verify_nested_witness(&l, &w).unwrap());
    }

    #[test]
    fn shrinking_intersect_examples() {
        let h = FieldHandle::laurent();
        // I_n = [x - eps^n, x + eps^n] with x = 1 + 2 eps
        let x = || {
            LaurentSeries::one().add(
                &LaurentSeries::epsilon().mul(&LaurentSeries::from_int(2)),
            )
        };
        let lo = SeriesSequence::with_bound(
            move |n| x().sub(&LaurentSeries::epsilon_pow(n as i64 + 1)),
            |k| (k.max(0) + 2) as usize,
        );
        let x2 = x;
        let hi = SeriesSequence::with_bound(
            move |n| x2().add(&LaurentSeries::epsilon_pow(n as i64 + 1)),
            |k| (k.max(0) + 2) as usize,
        );
        let p = shrinking_intersect(&h, &lo, &hi, 8).unwrap();
        assert!(h.eq(&p, &FieldElement::Laurent(x())).unwrap());
        // constant intervals [0, 0] intersect at 0
        let z = SeriesSequence::with_bound(|_| LaurentSeries::zero(), |_| 0);
        let p = shrinking_intersect(&h, &z, &z, 8).unwrap();
        assert!(h.is_zero(&p).unwrap());
        // a family that fails nesting is rejected: the upper endpoint jumps
        // back up after the first step
        let widen = SeriesSequence::with_bound(
            |n| LaurentSeries::from_int(if n == 0 { 1 } else { 2 }),
            |_| 1,
        );
        let z2 = SeriesSequence::with_bound(|_| LaurentSeries::zero(), |_| 0);
        assert!(matches!(
            shrinking_intersect(&h, &z2, &widen, 4),
            Err(Error::NotNested(_))
        ));
    }

    #[test]
    fn decimal_examples() {
        let l = FieldHandle::laurent();
        let r = decimal_interval_probe(&l, 50).unwrap();
        assert_eq!(r.status, ProbeStatus::FailsWitnessed);
        assert!(r.witnesses[0].certificate.contains("0.999"));
        let q = FieldHandle::rationals();
        let r = decimal_interval_probe(&q, 50).unwrap();
        assert_eq!(r.status, ProbeStatus::HoldsConstructive);
        assert!(r.transcript.contains("9999/10000 excluded"));
    }
}
