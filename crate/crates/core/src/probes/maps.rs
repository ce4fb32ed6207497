//! Function-based refutations: the contraction map with no fixed point in
//! non-Archimedean fields, its piecewise-linear cousin built from a gap's
//! dyadic approximants in the rationals, and the unbounded bump sum.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::{FieldElement, FieldHandle, FieldKind, FieldOps};
use crate::probes::cuts::Cut;
use crate::probes::{Witness, WitnessKind};
use crate::rational::Rational;

/// True when the element exceeds every natural-number image in magnitude.
pub fn is_infinite(h: &FieldHandle, x: &FieldElement) -> Result<bool, Error> {
    match x {
        FieldElement::Rat(_) => Ok(false),
        FieldElement::RatFun(f) => Ok(f.valuation().map_or(false, |v| v < 0)),
        FieldElement::Laurent(s) => {
            if s.is_structural_zero() {
                return Ok(false);
            }
            Ok(s.leading_term(h.horizon)?.map_or(false, |t| t.exponent < 0))
        }
    }
}

/// The decreasing auxiliary g(x) = 1 - x/(1 + |x|), with values in (0, 2)
/// for finite x.
fn contraction_g(h: &FieldHandle, x: &FieldElement) -> Result<FieldElement, Error> {
    let one = h.one();
    let denom = h.add(&one, &h.abs(x)?)?;
    h.sub(&one, &h.div(x, &denom)?)
}

/// The contraction with no fixed point: halves infinite inputs, nudges
/// finite inputs up by g(x)/2.
pub fn contraction_map<'a>(
    h: &'a FieldHandle,
) -> impl Fn(&FieldElement) -> Result<FieldElement, Error> + 'a {
    move |x| {
        if is_infinite(h, x)? {
            h.div(x, &h.from_int(2))
        } else {
            let g = contraction_g(h, x)?;
            h.add(x, &h.div(&g, &h.from_int(2))?)
        }
    }
}

/// The contraction constant 1 - (1/2)/omega^2, strictly below 1 yet closer
/// to 1 than any rational below 1.
pub fn contraction_constant(h: &FieldHandle) -> Result<FieldElement, Error> {
    let w = h.omega()?;
    let half = h.from_rational(&Rational::ratio(1, 2));
    h.sub(&h.one(), &h.div(&half, &h.mul(&w, &w)?)?)
}

/// Summary of an exhaustive sampled check of the contraction inequality.
#[derive(Debug)]
pub struct ContractionReport {
    pub pairs_checked: usize,
    pub inconclusive: usize,
    /// One NotFixed witness per strata representative.
    pub witnesses: Vec<Witness>,
}

/// Designated elements covering the finite, infinite, and infinitesimal
/// strata, prepended to the random samples.
fn strata(h: &FieldHandle) -> Result<Vec<FieldElement>, Error> {
    let w = h.omega()?;
    let e = h.epsilon()?;
    Ok(vec![
        h.zero(),
        h.one(),
        h.from_int(-3),
        h.from_rational(&Rational::ratio(3, 2)),
        w.clone(),
        h.neg(&w)?,
        h.mul(&w, &w)?,
        h.sub(&w, &h.from_int(1_000_000))?,
        e.clone(),
        h.neg(&e)?,
        h.add(&h.from_rational(&Rational::ratio(3, 2)), &e)?,
    ])
}

/// Verifies |f(x) - f(y)| <= c|x - y| and f(x) != x on `pairs` sampled
/// pairs, exactly. Laurent precision exhaustion skips the pair and is
/// counted, never silently passed.
pub fn contraction_check(
    h: &FieldHandle,
    pairs: usize,
    seed: u64,
) -> Result<ContractionReport, Error> {
    if h.kind == FieldKind::Rationals {
        return Err(Error::UnsupportedField(h.name()));
    }
    let f = contraction_map(h);
    let c = contraction_constant(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = strata(h)?;
    let mut pool: Vec<FieldElement> = base.clone();
    while pool.len() < 2 * pairs {
        pool.push(h.sample(&mut rng));
    }
    let mut inconclusive = 0;
    let mut checked = 0;
    for chunk in pool.chunks(2).take(pairs) {
        let (x, y) = (&chunk[0], &chunk[1]);
        let outcome = (|| -> Result<(), Error> {
            if h.eq(x, y)? {
                return Ok(());
            }
            let lhs = h.abs(&h.sub(&f(x)?, &f(y)?)?)?;
            let rhs = h.mul(&c, &h.abs(&h.sub(x, y)?)?)?;
            if !h.eq(&lhs, &rhs)? && h.cmp(&lhs, &rhs)? == std::cmp::Ordering::Greater {
                return Err(Error::NotAGap);
            }
            Ok(())
        })();
        match outcome {
            Ok(()) => checked += 1,
            Err(Error::PrecisionExhausted(_)) => inconclusive += 1,
            Err(e) => return Err(e),
        }
    }
    // fixed-point freeness on the strata representatives, with certificates
    let mut witnesses = Vec::new();
    for x in &base {
        let fx = f(x)?;
        let diff = h.sub(&fx, x)?;
        let sign = h.sign(&diff)?;
        if sign == 0 {
            return Err(Error::NotAGap);
        }
        witnesses.push(Witness::new(
            WitnessKind::NotFixed,
            vec![x.clone(), fx.clone()],
            format!(
                "f({}) - {} = {} is nonzero (sign {})",
                h.format(x),
                h.format(x),
                h.format(&diff),
                sign
            ),
        ));
    }
    Ok(ContractionReport {
        pairs_checked: checked,
        inconclusive,
        witnesses,
    })
}

/// A continuous piecewise-linear self-map of the rationals with all slopes
/// in (0, 1/2], hence a 1/2-contraction, whose breakpoints straddle a gap.
#[derive(Clone, Debug)]
pub struct PiecewiseLinearMap {
    /// Strictly ascending.
    breakpoints: Vec<Rational>,
    /// Value at each breakpoint.
    values: Vec<Rational>,
}

impl PiecewiseLinearMap {
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let half = Rational::ratio(1, 2);
        let first = &self.breakpoints[0];
        let last = self.breakpoints.last().expect("nonempty");
        if t <= first {
            return &self.values[0] - &(&half * &(first - t));
        }
        if t >= last {
            return self.values.last().expect("nonempty") + &(&half * &(t - last));
        }
        let i = self
            .breakpoints
            .iter()
            .rposition(|b| b <= t)
            .expect("t is above the first breakpoint");
        let (b0, b1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (v0, v1) = (&self.values[i], &self.values[i + 1]);
        let slope = (v1 - v0).checked_div(&(b1 - b0)).expect("ascending breakpoints");
        v0 + &(&slope * &(t - b0))
    }

    /// The largest interior slope; at most 1/2 by construction.
    pub fn max_slope(&self) -> Rational {
        let mut best = Rational::ratio(1, 2);
        for i in 0..self.breakpoints.len() - 1 {
            let rise = &self.values[i + 1] - &self.values[i];
            let run = &self.breakpoints[i + 1] - &self.breakpoints[i];
            let slope = rise.checked_div(&run).expect("ascending breakpoints");
            if slope > best {
                best = slope;
            }
        }
        best
    }
}

/// How many extra dyadic levels the builder may scan before concluding the
/// cut's approximants have frozen (as the halo cut's do).
const STALL_BUDGET: u32 = 24;

/// Builds the piecewise-linear contraction from a gap's dyadic approximants:
/// breakpoints x_1 < ... < x_K < y_K < ... < y_1 with h(x_k) = x_{k+1} and
/// h(y_k) = y_{k+1}, outer slopes 1/2. Levels are chosen greedily so that
/// 2^-n_{k+1} is at most half of both endpoint gaps, which caps every piece
/// slope at 1/2.
pub fn gap_contraction_build(cut: &Cut, depth: u32) -> Result<PiecewiseLinearMap, Error> {
    assert!(depth >= 1 && depth <= 64, "depth must be in 1..=64");
    let mut levels: Vec<(Rational, Rational)> = Vec::new();
    let mut n = 1u32;
    let (mut x, mut y) = cut.dyadic_pair(n)?;
    levels.push((x.clone(), y.clone()));
    let half = Rational::ratio(1, 2);
    // need depth breakpoint pairs plus one more level for the outer values
    while levels.len() < (depth + 1) as usize {
        let start = n;
        loop {
            n += 1;
            if n - start > STALL_BUDGET {
                return Err(Error::StabilizedSequence);
            }
            let (a, b) = cut.dyadic_pair(n)?;
            let step = Rational::pow2(-(n as i64));
            let up = &a - &x;
            let down = &y - &b;
            if up.is_positive()
                && down.is_positive()
                && step <= &half * &up
                && step <= &half * &down
            {
                x = a;
                y = b;
                levels.push((x.clone(), y.clone()));
                break;
            }
        }
    }
    let k = depth as usize;
    let mut breakpoints: Vec<Rational> = levels[..k].iter().map(|(a, _)| a.clone()).collect();
    breakpoints.extend(levels[..k].iter().rev().map(|(_, b)| b.clone()));
    let mut values: Vec<Rational> = levels[1..=k].iter().map(|(a, _)| a.clone()).collect();
    values.extend(levels[1..=k].iter().rev().map(|(_, b)| b.clone()));
    Ok(PiecewiseLinearMap { breakpoints, values })
}

/// One trapezoid bump: 1 on [a_n, b_n], linear ramps of width 2^-n on both
/// sides, 0 outside.
fn bump_at(cut: &Cut, n: u32, x: &Rational) -> Result<Rational, Error> {
    let (a, b) = cut.dyadic_pair(n)?;
    let step = Rational::pow2(-(n as i64));
    let lo = &a - &step;
    let hi = &b + &step;
    if *x <= lo || *x >= hi {
        return Ok(Rational::zero());
    }
    if *x >= a && *x <= b {
        return Ok(Rational::one());
    }
    let scale = step.recip().expect("positive step");
    Ok(if *x < a {
        &(x - &lo) * &scale
    } else {
        &(&hi - x) * &scale
    })
}

/// The bump sum and its cutoff certificate.
#[derive(Debug)]
pub struct BumpSum {
    pub value: Rational,
    /// First level whose support already excludes x (supports are nested,
    /// so every later bump vanishes there too); None if x is inside the
    /// support at every level up to the depth.
    pub cutoff: Option<u32>,
    pub certificate: String,
}

/// f(x) = sum of the first `depth` bumps at x, exact. Unbounded near the
/// gap — f(a_n) is at least n — yet each individual bump is at most 1.
pub fn bump_sum(cut: &Cut, x: &Rational, depth: u32) -> Result<BumpSum, Error> {
    assert!(depth <= 64, "depth capped at 64");
    let mut value = Rational::zero();
    let mut cutoff = None;
    for n in 1..=depth {
        let contribution = bump_at(cut, n, x)?;
        if contribution.is_zero() && cutoff.is_none() {
            // supports shrink on both sides as n grows, so exclusion at
            // level n persists at every later level
            cutoff = Some(n);
        }
        if !contribution.is_zero() && cutoff.is_some() {
            // supports are nested; re-entry is impossible
            return Err(Error::NotAGap);
        }
        value = &value + &contribution;
    }
    let certificate = match cutoff {
        Some(n) => {
            let (a, b) = cut.dyadic_pair(n)?;
            let step = Rational::pow2(-(n as i64));
            format!(
                "{} lies outside [{}, {}] (support at level {}), and supports are nested, so every bump from level {} on vanishes",
                x,
                &a - &step,
                &b + &step,
                n,
                n
            )
        }
        None => format!("{x} is inside the bump support at every level up to {depth}"),
    };
    Ok(BumpSum { value, cutoff, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldHandle;
    use crate::probes::cuts::{cut_halo, cut_sqrt2};

    #[test]
    fn contraction_map_examples() {
        let h = FieldHandle::ratfun();
        let f = contraction_map(&h);
        // g(0) = 1, so f(0) = 1/2
        let half = h.from_rational(&Rational::ratio(1, 2));
        assert!(h.eq(&f(&h.zero()).unwrap(), &half).unwrap());
        // infinite inputs are halved
        let w = h.omega().unwrap();
        let expected = h.div(&w, &h.from_int(2)).unwrap();
        assert!(h.eq(&f(&w).unwrap(), &expected).unwrap());
        // pair (1, 2): f(1) = 1 + g(1)/2 = 5/4, f(2) = 2 + g(2)/2 = 13/6
        let f1 = f(&h.one()).unwrap();
        assert!(h.eq(&f1, &h.from_rational(&Rational::ratio(5, 4))).unwrap());
        let f2 = f(&h.from_int(2)).unwrap();
        assert!(h.eq(&f2, &h.from_rational(&Rational::ratio(13, 6))).unwrap());
        // |f(1) - f(2)| = 11/12 <= c * 1 exactly, c = 1 - eps^2/2
        let c = contraction_constant(&h).unwrap();
        let lhs = h.abs(&h.sub(&f1, &f2).unwrap()).unwrap();
        assert_eq!(h.cmp(&lhs, &c).unwrap(), std::cmp::Ordering::Less);
    }

    #[test]
    fn contraction_check_passes_both_nonarchimedean_fields() {
        for h in [FieldHandle::ratfun(), FieldHandle::laurent()] {
            let report = contraction_check(&h, 100, 17).unwrap();
            assert!(report.pairs_checked >= 90);
            assert!(report.witnesses.len() >= 11);
        }
    }

    #[test]
    fn gap_contraction_examples() {
        let cut = cut_sqrt2(FieldHandle::rationals());
        let map = gap_contraction_build(&cut, 4).unwrap();
        // x_1 = 1, y_1 = 3/2; the greedy level rule takes level 5 next, so
        // h(x_1) = 45/32
        assert_eq!(map.breakpoints()[0], Rational::from_int(1));
        assert_eq!(map.eval(&Rational::from_int(1)), Rational::ratio(45, 32));
        // outer slope 1/2 above the top breakpoint: h(y_1 + 4) = h(y_1) + 2
        let y1 = map.breakpoints().last().unwrap().clone();
        let hy1 = map.eval(&y1);
        assert_eq!(map.eval(&(&y1 + &Rational::from_int(4))), &hy1 + &Rational::from_int(2));
        assert!(map.max_slope() <= Rational::ratio(1, 2));
        // no breakpoint is fixed
        for b in map.breakpoints() {
            assert_ne!(map.eval(b), *b);
        }
    }

    #[test]
    fn gap_contraction_is_half_lipschitz_on_sampled_pairs() {
        let cut = cut_sqrt2(FieldHandle::rationals());
        let map = gap_contraction_build(&cut, 6).unwrap();
        let half = Rational::ratio(1, 2);
        let mut points: Vec<Rational> = map.breakpoints().to_vec();
        // midpoints and outer points stress every piece
        for i in 0..map.breakpoints().len() - 1 {
            let mid = &(&map.breakpoints()[i] + &map.breakpoints()[i + 1])
                .checked_div(&Rational::from_int(2))
                .unwrap();
            points.push(mid.clone());
        }
        points.push(Rational::from_int(-5));
        points.push(Rational::from_int(7));
        for u in &points {
            for v in &points {
                if u == v {
                    continue;
                }
                let lhs = (&map.eval(u) - &map.eval(v)).abs();
                let rhs = &half * &(u - v).abs();
                assert!(lhs <= rhs, "lipschitz violated at {u}, {v}");
            }
        }
    }

    #[test]
    fn gap_contraction_rejects_stabilized_cuts() {
        let cut = cut_halo(FieldHandle::laurent(), Rational::ratio(3, 2)).unwrap();
        assert_eq!(
            gap_contraction_build(&cut, 3).unwrap_err(),
            Error::StabilizedSequence
        );
    }

    #[test]
    fn bump_sum_examples() {
        let cut = cut_sqrt2(FieldHandle::rationals());
        // f(0) = 0: level 1 support is [1/2, 2], and 0 is below it
        let at0 = bump_sum(&cut, &Rational::zero(), 8).unwrap();
        assert_eq!(at0.value, Rational::zero());
        assert_eq!(at0.cutoff, Some(1));
        // f(a_3) >= 3: a_3 = 11/8 sits inside [a_k, b_k] for k <= 3
        let a3 = Rational::ratio(11, 8);
        let s = bump_sum(&cut, &a3, 3).unwrap();
        assert!(s.value >= Rational::from_int(3));
        // f(2) = 0 at depth >= 3
        let at2 = bump_sum(&cut, &Rational::from_int(2), 5).unwrap();
        assert_eq!(at2.value, Rational::zero());
    }

    #[test]
    fn bump_sum_grows_along_the_lower_approximants() {
        let cut = cut_sqrt2(FieldHandle::rationals());
        for n in 1..=10u32 {
            let (a, _) = cut.dyadic_pair(n).unwrap();
            let s = bump_sum(&cut, &a, n).unwrap();
            assert!(
                s.value >= Rational::from_int(n as i64),
                "f(a_{n}) = {} < {n}",
                s.value
            );
        }
        // each individual bump stays at most 1
        for n in 1..=10u32 {
            let (a, b) = cut.dyadic_pair(n).unwrap();
            let mid = (&a + &b).checked_div(&Rational::from_int(2)).unwrap();
            assert!(bump_at(&cut, n, &mid).unwrap() <= Rational::one());
        }
    }
}
