//! A uniform ordered-field handle over the three implementations, plus
//! canonical embeddings, seeded element sampling, and the randomized
//! axiom suite every probe builds on.

use std::cmp::Ordering;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::laurent::{LaurentSeries, Term, DEFAULT_HORIZON, DEFAULT_ORDER};
use crate::poly::Polynomial;
use crate::ratfun::{OrderTag, RationalFunction};
use crate::rational::Rational;

/// Which of the three ordered fields a handle speaks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// The rationals.
    Rationals,
    /// Rational functions in one variable, ordered near zero (omega = 1/eps
    /// is representable, so this is also the at-infinity field up to the
    /// variable swap).
    RatFun,
    /// Formal Laurent series.
    Laurent,
}

/// A value in one of the three fields. Operations never mix variants.
#[derive(Clone, Debug)]
pub enum FieldElement {
    Rat(Rational),
    RatFun(RationalFunction),
    Laurent(LaurentSeries),
}

impl FieldElement {
    pub fn kind(&self) -> FieldKind {
        match self {
            FieldElement::Rat(_) => FieldKind::Rationals,
            FieldElement::RatFun(_) => FieldKind::RatFun,
            FieldElement::Laurent(_) => FieldKind::Laurent,
        }
    }

    pub fn as_rat(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_ratfun(&self) -> Option<&RationalFunction> {
        match self {
            FieldElement::RatFun(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentSeries> {
        match self {
            FieldElement::Laurent(s) => Some(s),
            _ => None,
        }
    }
}

/// A closed interval `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct Interval {
    pub lo: FieldElement,
    pub hi: FieldElement,
}

/// The operations a probe needs from a field. `FieldHandle` is the real
/// implementation; the trait exists so the axiom suite can also be pointed
/// at a deliberately broken handle as a self-test.
pub trait FieldOps: Sync {
    fn name(&self) -> &'static str;
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn from_rational(&self, q: &Rational) -> FieldElement;
    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error>;
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error>;
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error>;
    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error>;
    fn neg(&self, a: &FieldElement) -> Result<FieldElement, Error>;
    fn abs(&self, a: &FieldElement) -> Result<FieldElement, Error>;
    fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Result<Ordering, Error>;
    /// Exact equality for the discrete fields; coefficientwise equality
    /// through the configured order for Laurent series.
    fn eq(&self, a: &FieldElement, b: &FieldElement) -> Result<bool, Error>;
    fn sample(&self, rng: &mut ChaCha8Rng) -> FieldElement;
}

/// Handle for one of the three fields with its precision configuration.
/// Precision lives here, not per call, so probes stay field-generic.
#[derive(Clone, Copy, Debug)]
pub struct FieldHandle {
    pub kind: FieldKind,
    /// Largest exponent a lazy leading-term scan may inspect.
    pub horizon: i64,
    /// Exponent bound for printing and coefficientwise comparison.
    pub order: i64,
}

impl FieldHandle {
    pub fn new(kind: FieldKind) -> Self {
        FieldHandle {
            kind,
            horizon: DEFAULT_HORIZON,
            order: DEFAULT_ORDER,
        }
    }

    pub fn rationals() -> Self {
        Self::new(FieldKind::Rationals)
    }

    pub fn ratfun() -> Self {
        Self::new(FieldKind::RatFun)
    }

    pub fn laurent() -> Self {
        Self::new(FieldKind::Laurent)
    }

    pub fn with_order(mut self, order: i64) -> Self {
        self.order = order;
        self
    }

    pub fn with_horizon(mut self, horizon: i64) -> Self {
        self.horizon = horizon;
        self
    }

    /// The infinite element, where one exists.
    pub fn omega(&self) -> Result<FieldElement, Error> {
        match self.kind {
            FieldKind::Rationals => Err(Error::SymbolNotInField('w', self.name())),
            FieldKind::RatFun => Ok(FieldElement::RatFun(RationalFunction::omega(
                OrderTag::NearZero,
            ))),
            FieldKind::Laurent => Ok(FieldElement::Laurent(LaurentSeries::omega())),
        }
    }

    /// The positive infinitesimal, where one exists.
    pub fn epsilon(&self) -> Result<FieldElement, Error> {
        match self.kind {
            FieldKind::Rationals => Err(Error::SymbolNotInField('e', self.name())),
            FieldKind::RatFun => Ok(FieldElement::RatFun(RationalFunction::epsilon(
                OrderTag::NearZero,
            ))),
            FieldKind::Laurent => Ok(FieldElement::Laurent(LaurentSeries::epsilon())),
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(&Rational::from_int(n))
    }

    pub fn is_zero(&self, a: &FieldElement) -> Result<bool, Error> {
        self.eq(a, &self.zero())
    }

    pub fn sign(&self, a: &FieldElement) -> Result<i32, Error> {
        match a {
            FieldElement::Rat(q) => Ok(q.signum()),
            FieldElement::RatFun(f) => Ok(f.sign()),
            FieldElement::Laurent(s) => {
                if s.is_structural_zero() {
                    return Ok(0);
                }
                // a lazily-built series that is zero through the comparison
                // order counts as zero here, mirroring `eq`
                match s.leading_term(self.horizon) {
                    Ok(Some(t)) => Ok(t.coefficient.signum()),
                    Ok(None) => Ok(0),
                    Err(Error::PrecisionExhausted(_)) => Ok(0),
                    Err(e) => Err(e),
                }
            }
        }
    }

    /// Raise to an integer power by repeated multiplication.
    pub fn pow(&self, a: &FieldElement, n: i64) -> Result<FieldElement, Error> {
        let base = if n < 0 {
            self.div(&self.one(), a)?
        } else {
            a.clone()
        };
        let mut acc = self.one();
        for _ in 0..n.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Renders an element in the field's surface syntax.
    pub fn format(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rat(q) => q.to_string(),
            FieldElement::RatFun(f) => f.to_string(),
            FieldElement::Laurent(s) => s.display(self.order),
        }
    }

    fn mixed(&self) -> Error {
        Error::UnsupportedField(self.name())
    }
}

macro_rules! pointwise {
    ($self:ident, $a:ident, $b:ident, $rat:expr, $rf:expr, $ls:expr) => {
        match ($a, $b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => Ok(FieldElement::Rat($rat(x, y))),
            (FieldElement::RatFun(x), FieldElement::RatFun(y)) => {
                Ok(FieldElement::RatFun($rf(x, y)?))
            }
            (FieldElement::Laurent(x), FieldElement::Laurent(y)) => {
                Ok(FieldElement::Laurent($ls(x, y)))
            }
            _ => Err($self.mixed()),
        }
    };
}

impl FieldOps for FieldHandle {
    fn name(&self) -> &'static str {
        match self.kind {
            FieldKind::Rationals => "q",
            FieldKind::RatFun => "ratfun",
            FieldKind::Laurent => "laurent",
        }
    }

    fn zero(&self) -> FieldElement {
        self.from_rational(&Rational::zero())
    }

    fn one(&self) -> FieldElement {
        self.from_rational(&Rational::one())
    }

    fn from_rational(&self, q: &Rational) -> FieldElement {
        match self.kind {
            FieldKind::Rationals => FieldElement::Rat(q.clone()),
            FieldKind::RatFun => {
                FieldElement::RatFun(RationalFunction::from_rational(q.clone(), OrderTag::NearZero))
            }
            FieldKind::Laurent => FieldElement::Laurent(LaurentSeries::from_rational(q.clone())),
        }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        pointwise!(
            self,
            a,
            b,
            |x: &Rational, y: &Rational| x + y,
            |x: &RationalFunction, y: &RationalFunction| x.add(y),
            |x: &LaurentSeries, y: &LaurentSeries| x.add(y)
        )
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        pointwise!(
            self,
            a,
            b,
            |x: &Rational, y: &Rational| x - y,
            |x: &RationalFunction, y: &RationalFunction| x.sub(y),
            |x: &LaurentSeries, y: &LaurentSeries| x.sub(y)
        )
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        pointwise!(
            self,
            a,
            b,
            |x: &Rational, y: &Rational| x * y,
            |x: &RationalFunction, y: &RationalFunction| x.mul(y),
            |x: &LaurentSeries, y: &LaurentSeries| x.mul(y)
        )
    }

    fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => {
                Ok(FieldElement::Rat(x.checked_div(y)?))
            }
            (FieldElement::RatFun(x), FieldElement::RatFun(y)) => {
                Ok(FieldElement::RatFun(x.div(y)?))
            }
            (FieldElement::Laurent(x), FieldElement::Laurent(y)) => {
                Ok(FieldElement::Laurent(x.div(y, self.horizon)?))
            }
            _ => Err(self.mixed()),
        }
    }

    fn neg(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        Ok(match a {
            FieldElement::Rat(x) => FieldElement::Rat(-x),
            FieldElement::RatFun(x) => FieldElement::RatFun(x.neg()),
            FieldElement::Laurent(x) => FieldElement::Laurent(x.neg()),
        })
    }

    fn abs(&self, a: &FieldElement) -> Result<FieldElement, Error> {
        Ok(match a {
            FieldElement::Rat(x) => FieldElement::Rat(x.abs()),
            FieldElement::RatFun(x) => FieldElement::RatFun(x.abs()),
            FieldElement::Laurent(x) => FieldElement::Laurent(x.abs(self.horizon)?),
        })
    }

    fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Result<Ordering, Error> {
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => Ok(x.cmp(y)),
            (FieldElement::RatFun(x), FieldElement::RatFun(y)) => x.cmp_order(y),
            (FieldElement::Laurent(x), FieldElement::Laurent(y)) => x.cmp_order(y, self.horizon),
            _ => Err(self.mixed()),
        }
    }

    fn eq(&self, a: &FieldElement, b: &FieldElement) -> Result<bool, Error> {
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => Ok(x == y),
            (FieldElement::RatFun(x), FieldElement::RatFun(y)) => Ok(x == y),
            (FieldElement::Laurent(x), FieldElement::Laurent(y)) => {
                Ok(x.eq_through_order(y, self.order))
            }
            _ => Err(self.mixed()),
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> FieldElement {
        match self.kind {
            FieldKind::Rationals => FieldElement::Rat(sample_rational(rng)),
            FieldKind::RatFun => FieldElement::RatFun(sample_ratfun(rng)),
            FieldKind::Laurent => FieldElement::Laurent(sample_laurent(rng)),
        }
    }
}

/// Magnitude stays below 10^4: numerator in [-10^4, 10^4], denominator in
/// [1, 100].
fn sample_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::ratio(rng.gen_range(-10_000..=10_000), rng.gen_range(1..=100))
}

fn sample_coeff(rng: &mut ChaCha8Rng) -> Rational {
    Rational::ratio(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

/// A polynomial `x^shift * (c0 + ... + c_d x^d)` with c0 forced nonzero so
/// the trailing degree (hence the near-zero valuation) is exactly `shift`.
/// Total degree stays at most 4.
fn sample_poly_with_valuation(rng: &mut ChaCha8Rng) -> Polynomial {
    let shift = rng.gen_range(0..=2usize);
    let inner_deg = rng.gen_range(0..=2usize);
    let mut coeffs = vec![Rational::zero(); shift];
    let mut c0 = sample_coeff(rng);
    while c0.is_zero() {
        c0 = sample_coeff(rng);
    }
    coeffs.push(c0);
    for _ in 0..inner_deg {
        coeffs.push(sample_coeff(rng));
    }
    Polynomial::new(coeffs)
}

/// Numerator/denominator degrees at most 4; resamples until the denominator
/// is nonzero (guaranteed by construction) and spreads the valuation so the
/// infinite and infinitesimal strata both appear.
fn sample_ratfun(rng: &mut ChaCha8Rng) -> RationalFunction {
    let num = if rng.gen_range(0..10) == 0 {
        Polynomial::zero()
    } else {
        sample_poly_with_valuation(rng)
    };
    let mut den = sample_poly_with_valuation(rng);
    while den.is_zero() {
        den = sample_poly_with_valuation(rng);
    }
    RationalFunction::new(num, den, OrderTag::NearZero).expect("nonzero denominator")
}

/// Finite support in exponents [-4, 8], at most five terms.
fn sample_laurent(rng: &mut ChaCha8Rng) -> LaurentSeries {
    let count = rng.gen_range(0..=4usize);
    let mut terms: std::collections::BTreeMap<i64, Rational> = Default::default();
    for _ in 0..count {
        let exp = rng.gen_range(-4..=8i64);
        let c = sample_coeff(rng);
        if !c.is_zero() {
            terms.insert(exp, c);
        }
    }
    LaurentSeries::from_terms(
        terms
            .into_iter()
            .map(|(e, c)| Term::new(e, c))
            .collect(),
    )
    .expect("distinct exponents")
}

/// Embeds a rational into the field of the handle.
pub fn embed_rational(h: &FieldHandle, q: &Rational) -> FieldElement {
    h.from_rational(q)
}

/// The identification of the near-zero rational-function field with a
/// subfield of the Laurent series, by long division.
pub fn embed_ratfun_in_laurent(a: &RationalFunction) -> Result<FieldElement, Error> {
    Ok(FieldElement::Laurent(a.to_laurent()?))
}

/// Outcome of the randomized axiom suite.
#[derive(Clone, Debug)]
pub struct AxiomOutcome {
    pub trials: usize,
    /// Trials skipped because a lazy comparison ran out of precision
    /// (possible only in the Laurent field).
    pub inconclusive: usize,
    /// First violated law, with the offending elements rendered exactly.
    pub failure: Option<String>,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks associativity, commutativity, distributivity, identities,
/// inverses, order translation, order multiplication, and trichotomy on
/// seeded random triples, with exact arithmetic throughout.
pub fn axiom_suite(h: &dyn FieldOps, trials: usize, seed: u64) -> AxiomOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inconclusive = 0;
    for trial in 0..trials {
        let x = h.sample(&mut rng);
        let y = h.sample(&mut rng);
        let z = h.sample(&mut rng);
        match check_axioms(h, &x, &y, &z) {
            Ok(None) => {}
            Ok(Some(law)) => {
                return AxiomOutcome {
                    trials: trial + 1,
                    inconclusive,
                    failure: Some(format!(
                        "{law} violated by x = {:?}, y = {:?}, z = {:?}",
                        x, y, z
                    )),
                };
            }
            Err(Error::PrecisionExhausted(_)) => inconclusive += 1,
            Err(e) => {
                return AxiomOutcome {
                    trials: trial + 1,
                    inconclusive,
                    failure: Some(format!("operation error: {e}")),
                };
            }
        }
    }
    AxiomOutcome {
        trials,
        inconclusive,
        failure: None,
    }
}

fn check_axioms(
    h: &dyn FieldOps,
    x: &FieldElement,
    y: &FieldElement,
    z: &FieldElement,
) -> Result<Option<&'static str>, Error> {
    let zero = h.zero();
    let one = h.one();

    let lhs = h.add(&h.add(x, y)?, z)?;
    let rhs = h.add(x, &h.add(y, z)?)?;
    if !h.eq(&lhs, &rhs)? {
        return Ok(Some("additive associativity"));
    }
    let lhs = h.mul(&h.mul(x, y)?, z)?;
    let rhs = h.mul(x, &h.mul(y, z)?)?;
    if !h.eq(&lhs, &rhs)? {
        return Ok(Some("multiplicative associativity"));
    }
    if !h.eq(&h.add(x, y)?, &h.add(y, x)?)? {
        return Ok(Some("additive commutativity"));
    }
    if !h.eq(&h.mul(x, y)?, &h.mul(y, x)?)? {
        return Ok(Some("multiplicative commutativity"));
    }
    let lhs = h.mul(x, &h.add(y, z)?)?;
    let rhs = h.add(&h.mul(x, y)?, &h.mul(x, z)?)?;
    if !h.eq(&lhs, &rhs)? {
        return Ok(Some("distributivity"));
    }
    if !h.eq(&h.add(x, &zero)?, x)? {
        return Ok(Some("additive identity"));
    }
    if !h.eq(&h.mul(x, &one)?, x)? {
        return Ok(Some("multiplicative identity"));
    }
    if !h.eq(&h.add(x, &h.neg(x)?)?, &zero)? {
        return Ok(Some("additive inverse"));
    }
    if !h.eq(x, &zero)? && !h.eq(&h.mul(x, &h.div(&one, x)?)?, &one)? {
        return Ok(Some("multiplicative inverse"));
    }
    // order translation: x < y implies x + z < y + z
    if h.cmp(x, y)? == Ordering::Less
        && h.cmp(&h.add(x, z)?, &h.add(y, z)?)? != Ordering::Less
    {
        return Ok(Some("order translation"));
    }
    // order multiplication: x, y > 0 implies x*y > 0
    if h.cmp(x, &zero)? == Ordering::Greater
        && h.cmp(y, &zero)? == Ordering::Greater
        && h.cmp(&h.mul(x, y)?, &zero)? != Ordering::Greater
    {
        return Ok(Some("order multiplication"));
    }
    // trichotomy: cmp is antisymmetric and agrees with eq
    let fwd = h.cmp(x, y)?;
    let rev = h.cmp(y, x)?;
    if fwd.reverse() != rev || (fwd == Ordering::Equal) != h.eq(x, y)? {
        return Ok(Some("trichotomy"));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::Classification;

    #[test]
    fn embedding_examples() {
        let l = FieldHandle::laurent();
        match embed_rational(&l, &Rational::ratio(1, 2)) {
            FieldElement::Laurent(s) => {
                assert_eq!(s.coeff(0), Rational::ratio(1, 2));
                assert_eq!(s.leading_term(8).unwrap().unwrap().exponent, 0);
            }
            _ => panic!("wrong variant"),
        }
        let rf = FieldHandle::ratfun();
        match embed_rational(&rf, &Rational::from_int(3)) {
            FieldElement::RatFun(f) => assert_eq!(f.to_string(), "3"),
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn embeddings_preserve_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for h in [
            FieldHandle::rationals(),
            FieldHandle::ratfun(),
            FieldHandle::laurent(),
        ] {
            for _ in 0..100 {
                let a = sample_rational(&mut rng);
                let b = sample_rational(&mut rng);
                let ea = embed_rational(&h, &a);
                let eb = embed_rational(&h, &b);
                assert_eq!(h.cmp(&ea, &eb).unwrap(), a.cmp(&b));
            }
        }
    }

    #[test]
    fn composite_embedding_agrees_with_direct() {
        let l = FieldHandle::laurent();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let q = sample_rational(&mut rng);
            let via_rf =
                embed_ratfun_in_laurent(&RationalFunction::from_rational(q.clone(), OrderTag::NearZero))
                    .unwrap();
            let direct = embed_rational(&l, &q);
            assert!(l.eq(&via_rf, &direct).unwrap());
        }
    }

    #[test]
    fn ratfun_embedding_examples() {
        let l = FieldHandle::laurent();
        let eps = RationalFunction::epsilon(OrderTag::NearZero);
        let img = embed_ratfun_in_laurent(&eps).unwrap();
        assert!(l.eq(&img, &FieldElement::Laurent(LaurentSeries::epsilon())).unwrap());
        // (1+e)/(1-e) = 1 + 2e + 2e^2 + ...
        let one = RationalFunction::from_int(1, OrderTag::NearZero);
        let f = one.add(&eps).unwrap().div(&one.sub(&eps).unwrap()).unwrap();
        let s = match embed_ratfun_in_laurent(&f).unwrap() {
            FieldElement::Laurent(s) => s,
            _ => unreachable!(),
        };
        assert_eq!(s.coeff(0), Rational::one());
        for k in 1..=16 {
            assert_eq!(s.coeff(k), Rational::from_int(2));
        }
        // check the product with (1-e) recovers 1+e
        let back = s.mul(&LaurentSeries::one().sub(&LaurentSeries::epsilon()));
        let target = LaurentSeries::one().add(&LaurentSeries::epsilon());
        assert!(back.eq_through_order(&target, 32));
        let winv = embed_ratfun_in_laurent(&eps.recip().unwrap()).unwrap();
        assert!(l
            .eq(&winv, &FieldElement::Laurent(LaurentSeries::omega()))
            .unwrap());
    }

    #[test]
    fn sampling_is_deterministic() {
        for h in [
            FieldHandle::rationals(),
            FieldHandle::ratfun(),
            FieldHandle::laurent(),
        ] {
            let mut a = ChaCha8Rng::seed_from_u64(0);
            let mut b = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..20 {
                let x = h.sample(&mut a);
                let y = h.sample(&mut b);
                assert!(h.eq(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn ratfun_samples_hit_both_strata() {
        let h = FieldHandle::ratfun();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut infinite = 0;
        let mut infinitesimal = 0;
        for _ in 0..100 {
            if let FieldElement::RatFun(f) = h.sample(&mut rng) {
                match f.classify() {
                    Classification::PositiveInfinite | Classification::NegativeInfinite => {
                        infinite += 1
                    }
                    Classification::PositiveInfinitesimal
                    | Classification::NegativeInfinitesimal => infinitesimal += 1,
                    _ => {}
                }
            }
        }
        assert!(infinite >= 1, "no infinite sample among 100");
        assert!(infinitesimal >= 1, "no infinitesimal sample among 100");
    }

    #[test]
    fn axiom_suite_passes_on_all_fields() {
        for h in [
            FieldHandle::rationals(),
            FieldHandle::ratfun(),
            FieldHandle::laurent(),
        ] {
            let out = axiom_suite(&h, 200, 42);
            assert!(out.passed(), "{:?}", out.failure);
        }
    }

    /// A handle with addition and multiplication swapped; the suite must
    /// catch it and report the violated law.
    struct BrokenHandle(FieldHandle);

    impl FieldOps for BrokenHandle {
        fn name(&self) -> &'static str {
            "broken"
        }
        fn zero(&self) -> FieldElement {
            self.0.zero()
        }
        fn one(&self) -> FieldElement {
            self.0.one()
        }
        fn from_rational(&self, q: &Rational) -> FieldElement {
            self.0.from_rational(q)
        }
        fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
            self.0.mul(a, b)
        }
        fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
            self.0.sub(a, b)
        }
        fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
            self.0.add(a, b)
        }
        fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, Error> {
            self.0.div(a, b)
        }
        fn neg(&self, a: &FieldElement) -> Result<FieldElement, Error> {
            self.0.neg(a)
        }
        fn abs(&self, a: &FieldElement) -> Result<FieldElement, Error> {
            self.0.abs(a)
        }
        fn cmp(&self, a: &FieldElement, b: &FieldElement) -> Result<Ordering, Error> {
            self.0.cmp(a, b)
        }
        fn eq(&self, a: &FieldElement, b: &FieldElement) -> Result<bool, Error> {
            self.0.eq(a, b)
        }
        fn sample(&self, rng: &mut ChaCha8Rng) -> FieldElement {
            self.0.sample(rng)
        }
    }

    #[test]
    fn axiom_suite_catches_broken_handle() {
        let out = axiom_suite(&BrokenHandle(FieldHandle::rationals()), 100, 0);
        assert!(!out.passed());
        assert!(out.failure.unwrap().contains("violated"));
    }

    #[test]
    fn abs_is_multiplicative_and_subadditive() {
        for h in [
            FieldHandle::rationals(),
            FieldHandle::ratfun(),
            FieldHandle::laurent(),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            for _ in 0..100 {
                let x = h.sample(&mut rng);
                let y = h.sample(&mut rng);
                let prod_abs = h.abs(&h.mul(&x, &y).unwrap()).unwrap();
                let abs_prod = h.mul(&h.abs(&x).unwrap(), &h.abs(&y).unwrap()).unwrap();
                assert!(h.eq(&prod_abs, &abs_prod).unwrap());
                let sum_abs = h.abs(&h.add(&x, &y).unwrap()).unwrap();
                let abs_sum = h.add(&h.abs(&x).unwrap(), &h.abs(&y).unwrap()).unwrap();
                // equality first: the lazy difference of two coincident
                // sides has no nonzero coefficient for a sign scan to find
                if !h.eq(&sum_abs, &abs_sum).unwrap() {
                    assert_eq!(h.cmp(&sum_abs, &abs_sum).unwrap(), Ordering::Less);
                }
            }
        }
    }
}
