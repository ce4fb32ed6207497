//! The formal Laurent series field Q((eps)) with lazy memoized coefficients.
//!
//! A series is a guaranteed lower exponent bound plus a total coefficient
//! function; a coefficient is computed at most once and the memo fill-in is
//! idempotent, so sharing one series across threads is safe. Zero detection
//! is undecidable for arbitrary lazy streams, so the representation keeps a
//! structural `zero` flag (propagated through arithmetic when it is certain)
//! and everything that needs a leading term takes a caller-supplied horizon,
//! failing with `PrecisionExhausted` instead of guessing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::Error;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Default scan horizon (largest exponent inspected when hunting for a
/// leading term).
pub const DEFAULT_HORIZON: i64 = 64;
/// Default order for printing and coefficientwise comparison.
pub const DEFAULT_ORDER: i64 = 32;

/// A single nonzero term `coefficient * eps^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponent: i64,
    pub coefficient: Rational,
}

impl Term {
    pub fn new(exponent: i64, coefficient: Rational) -> Self {
        debug_assert!(!coefficient.is_zero());
        Term { exponent, coefficient }
    }
}

#[derive(Clone)]
pub struct LaurentSeries {
    inner: Arc<Inner>,
}

struct Inner {
    lower: i64,
    zero: bool,
    cache: Mutex<HashMap<i64, Rational>>,
    source: Source,
}

enum Source {
    Terms(BTreeMap<i64, Rational>),
    Add(LaurentSeries, LaurentSeries),
    Neg(LaurentSeries),
    Mul(LaurentSeries, LaurentSeries),
    Recip(RecipState),
    Division(DivisionState),
}

/// Reciprocal via the standard recurrence after factoring out the leading
/// term: with a = c*eps^N*(1 + t), the inverse tail satisfies b0 = 1 and
/// b_k = -sum_{j=1..k} t_j b_{k-j}.
struct RecipState {
    a: LaurentSeries,
    lead_exp: i64,
    lead_coeff: Rational,
    b: Mutex<Vec<Rational>>,
}

/// Long division of two polynomials in eps with nonzero constant terms
/// (after shifting out trailing zeros): c_k = (n_k - sum d_j c_{k-j}) / d_0.
struct DivisionState {
    nhat: Vec<Rational>,
    dhat: Vec<Rational>,
    shift: i64,
    c: Mutex<Vec<Rational>>,
}

impl LaurentSeries {
    fn build(lower: i64, zero: bool, source: Source) -> Self {
        LaurentSeries {
            inner: Arc::new(Inner {
                lower,
                zero,
                cache: Mutex::new(HashMap::new()),
                source,
            }),
        }
    }

    /// Finite series from an explicit term list; duplicate exponents are
    /// rejected rather than merged.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for t in terms {
            if t.coefficient.is_zero() {
                continue;
            }
            if map.insert(t.exponent, t.coefficient).is_some() {
                return Err(Error::DuplicateExponent(t.exponent));
            }
        }
        let lower = map.keys().next().copied().unwrap_or(0);
        let zero = map.is_empty();
        Ok(Self::build(lower, zero, Source::Terms(map)))
    }

    pub fn zero() -> Self {
        Self::from_terms(Vec::new()).expect("no duplicates")
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self::from_terms(vec![Term::new(0, q)]).expect("single term")
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// `eps^k` (negative k gives powers of omega).
    pub fn epsilon_pow(k: i64) -> Self {
        Self::from_terms(vec![Term::new(k, Rational::one())]).expect("single term")
    }

    pub fn epsilon() -> Self {
        Self::epsilon_pow(1)
    }

    pub fn omega() -> Self {
        Self::epsilon_pow(-1)
    }

    /// Lazy expansion of num/den at eps = 0; the leading exponent is the
    /// difference of the trailing degrees.
    pub fn from_polys(num: &Polynomial, den: &Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let s = num.trailing_degree().expect("nonzero") as i64;
        let t = den.trailing_degree().expect("nonzero") as i64;
        let nhat: Vec<Rational> = (s as usize..=num.degree().expect("nonzero"))
            .map(|k| num.coeff(k))
            .collect();
        let dhat: Vec<Rational> = (t as usize..=den.degree().expect("nonzero"))
            .map(|k| den.coeff(k))
            .collect();
        let shift = s - t;
        Ok(Self::build(
            shift,
            false,
            Source::Division(DivisionState {
                nhat,
                dhat,
                shift,
                c: Mutex::new(Vec::new()),
            }),
        ))
    }

    /// A guaranteed bound: every coefficient below it is zero.
    pub fn lower_bound(&self) -> i64 {
        self.inner.lower
    }

    /// True only when the series is known to be exactly zero by construction.
    pub fn is_structural_zero(&self) -> bool {
        self.inner.zero
    }

    /// The coefficient of `eps^k`; total, deterministic, memoized.
    pub fn coeff(&self, k: i64) -> Rational {
        if self.inner.zero || k < self.inner.lower {
            return Rational::zero();
        }
        if let Some(c) = self.inner.cache.lock().unwrap().get(&k) {
            return c.clone();
        }
        let value = self.compute(k);
        self.inner
            .cache
            .lock()
            .unwrap()
            .entry(k)
            .or_insert(value)
            .clone()
    }

    fn compute(&self, k: i64) -> Rational {
        match &self.inner.source {
            Source::Terms(map) => map.get(&k).cloned().unwrap_or_else(Rational::zero),
            Source::Add(a, b) => &a.coeff(k) + &b.coeff(k),
            Source::Neg(a) => -&a.coeff(k),
            Source::Mul(a, b) => {
                let mut acc = Rational::zero();
                for i in a.inner.lower..=(k - b.inner.lower) {
                    let ai = a.coeff(i);
                    if ai.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&ai * &b.coeff(k - i));
                }
                acc
            }
            Source::Recip(state) => {
                // result coeff at exponent k is b[k + N] / c
                let idx = k + state.lead_exp;
                debug_assert!(idx >= 0);
                let mut b = state.b.lock().unwrap();
                if b.is_empty() {
                    b.push(Rational::one());
                }
                while (b.len() as i64) <= idx {
                    let j = b.len() as i64;
                    let mut acc = Rational::zero();
                    for i in 1..=j {
                        let t_i = state
                            .a
                            .coeff(state.lead_exp + i)
                            .checked_div(&state.lead_coeff)
                            .expect("nonzero leading coefficient");
                        if t_i.is_zero() {
                            continue;
                        }
                        acc = &acc + &(&t_i * &b[(j - i) as usize]);
                    }
                    b.push(-acc);
                }
                b[idx as usize]
                    .checked_div(&state.lead_coeff)
                    .expect("nonzero leading coefficient")
            }
            Source::Division(state) => {
                let idx = k - state.shift;
                debug_assert!(idx >= 0);
                let d0 = &state.dhat[0];
                let mut c = state.c.lock().unwrap();
                while (c.len() as i64) <= idx {
                    let j = c.len();
                    let n_j = state.nhat.get(j).cloned().unwrap_or_else(Rational::zero);
                    let mut acc = n_j;
                    for (i, d_i) in state.dhat.iter().enumerate().skip(1) {
                        if i > j {
                            break;
                        }
                        acc = &acc - &(d_i * &c[j - i]);
                    }
                    c.push(acc.checked_div(d0).expect("nonzero constant term"));
                }
                c[idx as usize].clone()
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let lower = self.inner.lower.min(rhs.inner.lower);
        let zero = self.inner.zero && rhs.inner.zero;
        Self::build(lower, zero, Source::Add(self.clone(), rhs.clone()))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Self::build(
            self.inner.lower,
            self.inner.zero,
            Source::Neg(self.clone()),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let zero = self.inner.zero || rhs.inner.zero;
        let lower = if zero {
            0
        } else {
            self.inner.lower + rhs.inner.lower
        };
        Self::build(lower, zero, Source::Mul(self.clone(), rhs.clone()))
    }

    /// Multiplicative inverse; needs to locate the leading term, so it takes
    /// a horizon and can fail with `PrecisionExhausted`.
    pub fn recip(&self, horizon: i64) -> Result<Self, Error> {
        if self.inner.zero {
            return Err(Error::DivisionByZero);
        }
        let lead = self
            .leading_term(horizon)?
            .ok_or(Error::DivisionByZero)?;
        Ok(Self::build(
            -lead.exponent,
            false,
            Source::Recip(RecipState {
                a: self.clone(),
                lead_exp: lead.exponent,
                lead_coeff: lead.coefficient,
                b: Mutex::new(Vec::new()),
            }),
        ))
    }

    pub fn div(&self, rhs: &Self, horizon: i64) -> Result<Self, Error> {
        Ok(self.mul(&rhs.recip(horizon)?))
    }

    /// The minimal-exponent nonzero term, scanning from the lower bound up
    /// to `horizon` (inclusive). `Ok(None)` means structurally zero.
    pub fn leading_term(&self, horizon: i64) -> Result<Option<Term>, Error> {
        if self.inner.zero {
            return Ok(None);
        }
        for k in self.inner.lower..=horizon {
            let c = self.coeff(k);
            if !c.is_zero() {
                return Ok(Some(Term::new(k, c)));
            }
        }
        Err(Error::PrecisionExhausted(horizon))
    }

    /// Sign of the leading term; 0 only for a structural zero.
    pub fn sign(&self, horizon: i64) -> Result<i32, Error> {
        Ok(match self.leading_term(horizon)? {
            None => 0,
            Some(t) => t.coefficient.signum(),
        })
    }

    pub fn cmp_order(&self, rhs: &Self, horizon: i64) -> Result<Ordering, Error> {
        Ok(match self.sub(rhs).sign(horizon)? {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn abs(&self, horizon: i64) -> Result<Self, Error> {
        Ok(if self.sign(horizon)? < 0 {
            self.neg()
        } else {
            self.clone()
        })
    }

    /// Ultrametric norm 2^(-N) where N is the leading exponent; 0 for zero.
    pub fn norm(&self, horizon: i64) -> Result<Rational, Error> {
        Ok(match self.leading_term(horizon)? {
            None => Rational::zero(),
            Some(t) => Rational::pow2(-t.exponent),
        })
    }

    /// Exactly the nonzero terms with negative exponent.
    pub fn principal_part(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for k in self.inner.lower..0 {
            let c = self.coeff(k);
            if !c.is_zero() {
                out.push(Term::new(k, c));
            }
        }
        out
    }

    /// Coefficientwise equality for all exponents up to `order` (inclusive).
    pub fn eq_through_order(&self, rhs: &Self, order: i64) -> bool {
        let lo = self.inner.lower.min(rhs.inner.lower);
        (lo..=order).all(|k| self.coeff(k) == rhs.coeff(k))
    }

    /// Truncation to the nonzero terms with exponent below `order`.
    pub fn truncate(&self, order: i64) -> Vec<Term> {
        (self.inner.lower..order)
            .filter_map(|k| {
                let c = self.coeff(k);
                (!c.is_zero()).then(|| Term::new(k, c))
            })
            .collect()
    }

    /// Pretty print through `order`: ascending exponents, `c*e^k` with the
    /// rational coefficient in lowest terms, exponent 0 bare, unit
    /// coefficients elided, closing `+ O(e^order)`.
    pub fn display(&self, order: i64) -> String {
        if self.inner.zero {
            return "0".to_string();
        }
        let terms = self.truncate(order);
        let mut parts: Vec<String> = terms
            .iter()
            .map(|t| {
                let base = match t.exponent {
                    0 => String::new(),
                    1 => "e".to_string(),
                    k => format!("e^{k}"),
                };
                if t.exponent == 0 {
                    t.coefficient.to_string()
                } else if t.coefficient.is_one() {
                    base
                } else if (-&t.coefficient).is_one() {
                    format!("-{base}")
                } else {
                    format!("{}*{base}", t.coefficient)
                }
            })
            .collect();
        parts.push(format!("O(e^{order})"));
        parts.join(" + ")
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(8))
    }
}

/// A sequence of series, optionally carrying a stabilization bound: a
/// function from exponent k to an index past which the coefficient of
/// `eps^k` (and the principal-part support below k) no longer changes.
/// Limits require the bound for a constructive verdict; without it only
/// counter-witnesses or an inconclusive outcome are possible.
#[derive(Clone)]
pub struct SeriesSequence {
    at: Arc<dyn Fn(usize) -> LaurentSeries + Send + Sync>,
    bound: Option<Arc<dyn Fn(i64) -> usize + Send + Sync>>,
}

impl SeriesSequence {
    pub fn new(at: impl Fn(usize) -> LaurentSeries + Send + Sync + 'static) -> Self {
        SeriesSequence {
            at: Arc::new(at),
            bound: None,
        }
    }

    pub fn with_bound(
        at: impl Fn(usize) -> LaurentSeries + Send + Sync + 'static,
        bound: impl Fn(i64) -> usize + Send + Sync + 'static,
    ) -> Self {
        SeriesSequence {
            at: Arc::new(at),
            bound: Some(Arc::new(bound)),
        }
    }

    pub fn at(&self, n: usize) -> LaurentSeries {
        (self.at)(n)
    }

    pub fn stabilization_bound(&self, exponent: i64) -> Option<usize> {
        self.bound.as_ref().map(|b| b(exponent))
    }

    /// The sequence of partial sums of `self`.
    pub fn partial_sums(&self) -> SeriesSequence {
        let terms = self.clone();
        let at = move |n: usize| {
            let mut acc = terms.at(0);
            for m in 1..=n {
                acc = acc.add(&terms.at(m));
            }
            acc
        };
        SeriesSequence {
            at: Arc::new(at),
            bound: self.bound.clone(),
        }
    }
}

/// Outcome of a sequence-limit computation.
pub enum LimitOutcome {
    /// The exact limit, materialized through the requested order.
    Limit(LaurentSeries),
    /// Indices i < j whose coefficients of `eps^exponent` differ.
    NoStabilization { exponent: i64, i: usize, j: usize },
}

/// How many indices the heuristic scan inspects when no bound is supplied,
/// and how many spot-checks validate a supplied bound.
const SCAN_BUDGET: usize = 16;
const SPOT_CHECKS: [usize; 3] = [1, 2, 5];

/// Limit of a sequence of Laurent series, exact through `order`.
///
/// With a stabilization bound the limit coefficient at exponent k is read
/// off at index bound(k) and the bound is spot-checked; any violation is
/// returned as a `NoStabilization` witness. Without a bound the scan can
/// only find counter-witnesses, never certify convergence.
pub fn seq_limit(s: &SeriesSequence, order: i64) -> Result<LimitOutcome, Error> {
    if let Some(idx0) = s.stabilization_bound(0) {
        let lower = s.at(idx0).lower_bound().min(0);
        let mut terms = Vec::new();
        for k in lower..=order {
            let idx = s.stabilization_bound(k).expect("bound is total");
            let c = s.at(idx).coeff(k);
            for extra in SPOT_CHECKS {
                let j = idx + extra;
                if s.at(j).coeff(k) != c {
                    return Ok(LimitOutcome::NoStabilization { exponent: k, i: idx, j });
                }
            }
            if !c.is_zero() {
                terms.push(Term::new(k, c));
            }
        }
        return Ok(LimitOutcome::Limit(LaurentSeries::from_terms(terms)?));
    }
    // No bound: hunt for the latest index where some coefficient still moves.
    let lower = (0..SCAN_BUDGET).map(|n| s.at(n).lower_bound()).min().unwrap_or(0);
    for k in lower..=order {
        for j in (1..SCAN_BUDGET).rev() {
            if s.at(j).coeff(k) != s.at(j - 1).coeff(k) {
                return Ok(LimitOutcome::NoStabilization { exponent: k, i: j - 1, j });
            }
        }
    }
    Err(Error::HeuristicInconclusive)
}

/// Sum of a series of Laurent series whose terms tend to zero with an
/// explicit bound: for each exponent k only the terms up to bound(k) may
/// have a nonzero k-coefficient. Exact through `order`.
pub fn sum_series(terms: &SeriesSequence, order: i64) -> Result<LaurentSeries, Error> {
    let idx_probe = [
        terms.stabilization_bound(0).ok_or(Error::HeuristicInconclusive)?,
        terms.stabilization_bound(order).ok_or(Error::HeuristicInconclusive)?,
        terms.stabilization_bound(-1).ok_or(Error::HeuristicInconclusive)?,
    ];
    let idx_max = idx_probe.into_iter().max().expect("nonempty");
    let lower = (0..=idx_max)
        .map(|n| terms.at(n).lower_bound())
        .min()
        .unwrap_or(0)
        .min(0);
    let mut out = Vec::new();
    for k in lower..=order {
        let bound = terms.stabilization_bound(k).expect("bound is total");
        let mut acc = Rational::zero();
        for n in 0..=bound {
            acc = &acc + &terms.at(n).coeff(k);
        }
        for extra in SPOT_CHECKS {
            let n = bound + extra;
            if !terms.at(n).coeff(k).is_zero() {
                return Err(Error::NotSummable { index: n, exponent: k });
            }
        }
        if !acc.is_zero() {
            out.push(Term::new(k, acc));
        }
    }
    LaurentSeries::from_terms(out)
}
