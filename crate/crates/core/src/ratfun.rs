//! The field Q(w) = Q(eps) of rational functions in one variable, carrying
//! one of two orderings: by behavior at infinity (the variable is an
//! infinitely large `w`) or by behavior near zero from the right (the
//! variable is a positive infinitesimal `eps`).
//!
//! Both orderings live on one representation distinguished by a tag; the
//! isomorphism between them substitutes the variable by its reciprocal.
//! Signs are decided by leading/trailing coefficient arithmetic, never by
//! sampling; sampling appears only in tests as an oracle.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;
use crate::laurent::LaurentSeries;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Which limiting regime orders the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderTag {
    /// Variable `w`, larger than every rational.
    AtInfinity,
    /// Variable `eps`, a positive infinitesimal.
    NearZero,
}

impl OrderTag {
    pub fn variable(self) -> char {
        match self {
            OrderTag::AtInfinity => 'w',
            OrderTag::NearZero => 'e',
        }
    }
}

/// Where an element sits relative to the rationals embedded in the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    PositiveInfinite,
    NegativeInfinite,
    FiniteNonInfinitesimal,
    PositiveInfinitesimal,
    NegativeInfinitesimal,
    Zero,
}

/// A reduced fraction of polynomials with a canonical representative:
/// gcd(num, den) = 1 and the denominator's leading coefficient positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
    tag: OrderTag,
}

impl RationalFunction {
    /// Canonicalizes `num/den`; the single entry point that enforces the
    /// invariants.
    pub fn new(num: Polynomial, den: Polynomial, tag: OrderTag) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
                tag,
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        // Make the denominator monic; fold the factor into the numerator.
        let (den, lead) = den.monic();
        let num = num.scale(&lead.recip().expect("nonzero lead"));
        Ok(RationalFunction { num, den, tag })
    }

    pub fn from_rational(q: Rational, tag: OrderTag) -> Self {
        RationalFunction {
            num: Polynomial::constant(q),
            den: Polynomial::one(),
            tag,
        }
    }

    pub fn from_int(n: i64, tag: OrderTag) -> Self {
        Self::from_rational(Rational::from_int(n), tag)
    }

    /// The infinitely large element: the variable under `AtInfinity`, its
    /// reciprocal under `NearZero`.
    pub fn omega(tag: OrderTag) -> Self {
        match tag {
            OrderTag::AtInfinity => RationalFunction {
                num: Polynomial::x(),
                den: Polynomial::one(),
                tag,
            },
            OrderTag::NearZero => RationalFunction {
                num: Polynomial::one(),
                den: Polynomial::x(),
                tag,
            },
        }
    }

    /// The positive infinitesimal; reciprocal of [`Self::omega`].
    pub fn epsilon(tag: OrderTag) -> Self {
        Self::omega(tag).recip().expect("omega is nonzero")
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check_tag(&self, other: &Self) -> Result<(), Error> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(Error::TagMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_tag(rhs)?;
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
            self.tag,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_tag(rhs)?;
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den, self.tag)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, Error> {
        self.check_tag(rhs)?;
        self.mul(&rhs.recip()?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
            tag: self.tag,
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        RationalFunction::new(self.den.clone(), self.num.clone(), self.tag)
    }

    /// Sign in the field's order, decided by coefficient arithmetic.
    ///
    /// Under `AtInfinity` the sign for large arguments is the sign of the
    /// numerator's leading coefficient (the denominator is monic). Under
    /// `NearZero` the sign for small positive arguments is the product of
    /// the trailing coefficients' signs.
    pub fn sign(&self) -> i32 {
        if self.num.is_zero() {
            return 0;
        }
        match self.tag {
            OrderTag::AtInfinity => self.num.leading_coeff().expect("nonzero").signum(),
            OrderTag::NearZero => {
                self.num.trailing_coeff().expect("nonzero").signum()
                    * self.den.trailing_coeff().expect("nonzero").signum()
            }
        }
    }

    pub fn cmp_order(&self, rhs: &Self) -> Result<Ordering, Error> {
        Ok(match self.sub(rhs)?.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Infinite / finite / infinitesimal, certified by degree arithmetic.
    ///
    /// The valuation is deg(den) - deg(num) at infinity, or the difference
    /// of trailing degrees near zero: negative means the element dominates
    /// every rational, positive means it is below every positive rational.
    pub fn classify(&self) -> Classification {
        if self.num.is_zero() {
            return Classification::Zero;
        }
        let v = self.valuation().expect("nonzero");
        let positive = self.sign() > 0;
        match v.cmp(&0) {
            Ordering::Less if positive => Classification::PositiveInfinite,
            Ordering::Less => Classification::NegativeInfinite,
            Ordering::Equal => Classification::FiniteNonInfinitesimal,
            Ordering::Greater if positive => Classification::PositiveInfinitesimal,
            Ordering::Greater => Classification::NegativeInfinitesimal,
        }
    }

    /// Order of vanishing in the field's limiting regime; None for zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(match self.tag {
            OrderTag::AtInfinity => {
                self.den.degree().expect("nonzero den") as i64
                    - self.num.degree().expect("nonzero num") as i64
            }
            OrderTag::NearZero => {
                self.num.trailing_degree().expect("nonzero num") as i64
                    - self.den.trailing_degree().expect("nonzero den") as i64
            }
        })
    }

    /// The finite "standard part": the coefficient of the order-zero term.
    /// For a finite element x this is the unique rational r with x - r
    /// infinitesimal or zero; meaningless for infinite elements.
    pub fn standard_part(&self) -> Rational {
        match self.classify() {
            Classification::Zero
            | Classification::PositiveInfinitesimal
            | Classification::NegativeInfinitesimal => Rational::zero(),
            _ => match self.tag {
                OrderTag::AtInfinity => {
                    let n = self.num.degree().expect("nonzero");
                    let d = self.den.degree().expect("nonzero");
                    debug_assert!(n == d);
                    self.num.leading_coeff().expect("nonzero").clone()
                }
                OrderTag::NearZero => {
                    let n = self.num.trailing_degree().expect("nonzero");
                    let d = self.den.trailing_degree().expect("nonzero");
                    debug_assert!(n == d);
                    &self.num.coeff(n)
                        / self.den.trailing_coeff().expect("nonzero")
                }
            },
        }
    }

    /// Exact evaluation at a rational point; errors if the point is a pole.
    pub fn eval(&self, at: &Rational) -> Result<Rational, Error> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(at) / &d)
    }

    /// An integer N such that for every n >= N, the sign of the evaluation
    /// (at n for `AtInfinity`, at 1/n for `NearZero`) matches [`Self::sign`].
    /// Cauchy root bound on numerator and denominator.
    pub fn sign_certification_bound(&self) -> u64 {
        fn at_infinity_bound(p: &Polynomial) -> Rational {
            match p.leading_coeff() {
                None => Rational::one(),
                Some(lead) => {
                    let mut m = Rational::zero();
                    for c in p.coeffs() {
                        let q = &c.abs() / &lead.abs();
                        if q > m {
                            m = q;
                        }
                    }
                    &m + &Rational::one()
                }
            }
        }
        fn near_zero_bound(p: &Polynomial) -> Rational {
            match p.trailing_coeff() {
                None => Rational::one(),
                Some(trail) => {
                    let mut m = Rational::zero();
                    for c in p.coeffs() {
                        let q = &c.abs() / &trail.abs();
                        if q > m {
                            m = q;
                        }
                    }
                    &m + &Rational::one()
                }
            }
        }
        let b = match self.tag {
            OrderTag::AtInfinity => {
                let bn = at_infinity_bound(&self.num);
                let bd = at_infinity_bound(&self.den);
                if bn > bd { bn } else { bd }
            }
            OrderTag::NearZero => {
                let bn = near_zero_bound(&self.num);
                let bd = near_zero_bound(&self.den);
                if bn > bd { bn } else { bd }
            }
        };
        let f: num_bigint::BigInt = b.floor_int() + 2;
        u64::try_from(f).unwrap_or(u64::MAX)
    }

    /// The order isomorphism between the two tags: substitutes the variable
    /// by its reciprocal, so `w` maps to `1/eps` and back.
    pub fn swap_tag(&self) -> Self {
        let reverse = |p: &Polynomial| -> Polynomial {
            let mut coeffs: Vec<Rational> = p.coeffs().to_vec();
            coeffs.reverse();
            Polynomial::new(coeffs)
        };
        if self.num.is_zero() {
            return RationalFunction::from_rational(Rational::zero(), self.flip());
        }
        let dn = self.num.degree().expect("nonzero") as i64;
        let dd = self.den.degree().expect("nonzero") as i64;
        // f(1/x) = rev(num) * x^(dd-dn) / rev(den)
        let mut num = reverse(&self.num);
        let mut den = reverse(&self.den);
        if dd >= dn {
            num = &num * &Polynomial::monomial(Rational::one(), (dd - dn) as usize);
        } else {
            den = &den * &Polynomial::monomial(Rational::one(), (dn - dd) as usize);
        }
        RationalFunction::new(num, den, self.flip()).expect("nonzero denominator")
    }

    fn flip(&self) -> OrderTag {
        match self.tag {
            OrderTag::AtInfinity => OrderTag::NearZero,
            OrderTag::NearZero => OrderTag::AtInfinity,
        }
    }

    /// Expansion into a formal Laurent series at eps = 0 by lazy long
    /// division. Requires the `NearZero` tag, where the variable already
    /// is the series variable.
    pub fn to_laurent(&self) -> Result<LaurentSeries, Error> {
        if self.tag != OrderTag::NearZero {
            return Err(Error::TagMismatch);
        }
        LaurentSeries::from_polys(&self.num, &self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.tag.variable();
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num.display(v))
        } else {
            write!(f, "({})/({})", self.num.display(v), self.den.display(v))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
