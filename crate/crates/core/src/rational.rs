//! Arbitrary-precision rational arithmetic with canonical normalization.
//!
//! The coefficient domain for everything else in the crate. Backed by
//! `num-rational`, which already enforces the canonical form we need:
//! positive denominator, reduced fraction, zero stored as `0/1`. The
//! wrapper adds the dyadic-grid helpers and exact decimal parsing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers; panics on q = 0 (use `new` for checked).
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Sign as -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// `2^n` for any integer n, as an exact rational.
    pub fn pow2(n: i64) -> Self {
        let two = BigInt::from(2);
        if n >= 0 {
            Rational(BigRational::from_integer(two.pow(n as u32)))
        } else {
            Rational(BigRational::new(BigInt::one(), two.pow((-n) as u32)))
        }
    }

    /// Integer power with exact result; negative exponents invert.
    pub fn pow(&self, n: i64) -> Result<Self, Error> {
        if n >= 0 {
            Ok(Rational(self.0.pow(n as i32)))
        } else {
            if self.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational(self.0.pow(n as i32)))
        }
    }

    /// Largest element of the grid `2^-n Z` that is `<= self`.
    ///
    /// Satisfies `result <= self < result + 2^-n`.
    pub fn dyadic_floor(&self, n: u32) -> Self {
        let scale = BigInt::from(2).pow(n);
        let scaled = &self.0 * BigRational::from_integer(scale.clone());
        let k = scaled.floor().to_integer();
        Rational(BigRational::new(k, scale))
    }

    /// Parses an integer, a fraction `p/q`, or an exact decimal like `0.125`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Syntax {
            position: 0,
            message: format!("{msg}: {text:?}"),
        };
        if let Some((p, q)) = text.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad("bad numerator"))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad("bad denominator"))?;
            return Rational::new(p, q);
        }
        if let Some((int_part, frac_part)) = text.split_once('.') {
            let int_part = if int_part.is_empty() { "0" } else { int_part };
            let negative = int_part.starts_with('-');
            let whole = BigInt::from_str(int_part).map_err(|_| bad("bad integer part"))?;
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("bad fractional part"));
            }
            let digits = BigInt::from_str(frac_part).map_err(|_| bad("bad fractional part"))?;
            let scale = BigInt::from(10).pow(frac_part.len() as u32);
            let frac = BigRational::new(digits, scale);
            let whole = BigRational::from_integer(whole);
            let value = if negative { whole - frac } else { whole + frac };
            return Ok(Rational(value));
        }
        let n = BigInt::from_str(text.trim()).map_err(|_| bad("bad integer"))?;
        Ok(Rational(BigRational::from_integer(n)))
    }

    /// `n!` as a rational, used by the series refuters.
    pub fn factorial(n: u64) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= BigInt::from(k);
        }
        Rational(BigRational::from_integer(acc))
    }

    /// Content-style gcd of two rationals: gcd of numerators over lcm of
    /// denominators. Used to strip common content from polynomials.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let num = self.numer().gcd(other.numer());
        let den = self.denom().lcm(other.denom());
        Rational(BigRational::new(num, den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use `checked_div` where that can happen.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Total-order comparison; provided as a named function alongside `Ord`
/// so call sites mirror the other fields' comparison entry points.
pub fn rat_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}
