//! Dense univariate polynomials over the rationals, the building block for
//! the rational-function field.
//!
//! Canonical form: coefficients ascending by degree with no trailing zero,
//! so the zero polynomial is the empty list and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    /// coeffs[i] is the coefficient of x^i; last entry nonzero when nonempty.
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Polynomial::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient, or None for zero.
    pub fn trailing_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.trailing_degree().map(|k| &self.coeffs[k])
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides out the rational content and makes the leading coefficient 1.
    /// Returns (monic polynomial, removed factor). Zero maps to (0, 1).
    pub fn monic(&self) -> (Self, Rational) {
        match self.leading_coeff() {
            None => (Polynomial::zero(), Rational::one()),
            Some(lead) => {
                let lead = lead.clone();
                (self.scale(&lead.recip().expect("nonzero lead")), lead)
            }
        }
    }

    /// Euclidean division: self = q*d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Polynomial) -> Result<(Polynomial, Polynomial), Error> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let dlead = d.leading_coeff().expect("nonzero divisor").clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let factor = &r[r.len() - 1] / &dlead;
            for i in 0..=dd {
                let t = &d.coeffs[i] * &factor;
                r[k + i] = &r[k + i] - &t;
            }
            q[k] = factor;
            while r.last().is_some_and(Rational::is_zero) {
                r.pop();
            }
            // the leading term cancels by construction
            debug_assert!(r.len() <= k + dd);
        }
        Ok((Polynomial::new(q), Polynomial::new(r)))
    }

    /// Monic gcd by the rational Euclidean algorithm; each remainder is
    /// renormalized to keep coefficient growth in check.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.monic().0;
        let mut b = other.monic().0;
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic().0;
        }
        a
    }

    /// Pretty form in the given variable, descending powers.
    pub fn display(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let part = if k == 0 {
                c.to_string()
            } else if c.is_one() {
                var_part
            } else if (-c).is_one() {
                format!("-{var_part}")
            } else {
                format!("{c}*{var_part}")
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display('x'))
    }
}

impl<'a> Add for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    #[test]
    fn canonical_degree() {
        assert_eq!(Polynomial::new(vec![Rational::zero()]), Polynomial::zero());
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0, 3]).trailing_degree(), Some(2));
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let d = p(&[-1, 1]); // x - 1
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        let a = p(&[3, 1, 4, 1]);
        let d = p(&[2, 0, 1]);
        let (q, r) = a.div_rem(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let a = p(&[-1, 0, 1]); // (x-1)(x+1)
        let b = p(&[-1, 1]); // x - 1
        assert_eq!(a.gcd(&b), b);
        assert_eq!(p(&[2]).gcd(&p(&[0, 7])), Polynomial::one());
    }

    #[test]
    fn eval_is_exact() {
        let a = p(&[1, -3, 2]); // 2x^2 - 3x + 1
        assert_eq!(a.eval(&Rational::ratio(1, 2)), Rational::zero());
        assert_eq!(a.eval(&Rational::from_int(2)), Rational::from_int(3));
    }

    #[test]
    fn display_descending() {
        assert_eq!(p(&[1, 0, -1]).display('w'), "-w^2 + 1");
        assert_eq!(p(&[0, 1]).display('e'), "e");
    }
}
