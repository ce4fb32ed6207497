//! Cuts and gaps with decidable membership, and the refuters that turn any
//! candidate cutpoint or least upper bound into an exact counter-witness.

use crate::error::Error;
use crate::field::{FieldElement, FieldHandle, FieldKind, FieldOps};
use crate::probes::{Witness, WitnessKind};
use crate::rational::Rational;

/// Which side of a cut an element lies on. `A` is the lower set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

enum CutKind {
    /// A = { x : x < 0 or x^2 < 2 }. A gap in every implemented field
    /// (no element built from rational data squares to 2).
    Sqrt2,
    /// A = everything whose offset from `center` is negative, zero, or a
    /// positive infinitesimal — the halo of the center and all below it.
    Halo { center: Rational },
    /// A = finite or negatively infinite series; B = positively infinite.
    LaurentFinite,
}

/// A decidable two-sided partition of a field.
pub struct Cut {
    pub name: &'static str,
    handle: FieldHandle,
    kind: CutKind,
    /// Rational bracket (lo in A, hi in B) when one exists; drives the
    /// dyadic-grid constructions.
    rational_bracket: Option<(Rational, Rational)>,
    /// Stored nonemptiness witnesses: one element of each side.
    pub member_a: FieldElement,
    pub member_b: FieldElement,
}

/// The square-root-of-two gap, available in every field.
pub fn cut_sqrt2(handle: FieldHandle) -> Cut {
    Cut {
        name: "sqrt2",
        member_a: handle.from_int(1),
        member_b: handle.from_int(2),
        handle,
        kind: CutKind::Sqrt2,
        rational_bracket: Some((Rational::from_int(1), Rational::from_int(2))),
    }
}

/// The halo gap around a rational center: A ends just past `center`'s
/// infinitesimal neighborhood. Only non-Archimedean fields have this gap.
pub fn cut_halo(handle: FieldHandle, center: Rational) -> Result<Cut, Error> {
    if handle.kind == FieldKind::Rationals {
        return Err(Error::UnsupportedField(handle.name()));
    }
    let hi = &center + &Rational::one();
    Ok(Cut {
        name: "halo",
        member_a: handle.from_rational(&center),
        member_b: handle.from_rational(&hi),
        handle,
        kind: CutKind::Halo { center: center.clone() },
        rational_bracket: Some((center, hi)),
    })
}

/// The finite/positively-infinite partition of the Laurent series field.
pub fn cut_laurent_finite(handle: FieldHandle) -> Result<Cut, Error> {
    if handle.kind != FieldKind::Laurent {
        return Err(Error::UnsupportedField(handle.name()));
    }
    Ok(Cut {
        name: "laurent-finite",
        member_a: handle.zero(),
        member_b: handle.omega()?,
        handle,
        kind: CutKind::LaurentFinite,
        // every rational is on the A side; no rational bracket exists
        rational_bracket: None,
    })
}

impl Cut {
    pub fn handle(&self) -> &FieldHandle {
        &self.handle
    }

    pub fn rational_bracket(&self) -> Option<(Rational, Rational)> {
        self.rational_bracket.clone()
    }

    /// Total, exact membership test.
    pub fn side_of(&self, x: &FieldElement) -> Result<Side, Error> {
        let h = &self.handle;
        match &self.kind {
            CutKind::Sqrt2 => {
                if h.sign(x)? < 0 {
                    return Ok(Side::A);
                }
                let gap = h.sub(&h.mul(x, x)?, &h.from_int(2))?;
                match h.sign(&gap)? {
                    s if s < 0 => Ok(Side::A),
                    s if s > 0 => Ok(Side::B),
                    // x^2 = 2 has no solution over rational data; reaching
                    // here means the input was not a genuine field element
                    _ => Err(Error::NotAGap),
                }
            }
            CutKind::Halo { center } => {
                let d = h.sub(x, &h.from_rational(center))?;
                match &d {
                    FieldElement::RatFun(f) => {
                        if f.sign() <= 0 {
                            Ok(Side::A)
                        } else if f.valuation().expect("nonzero") >= 1 {
                            // positive infinitesimal stays inside the halo
                            Ok(Side::A)
                        } else {
                            Ok(Side::B)
                        }
                    }
                    FieldElement::Laurent(s) => match s.leading_term(h.horizon) {
                        Ok(None) => Ok(Side::A),
                        // zero offset through the horizon: inside the halo
                        Err(Error::PrecisionExhausted(_)) => Ok(Side::A),
                        Err(e) => Err(e),
                        Ok(Some(t)) => {
                            if t.coefficient.is_negative() || t.exponent >= 1 {
                                Ok(Side::A)
                            } else {
                                Ok(Side::B)
                            }
                        }
                    },
                    FieldElement::Rat(_) => Err(Error::UnsupportedField("q")),
                }
            }
            CutKind::LaurentFinite => match x {
                FieldElement::Laurent(s) => {
                    match s.principal_part().first() {
                        // positively infinite iff the leading principal
                        // term is positive
                        Some(t) if t.coefficient.is_positive() => Ok(Side::B),
                        _ => Ok(Side::A),
                    }
                }
                _ => Err(Error::UnsupportedField(self.handle.name())),
            },
        }
    }

    /// Largest grid point `a_n` of `2^-n Z` in A and smallest grid point
    /// `b_n` in B, by bracketed binary search; `b_n = a_n + 2^-n`.
    pub fn dyadic_pair(&self, n: u32) -> Result<(Rational, Rational), Error> {
        let (lo, hi) = self
            .rational_bracket
            .clone()
            .ok_or(Error::UnsupportedField(self.handle.name()))?;
        let step = Rational::pow2(-(n as i64));
        let scale = step.recip()?;
        let grid = |k: &num_bigint::BigInt| {
            Rational::new(k.clone(), num_bigint::BigInt::from(1))
                .expect("unit denominator")
                .checked_div(&scale)
                .expect("nonzero scale")
        };
        // integer grid indices: k_lo/2^n <= lo (in A by monotonicity),
        // k_hi/2^n >= hi (in B)
        let mut k_lo = lo.dyadic_floor(n).checked_div(&step)?.floor_int();
        let mut k_hi = (&hi.dyadic_floor(n) + &step).checked_div(&step)?.floor_int();
        let two = num_bigint::BigInt::from(2);
        while &k_hi - &k_lo > num_bigint::BigInt::from(1) {
            let mid = (&k_lo + &k_hi) / &two;
            match self.side_of(&self.handle.from_rational(&grid(&mid)))? {
                Side::A => k_lo = mid,
                Side::B => k_hi = mid,
            }
        }
        let a = grid(&k_lo);
        Ok((a.clone(), &a + &step))
    }
}

/// Moves a candidate toward the sqrt2 boundary while staying on its side:
/// c' = c - (c^2 - 2)/(c + 2) = (2c + 2)/(c + 2). For c in A with c >= 0,
/// c' > c and c' in A; for c in B, c' < c and c' in B, because
/// c'^2 - 2 = 2(c^2 - 2)/(c + 2)^2 has the sign of c^2 - 2.
fn sqrt2_step(h: &FieldHandle, c: &FieldElement) -> Result<FieldElement, Error> {
    let two = h.from_int(2);
    let num = h.add(&h.mul(&two, c)?, &two)?;
    let den = h.add(c, &two)?;
    h.div(&num, &den)
}

/// Refutes `candidate` as a cutpoint: returns an element strictly beyond it
/// on its own side, certified exactly.
pub fn refute_cutpoint(cut: &Cut, candidate: &FieldElement) -> Result<Witness, Error> {
    let h = cut.handle();
    let side = cut.side_of(candidate)?;
    let witness = match (&cut.kind, side) {
        (CutKind::Sqrt2, Side::A) => {
            // below the bracket: the midpoint toward the A-endpoint works
            let one = h.from_int(1);
            if h.cmp(candidate, &one)? == std::cmp::Ordering::Less {
                h.div(&h.add(candidate, &one)?, &h.from_int(2))?
            } else {
                sqrt2_step(h, candidate)?
            }
        }
        (CutKind::Sqrt2, Side::B) => {
            let two = h.from_int(2);
            if h.cmp(candidate, &two)? == std::cmp::Ordering::Greater {
                h.div(&h.add(candidate, &two)?, &h.from_int(2))?
            } else {
                sqrt2_step(h, candidate)?
            }
        }
        (CutKind::Halo { .. }, Side::A) => h.add(candidate, &h.epsilon()?)?,
        (CutKind::Halo { center }, Side::B) => {
            // halve the positive non-infinitesimal offset
            let c = h.from_rational(center);
            let d = h.sub(candidate, &c)?;
            h.add(&c, &h.div(&d, &h.from_int(2))?)?
        }
        (CutKind::LaurentFinite, Side::A) => h.add(candidate, &h.from_int(1))?,
        (CutKind::LaurentFinite, Side::B) => h.sub(candidate, &h.from_int(1))?,
    };
    // certify: same side, strictly beyond the candidate
    let wside = cut.side_of(&witness)?;
    debug_assert_eq!(wside, side);
    let relation = match side {
        Side::A => {
            debug_assert_eq!(h.cmp(&witness, candidate)?, std::cmp::Ordering::Greater);
            "greater than the candidate yet still in A"
        }
        Side::B => {
            debug_assert_eq!(h.cmp(&witness, candidate)?, std::cmp::Ordering::Less);
            "less than the candidate yet still in B"
        }
    };
    Ok(Witness::new(
        WitnessKind::WrongSideElement,
        vec![witness.clone(), candidate.clone()],
        format!(
            "{} cut: {} is {} — so the candidate {} separates neither side",
            cut.name,
            h.format(&witness),
            relation,
            h.format(candidate),
        ),
    ))
}

/// Re-checks a cutpoint witness from its raw elements.
pub fn verify_cutpoint_witness(cut: &Cut, w: &Witness) -> Result<bool, Error> {
    let h = cut.handle();
    let (witness, candidate) = (&w.elements[0], &w.elements[1]);
    let same_side = cut.side_of(witness)? == cut.side_of(candidate)?;
    let beyond = match cut.side_of(candidate)? {
        Side::A => h.cmp(witness, candidate)? == std::cmp::Ordering::Greater,
        Side::B => h.cmp(witness, candidate)? == std::cmp::Ordering::Less,
    };
    Ok(same_side && beyond)
}

/// Refutes `candidate` as a least upper bound of the A side: either a
/// member of A exceeds it, or a smaller upper bound exists.
pub fn refute_lub(cut: &Cut, candidate: &FieldElement) -> Result<Witness, Error> {
    let inner = refute_cutpoint(cut, candidate)?;
    let h = cut.handle();
    let witness = inner.elements[0].clone();
    Ok(match cut.side_of(candidate)? {
        Side::A => Witness::new(
            WitnessKind::LargerMember,
            inner.elements,
            format!(
                "{} exceeds the candidate and belongs to the lower set, so the candidate is not an upper bound",
                h.format(&witness)
            ),
        ),
        Side::B => Witness::new(
            WitnessKind::SmallerUpperBound,
            inner.elements,
            format!(
                "{} is an upper bound of the lower set (it lies in B, and every B element bounds A) and is smaller than the candidate",
                h.format(&witness)
            ),
        ),
    })
}

/// The two-valued function that is -1 on A and 1 on B: continuous at every
/// point of a gap (locally constant), yet skips every value in between.
pub fn step_function<'a>(
    cut: &'a Cut,
) -> impl Fn(&FieldElement) -> Result<FieldElement, Error> + 'a {
    move |x| {
        Ok(match cut.side_of(x)? {
            Side::A => cut.handle().from_int(-1),
            Side::B => cut.handle().from_int(1),
        })
    }
}

/// A radius delta > 0 such that the entire ball (x - delta, x + delta) lies
/// on x's side, certified by membership at the endpoints plus monotonicity
/// of the cut. Tries a halving rational schedule, then an infinitesimal.
pub fn local_constancy_witness(cut: &Cut, x: &FieldElement) -> Result<FieldElement, Error> {
    let h = cut.handle();
    let side = cut.side_of(x)?;
    let mut candidates: Vec<FieldElement> =
        (0..12).map(|k| h.from_rational(&Rational::pow2(-k))).collect();
    if let Ok(eps) = h.epsilon() {
        candidates.push(eps);
    }
    for delta in candidates {
        let lo_ok = cut.side_of(&h.sub(x, &delta)?)? == side;
        let hi_ok = cut.side_of(&h.add(x, &delta)?)? == side;
        if lo_ok && hi_ok {
            return Ok(delta);
        }
    }
    Err(Error::HeuristicInconclusive)
}

/// The bounded function with no maximum: f(x) = x on A, 0 on B, over [0,3].
pub fn evp_function<'a>(
    cut: &'a Cut,
) -> impl Fn(&FieldElement) -> Result<FieldElement, Error> + 'a {
    move |x| {
        Ok(match cut.side_of(x)? {
            Side::A => x.clone(),
            Side::B => cut.handle().zero(),
        })
    }
}

/// Refutes `candidate` (in [0, 3]) as a location of the maximum of the
/// bounded function above.
pub fn refute_max(cut: &Cut, candidate: &FieldElement) -> Result<Witness, Error> {
    let h = cut.handle();
    let f = evp_function(cut);
    let f_cand = f(candidate)?;
    match cut.side_of(candidate)? {
        Side::B => {
            let one = h.from_int(1);
            let f_one = f(&one)?;
            debug_assert_eq!(h.cmp(&f_one, &f_cand)?, std::cmp::Ordering::Greater);
            Ok(Witness::new(
                WitnessKind::BiggerValue,
                vec![one.clone(), candidate.clone()],
                format!(
                    "f({}) = {} exceeds f({}) = {}",
                    h.format(&one),
                    h.format(&f_one),
                    h.format(candidate),
                    h.format(&f_cand)
                ),
            ))
        }
        Side::A => {
            let one = h.from_int(1);
            let better = if h.cmp(candidate, &one)? == std::cmp::Ordering::Less {
                one
            } else {
                refute_cutpoint(cut, candidate)?.elements[0].clone()
            };
            let f_better = f(&better)?;
            debug_assert_eq!(h.cmp(&f_better, &f_cand)?, std::cmp::Ordering::Greater);
            Ok(Witness::new(
                WitnessKind::BiggerValue,
                vec![better.clone(), candidate.clone()],
                format!(
                    "f({}) = {} exceeds f({}) = {}",
                    h.format(&better),
                    h.format(&f_better),
                    h.format(candidate),
                    h.format(&f_cand)
                ),
            ))
        }
    }
}

/// Re-checks a maximum refutation: the first element's value must exceed
/// the candidate's value under the same function.
pub fn verify_max_witness(cut: &Cut, w: &Witness) -> Result<bool, Error> {
    let h = cut.handle();
    let f = evp_function(cut);
    Ok(h.cmp(&f(&w.elements[0])?, &f(&w.elements[1])?)? == std::cmp::Ordering::Greater)
}

/// The cross-mapping function of the fixed-point refutation: b on A, a on B.
/// Every output lands on the opposite side of its input, so f(x) != x.
pub fn fixedpoint_function<'a>(
    cut: &'a Cut,
    a: &'a FieldElement,
    b: &'a FieldElement,
) -> impl Fn(&FieldElement) -> Result<FieldElement, Error> + 'a {
    move |x| {
        Ok(match cut.side_of(x)? {
            Side::A => b.clone(),
            Side::B => a.clone(),
        })
    }
}

/// Checks f(x) != x on each sample, returning one NotFixed witness per
/// sample. `a` must lie in A and `b` in B.
pub fn check_no_fixed_point(
    cut: &Cut,
    a: &FieldElement,
    b: &FieldElement,
    samples: &[FieldElement],
) -> Result<Vec<Witness>, Error> {
    debug_assert_eq!(cut.side_of(a)?, Side::A);
    debug_assert_eq!(cut.side_of(b)?, Side::B);
    let h = cut.handle();
    let f = fixedpoint_function(cut, a, b);
    let mut out = Vec::new();
    for x in samples {
        let fx = f(x)?;
        let (sx, sfx) = (cut.side_of(x)?, cut.side_of(&fx)?);
        if sx == sfx {
            return Err(Error::NotAGap);
        }
        out.push(Witness::new(
            WitnessKind::NotFixed,
            vec![x.clone(), fx.clone()],
            format!(
                "x = {} lies in {:?} while f(x) = {} lies in {:?}; disjoint sides force f(x) != x",
                h.format(x),
                sx,
                h.format(&fx),
                sfx
            ),
        ));
    }
    Ok(out)
}
