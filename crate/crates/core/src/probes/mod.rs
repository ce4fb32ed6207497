//! Executable probes of the eighteen completeness properties.
//!
//! Each probe either constructs the object a property promises (limit,
//! sum, intersection point) with a certificate, or converts a candidate
//! (cutpoint, least upper bound, limit, maximum, fixed point) into an
//! exact counter-witness. A `FailsWitnessed` verdict is a genuine disproof
//! — one counterexample suffices. A `HoldsConstructive` verdict means the
//! construction succeeded on a documented test battery with certificates;
//! it is evidence, not a proof of the universally quantified statement.

pub mod cuts;
pub mod maps;
pub mod sequences;
pub mod series;

pub use cuts::{Cut, Side};
pub use maps::PiecewiseLinearMap;

use crate::field::FieldElement;

/// Verdict for one (property, field) cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeStatus {
    /// The promised object was constructed and certified on the battery.
    HoldsConstructive,
    /// A re-checkable counterexample was produced.
    FailsWitnessed,
    /// No implementable probe exists for this cell; recorded, not guessed.
    NotProbed,
    /// The probe ran but exhausted its precision or scan budget.
    Inconclusive,
}

/// The role a witness element plays in a refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// An element on the wrong side of a claimed cutpoint.
    WrongSideElement,
    /// A member of the lower set exceeding a claimed upper bound.
    LargerMember,
    /// An upper bound smaller than a claimed least upper bound.
    SmallerUpperBound,
    /// A tail staying a fixed distance from a claimed limit.
    SeparatedTail,
    /// An interval of the family that excludes a claimed common point.
    EscapedInterval,
    /// A point moved by a map claimed to have it fixed.
    NotFixed,
    /// A function value exceeding a claimed maximum or bound.
    BiggerValue,
}

/// A counterexample: the elements involved plus a textual certificate whose
/// claims re-check under exact arithmetic.
#[derive(Clone, Debug)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<FieldElement>,
    pub certificate: String,
}

impl Witness {
    pub fn new(kind: WitnessKind, elements: Vec<FieldElement>, certificate: String) -> Self {
        Witness { kind, elements, certificate }
    }
}

/// Outcome of one property probe in one field.
#[derive(Clone, Debug)]
pub struct ProbeResult {
    /// Property number, 1 through 18.
    pub property: u8,
    pub field: &'static str,
    pub status: ProbeStatus,
    pub witnesses: Vec<Witness>,
    pub transcript: String,
}

impl ProbeResult {
    pub fn new(property: u8, field: &'static str, status: ProbeStatus) -> Self {
        ProbeResult {
            property,
            field,
            status,
            witnesses: Vec::new(),
            transcript: String::new(),
        }
    }

    pub fn with_transcript(mut self, transcript: impl Into<String>) -> Self {
        self.transcript = transcript.into();
        self
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Witness>) -> Self {
        self.witnesses = witnesses;
        self
    }
}

/// Stable machine-readable identifier for each property.
pub fn property_slug(n: u8) -> &'static str {
    match n {
        1 => "dedekind-completeness",
        2 => "archimedean",
        3 => "cut-property",
        4 => "topological-connectedness",
        5 => "intermediate-value",
        6 => "bounded-value",
        7 => "extreme-value",
        8 => "mean-value",
        9 => "constant-value",
        10 => "bounded-monotone-convergence",
        11 => "cauchy-convergence",
        12 => "fixed-point",
        13 => "contraction-map",
        14 => "alternating-series",
        15 => "absolute-convergence",
        16 => "ratio-test",
        17 => "shrinking-interval",
        18 => "nested-interval",
        _ => panic!("property number out of range: {n}"),
    }
}

/// Human-readable property name.
pub fn property_name(n: u8) -> &'static str {
    match n {
        1 => "Dedekind Completeness",
        2 => "Archimedean Property",
        3 => "Cut Property",
        4 => "Topological Connectedness",
        5 => "Intermediate Value Property",
        6 => "Bounded Value Property",
        7 => "Extreme Value Property",
        8 => "Mean Value Property",
        9 => "Constant Value Property",
        10 => "Convergence of Bounded Monotone Sequences",
        11 => "Convergence of Cauchy Sequences",
        12 => "Fixed Point Property",
        13 => "Contraction Map Property",
        14 => "Alternating Series Test",
        15 => "Absolute Convergence Property",
        16 => "Ratio Test",
        17 => "Shrinking Interval Property",
        18 => "Nested Interval Property",
        _ => panic!("property number out of range: {n}"),
    }
}
