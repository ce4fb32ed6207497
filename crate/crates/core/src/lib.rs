//! Exact arithmetic for three ordered fields and a battery of completeness probes.
//!
//! The crate implements, without any floating point:
//!
//! * `Q` — arbitrary-precision rationals ([`rational`]),
//! * `Q(w)` / `Q(eps)` — rational functions in one variable, ordered by
//!   behavior at infinity or near zero ([`ratfun`]),
//! * `Q((eps))` — formal Laurent series with lazy memoized coefficients
//!   ([`laurent`]).
//!
//! On top of the fields sits a uniform handle ([`field`]) and a set of
//! executable probes ([`probes`]): constructive procedures where a classical
//! completeness property holds in a field, and refuters that turn any
//! candidate (cutpoint, least upper bound, limit, maximum, fixed point) into
//! an exact counter-witness where it fails. [`report`] runs the whole
//! property-by-field matrix and renders it as JSON or markdown.

pub mod error;
pub mod field;
pub mod laurent;
pub mod par;
pub mod poly;
pub mod probes;
pub mod rational;
pub mod ratfun;
pub mod report;

pub use error::Error;
pub use field::{FieldElement, FieldHandle, FieldKind, Interval};
pub use laurent::{LaurentSeries, SeriesSequence, Term};
pub use poly::Polynomial;
pub use rational::Rational;
pub use ratfun::{Classification, OrderTag, RationalFunction};
