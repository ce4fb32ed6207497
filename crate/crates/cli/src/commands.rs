//! Implementations behind the command-line subcommands, kept separate from
//! argument parsing so they can be exercised directly in tests.

use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use cutpoint::field::{FieldElement, FieldHandle, FieldKind, FieldOps};
use cutpoint::laurent::{LaurentSeries, SeriesSequence};
use cutpoint::probes::sequences::{
    archimedean_probe, cauchy_refuter_ratfun, cauchy_refuter_rationals, monotone_refuter,
    nested_refuter, verify_nested_witness, verify_rational_separation, verify_separation_witness,
};
use cutpoint::probes::series::{
    alternating_terms, geometric_eps_terms, halving_partial_sum, ratio_test_refuter,
    ratio_test_refuter_rationals, verify_ratio_witness, verify_rational_ratio_witness,
};
use cutpoint::probes::cuts::{
    refute_cutpoint, refute_lub, refute_max, verify_cutpoint_witness, verify_max_witness,
};
use cutpoint::probes::{ProbeResult, ProbeStatus, Witness};
use cutpoint::laurent::sum_series;
use cutpoint::report::{
    cell_from_probe, expected_status, mismatches, primary_cut, render, run_cell, run_matrix,
    CellResult, Format, Report,
};
use cutpoint::Error;

use crate::expr::{eval, parse, Value};

/// A command failure: either bad usage (exit 2) or an exact-arithmetic
/// error surfaced from the library (also exit 2 — the input asked for
/// something the field cannot do).
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Field(Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Field(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Resolves a field name, falling back to the `CUTPOINT_ORDER` and
/// `CUTPOINT_HORIZON` environment variables when no explicit precision is
/// given.
pub fn field_handle(
    name: &str,
    order: Option<i64>,
    horizon: Option<i64>,
) -> Result<FieldHandle, CliError> {
    let kind = match name {
        "q" | "Q" | "rationals" => FieldKind::Rationals,
        "ratfun" => FieldKind::RatFun,
        "laurent" => FieldKind::Laurent,
        other => {
            return Err(usage(format!(
                "unknown field {other:?}; expected q, ratfun, or laurent"
            )))
        }
    };
    let env_int = |key: &str| std::env::var(key).ok().and_then(|s| s.parse::<i64>().ok());
    let mut h = FieldHandle::new(kind);
    if let Some(o) = order.or_else(|| env_int("CUTPOINT_ORDER")) {
        if o < 1 {
            return Err(usage("order must be at least 1"));
        }
        h = h.with_order(o);
    }
    if let Some(hz) = horizon.or_else(|| env_int("CUTPOINT_HORIZON")) {
        if hz < h.order {
            return Err(usage("horizon must be at least the order"));
        }
        h = h.with_horizon(hz);
    }
    Ok(h)
}

fn eval_to_elem(text: &str, h: &FieldHandle) -> Result<FieldElement, CliError> {
    match eval(&parse(text)?, h)? {
        Value::Elem(x) => Ok(x),
        Value::Bool(_) => Err(usage("expected a field element, got a comparison")),
    }
}

/// `eval EXPR`: prints the exact value, or `true`/`false` for comparisons.
pub fn eval_command(text: &str, h: &FieldHandle) -> Result<String, CliError> {
    match eval(&parse(text)?, h)? {
        Value::Elem(x) => Ok(h.format(&x)),
        Value::Bool(b) => Ok(b.to_string()),
    }
}

/// `cmp A B`: prints `<`, `=`, or `>`.
pub fn cmp_command(a: &str, b: &str, h: &FieldHandle) -> Result<String, CliError> {
    let a = eval_to_elem(a, h)?;
    let b = eval_to_elem(b, h)?;
    // equality first, so coincident lazy series do not force a fruitless
    // leading-term scan
    let ord = if h.eq(&a, &b)? {
        Ordering::Equal
    } else {
        h.cmp(&a, &b)?
    };
    Ok(match ord {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
    .to_string())
}

/// `sum --terms FAMILY`: sums a built-in series exactly through the
/// handle's order. Only the Laurent field has summable infinitesimal term
/// families; `halving` is deliberately divergent-in-this-sense and reports
/// why it cannot be summed.
pub fn sum_command(family: &str, h: &FieldHandle) -> Result<String, CliError> {
    if h.kind != FieldKind::Laurent {
        return Err(usage("sum is only available in the laurent field"));
    }
    let terms = match family {
        "alt-geometric" => alternating_terms(),
        "geometric" => geometric_eps_terms(),
        // constant rational terms 2^-n: no coefficient ever stabilizes
        "halving" => SeriesSequence::new(|n| {
            if n == 0 {
                LaurentSeries::zero()
            } else {
                let t = &halving_partial_sum(n as u32) - &halving_partial_sum(n as u32 - 1);
                LaurentSeries::from_rational(t)
            }
        }),
        other => {
            return Err(usage(format!(
                "unknown term family {other:?}; expected alt-geometric, geometric, or halving"
            )))
        }
    };
    let s = sum_series(&terms, h.order)?;
    Ok(s.display(h.order))
}

/// Outcome of the `probe` subcommand: the serialized cell plus whether the
/// result matched expectations (refutation verified, or status as predicted).
pub struct ProbeOutcome {
    pub cell: CellResult,
    pub ok: bool,
}

impl ProbeOutcome {
    pub fn to_json(&self) -> String {
        let mut out =
            serde_json::to_string_pretty(&self.cell).expect("cell serialization cannot fail");
        out.push('\n');
        out
    }
}

/// `probe N [--candidate EXPR]`. Without a candidate the full battery for
/// the property runs and the verdict is checked against the expected
/// matrix. With a candidate, the property's refuter turns it into an exact
/// counter-witness, re-verified where an independent checker exists.
pub fn probe_command(
    h: &FieldHandle,
    number: u8,
    candidate: Option<&str>,
    seed: u64,
) -> Result<ProbeOutcome, CliError> {
    if !(1..=18).contains(&number) {
        return Err(usage("property number must be between 1 and 18"));
    }
    let Some(text) = candidate else {
        let cell = run_cell(h, number, seed);
        let ok = cell.status == expected_status(h.kind, number);
        return Ok(ProbeOutcome { cell, ok });
    };
    let x = eval_to_elem(text, h)?;

    // property 2 probes the candidate directly rather than refuting it
    if number == 2 {
        let pr = archimedean_probe(h, &x)?;
        let ok = pr.status != ProbeStatus::Inconclusive;
        return Ok(ProbeOutcome {
            cell: cell_from_probe(h, &pr),
            ok,
        });
    }

    let (witness, ok): (Witness, bool) = match number {
        1 => {
            let cut = primary_cut(h)?;
            (refute_lub(&cut, &x)?, true)
        }
        3 => {
            let cut = primary_cut(h)?;
            let w = refute_cutpoint(&cut, &x)?;
            let ok = verify_cutpoint_witness(&cut, &w)?;
            (w, ok)
        }
        7 => {
            let cut = primary_cut(h)?;
            let w = refute_max(&cut, &x)?;
            let ok = verify_max_witness(&cut, &w)?;
            (w, ok)
        }
        10 => {
            let w = monotone_refuter(h, &x)?;
            let ok = verify_separation_witness(h, &w)?;
            (w, ok)
        }
        11 => match h.kind {
            FieldKind::Rationals => {
                let q = x.as_rat().expect("rationals handle");
                let w = cauchy_refuter_rationals(q)?;
                let ok = verify_rational_separation(&w);
                (w, ok)
            }
            FieldKind::RatFun => {
                let f = x.as_ratfun().expect("ratfun handle");
                (cauchy_refuter_ratfun(h, f)?, true)
            }
            FieldKind::Laurent => {
                return Err(usage(
                    "cauchy convergence holds in laurent; probe it without --candidate",
                ))
            }
        },
        16 => match h.kind {
            FieldKind::Rationals => {
                let q = x.as_rat().expect("rationals handle");
                let w = ratio_test_refuter_rationals(q)?;
                let ok = verify_rational_ratio_witness(&w);
                (w, ok)
            }
            _ => {
                let w = ratio_test_refuter(h, &x)?;
                let ok = verify_ratio_witness(h, &w)?;
                (w, ok)
            }
        },
        18 => {
            let w = nested_refuter(h, &x)?;
            let ok = verify_nested_witness(h, &w)?;
            (w, ok)
        }
        n => {
            return Err(usage(format!(
                "property {n} has no candidate-driven refuter; run it without --candidate"
            )))
        }
    };
    let pr = ProbeResult::new(number, h.name(), ProbeStatus::FailsWitnessed)
        .with_transcript(format!("candidate {text} refuted"))
        .with_witnesses(vec![witness]);
    Ok(ProbeOutcome {
        cell: cell_from_probe(h, &pr),
        ok,
    })
}

/// Outcome of the `matrix` subcommand.
pub struct MatrixOutcome {
    pub rendered: String,
    pub report: Report,
    pub ok: bool,
}

/// `matrix`: runs all 18 probes over the three fields, renders the result,
/// and — in CI mode — compares the rendered bytes against a fixture file.
pub fn matrix_command(
    seed: u64,
    format: Format,
    check: Option<&Path>,
) -> Result<MatrixOutcome, CliError> {
    let fields = [
        FieldHandle::rationals(),
        FieldHandle::ratfun(),
        FieldHandle::laurent(),
    ];
    let report = run_matrix(&fields, seed);
    let rendered = render(&report, format);
    let mut ok = mismatches(&report).is_empty();
    if let Some(path) = check {
        let fixture = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read fixture {}: {e}", path.display())))?;
        ok = ok && fixture == rendered;
    }
    Ok(MatrixOutcome {
        rendered,
        report,
        ok,
    })
}
