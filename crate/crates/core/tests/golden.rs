//! Golden-output tests: the rendered matrix is byte-for-byte stable
//! against checked-in fixtures, so any behavioral drift in the probes or
//! the renderers shows up as a diff.

use cutpoint::field::FieldHandle;
use cutpoint::report::{render, run_matrix, Format};

fn report() -> cutpoint::report::Report {
    let fields = [
        FieldHandle::rationals(),
        FieldHandle::ratfun(),
        FieldHandle::laurent(),
    ];
    run_matrix(&fields, 0)
}

#[test]
fn matrix_json_matches_golden_fixture() {
    let got = render(&report(), Format::Json);
    let want = include_str!("fixtures/matrix-seed0.json");
    assert_eq!(got, want, "seed-0 JSON matrix drifted from the fixture");
}

#[test]
fn matrix_markdown_matches_golden_fixture() {
    let got = render(&report(), Format::Markdown);
    let want = include_str!("fixtures/matrix-seed0.md");
    assert_eq!(got, want, "seed-0 markdown matrix drifted from the fixture");
}
