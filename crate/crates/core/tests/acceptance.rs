//! One test per acceptance criterion. Each prints its pass/fail line to the
//! process stderr (bypassing the test harness capture) and then asserts.

use std::io::Write;

use paraneg::acceptance::{self, AcceptBounds, CriterionReport};

fn emit(r: &CriterionReport) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{r}");
    for d in &r.details {
        let _ = writeln!(err, "    {d}");
    }
}

fn check(r: CriterionReport) {
    emit(&r);
    assert!(r.pass, "{r}");
}

#[test]
fn criterion_1_corpus() {
    check(acceptance::corpus_criterion(&AcceptBounds::default()));
}

#[test]
fn criterion_2_paraconsistency() {
    check(acceptance::paraconsistency_criterion());
}

#[test]
fn criterion_3_negation_hierarchy() {
    check(acceptance::hierarchy_criterion(&AcceptBounds::default()));
}

#[test]
fn criterion_4_polarity() {
    check(acceptance::polarity_criterion(&AcceptBounds::default()));
}

#[test]
fn criterion_5_soundness() {
    check(acceptance::soundness_criterion(&AcceptBounds::default()));
}

#[test]
fn criterion_6_zn_minus_exploration() {
    let r = acceptance::zn_minus_criterion(&AcceptBounds::default());
    assert!(r.exploratory);
    check(r);
}

#[test]
fn criterion_7_negative_controls() {
    check(acceptance::negative_controls_criterion());
}
