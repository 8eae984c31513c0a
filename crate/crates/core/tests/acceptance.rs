//! One test per acceptance criterion; each prints a single pass/fail line.

use capring::acceptance::{self, CriterionReport};

fn report(r: CriterionReport) {
    println!("{r}");
    assert!(r.passed(), "{r}");
}

#[test]
fn criterion_1_rates() {
    report(acceptance::criterion_1());
}

#[test]
fn criterion_2_monotonicity() {
    report(acceptance::criterion_2());
}

#[test]
fn criterion_3_zero_product_verification() {
    report(acceptance::criterion_3());
}

#[test]
fn criterion_4_ground_truth_vs_bound() {
    report(acceptance::criterion_4());
}

#[test]
fn criterion_5_leaders_and_product_spans() {
    report(acceptance::criterion_5());
}

#[test]
fn criterion_6_rewriting() {
    report(acceptance::criterion_6());
}

#[test]
fn criterion_7_cauchy_davenport() {
    report(acceptance::criterion_7());
}

#[test]
fn criterion_8_covering() {
    report(acceptance::criterion_8());
}

#[test]
fn criterion_9_asymptotic_factors() {
    report(acceptance::criterion_9());
}
