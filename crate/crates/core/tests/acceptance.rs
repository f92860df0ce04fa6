//! The acceptance suite: one test per criterion, each printing its
//! pass/fail line and the per-check details. Run with
//! `cargo test -p poset-rainbow --test acceptance` (add `-- --nocapture`
//! to see the lines for passing criteria too).

use poset_rainbow::acceptance::run_criterion;

fn run(id: &str) {
    let report = run_criterion(id, None).expect("known criterion id");
    println!("{}", report.line());
    for d in &report.details {
        println!("        {d}");
    }
    assert!(
        report.passed,
        "{id} failed:\n{}",
        report
            .details
            .iter()
            .map(|d| format!("  {d}"))
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn ac1_diamond_weak_anti_ramsey_number() {
    run("AC1");
}

#[test]
fn ac2_strong_antichain2_anti_ramsey_number() {
    run("AC2");
}

#[test]
fn ac3_strong_broom2_brute_force_agreement() {
    run("AC3");
}

#[test]
fn ac4_fork_broom_free_families() {
    run("AC4");
}

#[test]
fn ac5_weak_antichain_families() {
    run("AC5");
}

#[test]
fn ac6_construction_certifications() {
    run("AC6");
}

#[test]
fn ac7_sandwich_inequalities() {
    run("AC7");
}

#[test]
fn ac8_search_matches_oracle() {
    run("AC8");
}

#[test]
fn ac9_lubell_suite() {
    run("AC9");
}

#[test]
fn ac10_large_n_margins_and_band_closure() {
    run("AC10");
}

#[test]
fn ac11_crown_pipeline() {
    run("AC11");
}

#[test]
fn ac12_good_marked_chain_extension() {
    run("AC12");
}
