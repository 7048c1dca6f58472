//! Acceptance table at zero tolerance: one PASS/FAIL line per criterion.
//!
//! A few checks are red for mathematical reasons (see README, "Known
//! failing checks"). They are printed as failures, and this target pins their
//! observed values so that any change, in either direction, is noticed. Any
//! other failing check makes the target fail.

use std::process::ExitCode;

use cyclobrauer::acceptance::{acceptance_suite, Profile};

/// `(criterion, check name, observed value)` for the known failing checks.
const KNOWN_RED: &[(u32, &str, &str)] = &[
    (3, "Sp(2,R)", "measured (δ0, δ1) = (-2, 0); stated (-1, 0); verify_phi: fails theta_pair_e, homomorphism_pairs"),
    (3, "Sp(4,R)", "measured (δ0, δ1) = (-4, 0); stated (-2, 0); verify_phi: fails theta_pair_e, homomorphism_pairs"),
    (3, "Sp(6,R)", "measured (δ0, δ1) = (-6, 0); stated (-3, 0); verify_phi: fails theta_pair_e, homomorphism_pairs"),
    (3, "Sp(8,R)", "measured (δ0, δ1) = (-8, 0); stated (-4, 0); verify_phi: fails theta_pair_e, homomorphism_pairs"),
    (5, "commutant_check SO(3,2), k=2", "commutant 21, image 12, not equal"),
    (5, "commutant_check SO(3,2), k=3", "commutant 215, image 115, not equal"),
    (9, "count_ktypes SO(3,2), k=2", "7"),
];

fn main() -> ExitCode {
    let profile = match std::env::var("ACCEPTANCE_PROFILE").as_deref() {
        Ok("small") => Profile::Small,
        _ => Profile::Full,
    };
    let report = acceptance_suite(profile);
    let mut unexpected = Vec::new();
    for row in &report.rows {
        let verdict = if row.passed() { "PASS" } else { "FAIL" };
        let budget = if row.within_budget() { "within budget" } else { "over budget" };
        println!(
            "{verdict} criterion {}: {} ({}; {} ms, {budget} of {} ms)",
            row.id,
            row.title,
            row.summary(),
            row.elapsed_ms,
            row.budget_ms
        );
        for check in &row.checks {
            let known = KNOWN_RED.iter().find(|(id, name, _)| *id == row.id && *name == check.name);
            match (check.passed, known) {
                (true, None) => {}
                (false, Some((_, _, observed))) if check.actual == *observed => {
                    println!(
                        "    known failing check {}: expected {}, got {}",
                        check.name, check.expected, check.actual
                    );
                }
                _ => unexpected.push(format!(
                    "criterion {} check {}: expected {}, got {}",
                    row.id, check.name, check.expected, check.actual
                )),
            }
        }
    }
    for (id, name, _) in KNOWN_RED {
        let present = report.row(*id).is_some_and(|r| r.checks.iter().any(|c| c.name == *name));
        if !present && profile == Profile::Full {
            unexpected.push(format!("criterion {id} check {name} did not run"));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance ({profile}): no unexpected results");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("UNEXPECTED {u}");
        }
        ExitCode::FAILURE
    }
}
