//! End-to-end acceptance criteria. Each test prints one `PASS`/`FAIL` line
//! with its checks and wall time, then asserts.

use std::time::{Duration, Instant};

use xxz_lbf::exact_arith::rat;
use xxz_lbf::verify::{self, default_xs, Check};
use xxz_lbf::Execution;

fn report(id: u32, title: &str, checks: &[Check], elapsed: Duration, budget: Option<Duration>) {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let ok = checks.iter().all(|c| c.passed) && in_time;
    let budget = budget
        .map(|b| format!(" (budget {}s)", b.as_secs()))
        .unwrap_or_default();
    println!(
        "[{}] criterion {id}: {title} in {:.1}s{budget}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for c in checks {
        println!(
            "    {} {}: {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    assert!(in_time, "criterion {id} exceeded its time budget");
    assert!(ok, "criterion {id} failed");
}

#[test]
fn criterion_1_oracle_equivalence() {
    let t = Instant::now();
    let checks = verify::oracle_checks(12, &default_xs(), Execution::Parallel).unwrap();
    report(
        1,
        "contraction and determinant overlaps agree",
        &checks,
        t.elapsed(),
        Some(Duration::from_secs(300)),
    );
}

#[test]
fn criterion_2_ground_states() {
    let t = Instant::now();
    let checks = verify::ground_state_checks(12, &default_xs(), Execution::Parallel).unwrap();
    report(2, "exact ground states", &checks, t.elapsed(), None);
}

#[test]
fn criterion_3_large_n_sweep() {
    let t = Instant::now();
    let checks = verify::sweep_checks(&rat(1, 2), 60, Execution::Parallel).unwrap();
    report(
        3,
        "exact fidelity against the truncated series",
        &checks,
        t.elapsed(),
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_4_characters() {
    let t = Instant::now();
    let checks = verify::character_checks(2024, &default_xs(), Execution::Parallel).unwrap();
    report(4, "character identities", &checks, t.elapsed(), None);
}

#[test]
fn criterion_5_qkz() {
    let t = Instant::now();
    let checks = verify::qkz_checks(2024).unwrap();
    report(
        5,
        "qKZ relations and generalised overlap",
        &checks,
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_6_asymptotic_coefficients() {
    let t = Instant::now();
    let mut checks = verify::tau_checks(200, 60, Execution::Parallel).unwrap();
    checks.extend(verify::ode_checks(20, Execution::Parallel).unwrap());
    report(
        6,
        "1/N coefficients and the character ODE",
        &checks,
        t.elapsed(),
        None,
    );
}

#[test]
fn criterion_7_cft() {
    let t = Instant::now();
    let mut checks = verify::cft_checks().unwrap();
    checks.extend(verify::energy_checks(12, &default_xs()).unwrap());
    report(7, "free-boson prediction", &checks, t.elapsed(), None);
}

#[test]
fn criterion_8_combinatorial_identity() {
    let t = Instant::now();
    let checks = verify::combinatorial_checks(8).unwrap();
    report(
        8,
        "mixed determinant and the A_O refinement",
        &checks,
        t.elapsed(),
        None,
    );
}
