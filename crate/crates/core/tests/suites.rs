use nullflat::verification::{run_suite, Suite};

fn check(suite: Suite) {
    let report = run_suite(suite, 20261019);
    let failures: Vec<_> = report.details.iter().filter(|d| !d.passed).take(10).collect();
    assert!(
        report.ok(),
        "{} failed {} of {}: {failures:#?}",
        report.suite,
        report.failed,
        report.cases
    );
    assert!(report.cases > 0);
}

#[test]
fn jets_suite() {
    check(Suite::Jets);
}

#[test]
fn oracle_suite() {
    check(Suite::Oracle);
}

#[test]
fn null_suite() {
    check(Suite::Null);
}

#[test]
fn roundtrip_suite() {
    check(Suite::Roundtrip);
}

#[test]
fn rank_suite() {
    check(Suite::Rank);
}

#[test]
fn gauge_suite() {
    check(Suite::Gauge);
}

#[test]
fn planner_suite() {
    check(Suite::Planner);
}

#[test]
fn suites_are_deterministic() {
    assert_eq!(run_suite(Suite::Rank, 3), run_suite(Suite::Rank, 3));
}
