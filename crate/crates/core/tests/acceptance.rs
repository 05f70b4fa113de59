use std::io::Write;

use floorgap::acceptance::criteria;

#[test]
fn acceptance_suite() {
    // Written to stderr directly so the lines survive output capture.
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for criterion in criteria() {
        let outcome = criterion.run();
        let _ = writeln!(err, "{}", outcome.line());
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
