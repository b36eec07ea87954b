//! The twelve acceptance criteria over the seeded corpus, one line each.

use hgc::suite::{Suite, SuiteConfig, CRITERIA};

#[test]
fn acceptance_criteria() {
    println!();
    let suite = Suite::new(SuiteConfig::default()).expect("corpus builds");
    let mut failed = Vec::new();
    for n in 1..=CRITERIA {
        let r = suite.run(n);
        println!("{r}");
        if !r.passed {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
