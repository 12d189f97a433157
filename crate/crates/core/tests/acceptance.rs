//! One PASS/FAIL line per acceptance criterion; run with `--nocapture` to see them.

use opcohom::acceptance;

#[test]
fn acceptance_criteria() {
    let results = acceptance::run("all").expect("acceptance suites run to completion");
    for c in &results {
        println!("{}", c.line());
    }
    let failed: Vec<String> = results.iter().filter(|c| !c.passed).map(|c| c.line()).collect();
    assert!(failed.is_empty(), "failing criteria:\n{}", failed.join("\n"));
}
