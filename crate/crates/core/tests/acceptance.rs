use defcoh::selftest;

#[test]
fn acceptance() {
    let results = selftest::run_all(20240601);
    for r in &results {
        println!("[{}] {:>2} {} ({} ms): {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.millis, r.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(results.len(), selftest::CRITERIA);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
