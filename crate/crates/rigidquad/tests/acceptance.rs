use rigidquad::verify;

#[test]
fn acceptance() {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results = verify::run(false, jobs);
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<usize> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert_eq!(results.len(), 10);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn quick_mode_passes() {
    let results = verify::run(true, 2);
    assert!(results.iter().all(|r| r.passed), "{results:?}");
    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
}
