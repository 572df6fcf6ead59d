use knotinv::verify::{run_suite, Suite, SuiteParams};

#[test]
fn every_suite_passes_on_the_full_grid() {
    let params = SuiteParams::default();
    for suite in Suite::ALL {
        let start = std::time::Instant::now();
        let report = run_suite(suite, &params).unwrap();
        eprintln!("{suite}: {}/{} in {:?}", report.passed(), report.cases.len(), start.elapsed());
        assert!(report.all_passed(), "{suite}: {:?}", report.failures().collect::<Vec<_>>());
    }
}
