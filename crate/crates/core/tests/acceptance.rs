use wittcft::selftest::{run_all, SelftestConfig};

#[test]
fn acceptance_criteria() {
    let report = run_all(&SelftestConfig::default());
    print!("{}", report.summary());
    assert!(report.passed(), "{}", report.summary());
}
