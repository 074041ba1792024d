use totality_core::Reducer;
use totality_testkit::suite::{self, run_property, run_property_suite, SuiteConfig, PROPERTIES};

#[test]
fn default_suite_passes() {
    let report = run_property_suite(&SuiteConfig::default());
    assert_eq!(report.outcomes.len(), PROPERTIES.len());
    assert!(report.passed(), "{report}");
    for line in report.to_string().lines() {
        assert!(line.starts_with("PASS "), "{line}");
    }
}

#[test]
fn flipped_dual_collapsing_is_caught() {
    let config = SuiteConfig { reducer: Reducer { flip_dual: true }, ..SuiteConfig::default() };
    let o = run_property(suite::COLLAPSE_ORDER, &config);
    assert!(!o.passed());
    assert!(o.to_string().starts_with("FAIL collapse_order after"), "{o}");
}

#[test]
fn seeds_replay() {
    let config = SuiteConfig { seed: 17, reducer: Reducer { flip_dual: true }, ..SuiteConfig::default() };
    let a = run_property(suite::COLLAPSE_ORDER, &config);
    let b = run_property(suite::COLLAPSE_ORDER, &config);
    assert_eq!(a, b);
    let config = SuiteConfig { seed: 17, ..SuiteConfig::default() };
    assert_eq!(run_property(suite::NF_SHAPE, &config), run_property(suite::NF_SHAPE, &config));
}

#[test]
fn other_seeds_pass() {
    for seed in [1, 2, 3] {
        let config = SuiteConfig { seed, oracle_sources: 10, ..SuiteConfig::default() };
        let report = run_property_suite(&config);
        assert!(report.passed(), "seed {seed}: {report}");
    }
}

#[test]
#[should_panic]
fn unknown_property_panics() {
    run_property("no_such_property", &SuiteConfig::default());
}
