use qsphere::repn::Cutoff;
use qsphere::suite::{run, ReportFormat, SuiteConfig, SuiteName};
use qsphere::Error;

fn small(suite: SuiteName) -> SuiteConfig {
    SuiteConfig { p: vec![0.0, 0.3], q: vec![0.3], theta: vec![0.5], ..SuiteConfig::for_suite(suite) }
}

#[test]
fn reports_are_deterministic() {
    for suite in [SuiteName::Relations, SuiteName::Fiber, SuiteName::Ktheory] {
        let cfg = SuiteConfig { seed: 7, ..small(suite) };
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_canonical_json(), b.to_canonical_json(), "{suite}");
    }
}

#[test]
fn summary_matches_records() {
    let report = run(&small(SuiteName::Identities)).unwrap();
    let passed = report.records.iter().filter(|r| r.pass).count();
    assert_eq!(report.summary.total, report.records.len());
    assert_eq!(report.summary.passed, passed);
    assert_eq!(report.summary.failed, report.records.len() - passed);
    assert!(report.all_passed());
    let keys: Vec<String> = report.records.iter().map(|r| r.key()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn json_report_shape() {
    let report = run(&small(SuiteName::Ktheory)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["suite"], "ktheory");
    assert!(v["records"].as_array().unwrap().iter().all(|r| r.get("measured").is_some() && r.get("threshold").is_some()));
    let text = report.render(ReportFormat::Text);
    assert!(text.contains("passed"), "{text}");
}

#[test]
fn tight_tolerance_fails() {
    let cfg = SuiteConfig { k: Some(1), p: vec![0.7], q: vec![0.7], theta: vec![0.0], ..SuiteConfig::for_suite(SuiteName::Iso) };
    let report = run(&cfg).unwrap();
    assert!(!report.all_passed());
    assert!(report.summary.failed > 0);
}

#[test]
fn invalid_configurations() {
    let bad = [
        SuiteConfig { p: vec![1.0], ..SuiteConfig::default() },
        SuiteConfig { theta: vec![], ..SuiteConfig::default() },
        SuiteConfig { tol: Some(0.0), ..SuiteConfig::default() },
        SuiteConfig { k: Some(0), ..SuiteConfig::default() },
        SuiteConfig { preset: Some("s3-quantum".into()), ..SuiteConfig::for_suite(SuiteName::Relations) },
        SuiteConfig { preset: Some("nope".into()), ..SuiteConfig::for_suite(SuiteName::Ktheory) },
    ];
    for cfg in bad {
        assert!(matches!(cfg.validate(), Err(Error::Config(_))), "{cfg:?}");
    }
    let ok = SuiteConfig { cutoff: Some(Cutoff::square(8)), preset: Some("s3-classical".into()), ..SuiteConfig::for_suite(SuiteName::Ktheory) };
    assert!(ok.validate().is_ok());
    assert!("lemma-gen".parse::<SuiteName>().is_ok());
    assert!("bogus".parse::<SuiteName>().is_err());
}
