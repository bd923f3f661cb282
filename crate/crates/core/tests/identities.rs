use mzv_core::verify::{run_all, run_identity, IdentityName, ReportDocument, VerifyConfig};
use mzv_core::ZetaEngine;

#[test]
fn every_registered_identity_passes() {
    let engine = ZetaEngine::new(1e-30);
    let reports = run_all(&engine, &VerifyConfig::default());
    assert_eq!(reports.len(), IdentityName::ALL.len());
    for r in &reports {
        let first = r.failures().next().map(|d| format!("{} {:e}", d.key, d.dev));
        assert!(r.pass, "{}: {:?}", r.identity, first);
        assert!(!r.deviations.is_empty(), "{} checked nothing", r.identity);
        assert!(r.max_dev <= r.tolerance);
    }
    let doc = ReportDocument::new(reports);
    let json = doc.to_json().unwrap();
    assert_eq!(ReportDocument::from_json(&json).unwrap().to_json().unwrap(), json);
}

#[test]
fn size_override_shrinks_the_grid() {
    let engine = ZetaEngine::new(1e-30);
    let small = VerifyConfig { max_weight: Some(4), timing: false };
    let a = run_identity(&engine, IdentityName::Main, &small);
    let b = run_identity(&engine, IdentityName::Main, &VerifyConfig::default());
    assert!(a.pass && b.pass);
    assert!(a.deviations.len() < b.deviations.len());
}

#[test]
fn excluded_cases_are_reported() {
    let engine = ZetaEngine::new(1e-30);
    let r = run_identity(&engine, IdentityName::Lq3f2, &VerifyConfig::default());
    assert!(r.excluded.iter().any(|e| e.contains("t=1/2")));
    assert!(!r.branch.is_empty());
}
