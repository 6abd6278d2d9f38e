use composable_qm::identities::Corruption;
use composable_qm::report::CheckReport;
use composable_qm::verify::{verify_class, CheckKind, VerifyOptions};
use composable_qm::CompositionClass;

fn failures(reports: &[CheckReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.passed()).map(CheckReport::summary).collect()
}

#[test]
fn every_class_passes_at_200_samples() {
    for class in CompositionClass::ALL {
        let reports = verify_class(class, &VerifyOptions::default()).unwrap();
        assert!(!reports.is_empty(), "{class:?}");
        assert!(reports.iter().all(|r| r.samples == 200 && r.exact));
        let bad = failures(&reports);
        assert!(bad.is_empty(), "{class:?}:\n{}", bad.join("\n"));
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = VerifyOptions { samples: 20, seed: 11, ..VerifyOptions::default() };
    let a = verify_class(CompositionClass::Elliptic, &opts).unwrap();
    let b = verify_class(CompositionClass::Elliptic, &opts).unwrap();
    assert_eq!(a, b);
}

#[test]
fn expected_checks_per_class() {
    let opts = VerifyOptions { samples: 4, ..VerifyOptions::default() };
    let laws = |class| -> Vec<String> {
        verify_class(class, &opts).unwrap().into_iter().map(|r| r.law).collect()
    };
    let symmetric = laws(CompositionClass::ParabolicSymmetric);
    assert!(symmetric.contains(&"tau12".to_string()));
    assert!(!symmetric.iter().any(|l| l == "jacobi" || l == "alpha12"));
    let elliptic = laws(CompositionClass::Elliptic);
    for law in ["sigma12", "alpha12", "petersen", "star-associativity", "classical-limit", "monoid-associativity"] {
        assert!(elliptic.iter().any(|l| l == law), "missing {law}");
    }
}

fn corrupted(corruption: Corruption, only: CheckKind) -> Vec<CheckReport> {
    let opts = VerifyOptions {
        samples: 30,
        seed: 3,
        corruption: Some(corruption),
        only: Some(only),
        ..VerifyOptions::default()
    };
    verify_class(CompositionClass::Elliptic, &opts).unwrap()
}

#[test]
fn corrupted_alpha_scale_fails_with_counterexample() {
    for only in [
        CheckKind::Composability,
        CheckKind::Identity(composable_qm::identities::Identity::Petersen),
        CheckKind::ClassicalLimit,
    ] {
        let reports = corrupted(Corruption::AlphaScale, only);
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty(), "{only} passed under corruption");
        assert!(failed.iter().all(|r| r.counterexample.is_some()));
    }
}

#[test]
fn corrupted_x_fails_with_counterexample() {
    for only in [
        CheckKind::Composability,
        CheckKind::Monoid,
        CheckKind::Identity(composable_qm::identities::Identity::Petersen),
    ] {
        let reports = corrupted(Corruption::X, only);
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
        assert!(!failed.is_empty(), "{only} passed under corruption");
        assert!(failed.iter().all(|r| r.counterexample.is_some()));
    }
}

#[test]
fn hyperbolic_x_corruption_is_caught() {
    let opts = VerifyOptions {
        samples: 30,
        corruption: Some(Corruption::X),
        only: Some(CheckKind::Composability),
        ..VerifyOptions::default()
    };
    let reports = verify_class(CompositionClass::Hyperbolic, &opts).unwrap();
    assert!(reports.iter().any(|r| r.law == "sigma12" && !r.passed()));
}
