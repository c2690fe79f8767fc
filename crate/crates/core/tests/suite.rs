use entropy_lab::bounds::{Evaluator, FaultInjection};
use entropy_lab::harness::{run_property_suite, run_property_suite_with, SamplerConfig, REGISTRY};

fn show_violations(report: &entropy_lab::harness::SuiteReport) -> String {
    report.violations.iter().take(10).map(|v| format!("{v:?}\n")).collect()
}

#[test]
fn default_suite_is_clean() {
    let report = run_property_suite(&SamplerConfig::default()).unwrap();
    print!("{}", report.summary_csv());
    assert!(report.is_clean(), "{}", show_violations(&report));
    assert_eq!(report.properties.len(), REGISTRY.len());
    for p in &report.properties {
        assert!(p.trials > 0 && p.checks > 0, "{} never ran", p.id);
    }
}

#[test]
fn same_seed_same_bytes() {
    let cfg = SamplerConfig { trials_per_cell: 5, ..SamplerConfig::default() };
    let a = run_property_suite(&cfg).unwrap();
    let b = run_property_suite(&cfg).unwrap();
    assert_eq!(a.summary_csv(), b.summary_csv());
    assert_eq!(a.to_json(), b.to_json());
    let other = run_property_suite(&SamplerConfig { seed: cfg.seed + 1, ..cfg.clone() }).unwrap();
    assert_ne!(a.summary_csv(), other.summary_csv());
}

#[test]
fn summary_echoes_seed() {
    let cfg = SamplerConfig { seed: 99, trials_per_cell: 1, ..SamplerConfig::default() };
    let report = run_property_suite(&cfg).unwrap();
    assert!(report.summary_csv().starts_with("# seed=99\n"));
}

#[test]
fn corrupted_kappa_is_caught() {
    let eval = Evaluator::with_fault(FaultInjection::Kappa(3.0));
    let report = run_property_suite_with(&SamplerConfig::default(), &eval).unwrap();
    assert!(report.violations_of("theorem2") + report.violations_of("theorem2-binary") > 0);
}

#[test]
fn corrupted_series_coefficient_is_caught() {
    let eval = Evaluator::with_fault(FaultInjection::SeriesCoefficient { n: 1, value: 1.0 });
    let report = run_property_suite_with(&SamplerConfig::default(), &eval).unwrap();
    assert!(report.violations_of("theorem2-binary") > 0);
}

#[test]
fn flipped_branch_is_caught() {
    let eval = Evaluator::with_fault(FaultInjection::Thm3BranchFlipped);
    let report = run_property_suite_with(&SamplerConfig::default(), &eval).unwrap();
    assert!(report.violations_of("theorem3-extremal") + report.violations_of("theorem3-forms") > 0);
}

#[test]
fn violation_records_carry_inputs() {
    let eval = Evaluator::with_fault(FaultInjection::Kappa(3.0));
    let cfg = SamplerConfig { trials_per_cell: 20, ..SamplerConfig::default() };
    let report = run_property_suite_with(&cfg, &eval).unwrap();
    let v = report.violations.first().expect("a violation");
    assert!(v.slack < -cfg.tolerance);
    assert!(!v.inputs.is_null());
    let csv = report.violations_csv();
    assert_eq!(csv.lines().count(), report.violations.len() + 1);
}
