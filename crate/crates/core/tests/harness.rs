use curvecx::harness::{run_check, run_suite, suite_failed, CheckId, CheckReport, SuiteConfig, SuiteReport, Verdict, REPORT_SCHEMA};
use curvecx::surface::build_surface;
use curvecx::Error;

fn small(checks: &[CheckId], surfaces: &[(usize, usize)]) -> SuiteConfig {
    SuiteConfig {
        surfaces: surfaces.to_vec(),
        checks: checks.to_vec(),
        norm: 8,
        samples: 60,
        seed: 3,
    }
}

/// Everything but the timing.
fn stable(r: &CheckReport) -> serde_json::Value {
    let mut v = serde_json::to_value(r).unwrap();
    v.as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn check_ids_parse_case_insensitively() {
    assert_eq!("t3".parse::<CheckId>().unwrap(), CheckId::T3);
    assert_eq!(" T8 ".parse::<CheckId>().unwrap(), CheckId::T8);
    assert!(matches!("T9".parse::<CheckId>(), Err(Error::Config(_))));
    for id in CheckId::ALL {
        assert_eq!(id.to_string().parse::<CheckId>().unwrap(), id);
    }
}

#[test]
fn applicability_follows_the_surface() {
    let s05 = build_surface(0, 5).unwrap();
    let s13 = build_surface(1, 3).unwrap();
    assert!(CheckId::T6.applies_to(&s05) && !CheckId::T6.applies_to(&s13));
    assert!(CheckId::T7.applies_to(&s13) && !CheckId::T7.applies_to(&s05));
    let s04 = build_surface(0, 4).unwrap();
    assert!(!CheckId::T3.applies_to(&s04));
    assert!(matches!(run_check(CheckId::T7, &s05, &SuiteConfig::default()), Err(Error::Inadmissible(_))));
}

#[test]
fn bad_configurations_are_config_errors() {
    let mut cfg = small(&[CheckId::T2], &[(0, 5)]);
    cfg.norm = 2;
    assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    assert!(matches!(run_suite(&small(&[], &[(0, 5)])), Err(Error::Config(_))));
    assert!(matches!(run_suite(&small(&[CheckId::T2], &[])), Err(Error::Config(_))));
    assert!(run_suite(&small(&[CheckId::T2], &[(0, 0)])).is_err());
}

#[test]
fn runs_are_deterministic() {
    let cfg = small(&[CheckId::T2, CheckId::T3, CheckId::T6], &[(0, 5)]);
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    assert_eq!(a.len(), 3);
    assert_eq!(a.iter().map(stable).collect::<Vec<_>>(), b.iter().map(stable).collect::<Vec<_>>());
}

#[test]
fn verdicts_are_consistent_with_criteria() {
    let cfg = small(&[CheckId::T1, CheckId::T5, CheckId::T7, CheckId::T8], &[(0, 5), (1, 3)]);
    let reports = run_suite(&cfg).unwrap();
    for r in &reports {
        assert!(!r.criteria.is_empty());
        let any_fail = r.criteria.iter().any(|c| c.verdict == Verdict::Fail);
        let any_pass = r.criteria.iter().any(|c| c.verdict == Verdict::Pass);
        let want = if any_fail {
            Verdict::Fail
        } else if any_pass {
            Verdict::Pass
        } else {
            Verdict::EvidenceOnly
        };
        assert_eq!(r.verdict, want, "{}", r.summary_line());
        for c in &r.criteria {
            if c.verdict == Verdict::Fail {
                assert!(c.counterexample.is_some(), "{} {}: failure without a counterexample", r.check, c.name);
            }
        }
        assert!(r.summary_line().starts_with(&format!("{} S_({},{})", r.check, r.surface[0], r.surface[1])));
    }
    // Evidence-only criteria never fail a report on their own.
    let t7 = reports.iter().find(|r| r.check == CheckId::T7).unwrap();
    assert!(t7.criteria.iter().any(|c| c.verdict == Verdict::EvidenceOnly));
    let only_evidence: Vec<CheckReport> = reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.criteria.retain(|c| c.verdict == Verdict::EvidenceOnly);
            r.verdict = if r.criteria.is_empty() { Verdict::Pass } else { Verdict::EvidenceOnly };
            r
        })
        .collect();
    assert!(!suite_failed(&only_evidence));
}

#[test]
fn reports_round_trip_through_json() {
    let cfg = small(&[CheckId::T2], &[(0, 5)]);
    let reports = run_suite(&cfg).unwrap();
    let report = SuiteReport::new(cfg, reports);
    assert_eq!(report.schema, REPORT_SCHEMA);
    assert!(!report.failed);
    let text = serde_json::to_string(&report).unwrap();
    let back = SuiteReport::from_json(&text).unwrap();
    assert_eq!(back.reports.len(), 1);
    assert_eq!(stable(&back.reports[0]), stable(&report.reports[0]));
    assert!(report.human().contains("T2 S_(0,5) PASS"));
    let wrong = text.replace(REPORT_SCHEMA, "curvecx.report/0");
    assert!(matches!(SuiteReport::from_json(&wrong), Err(Error::Config(_))));
}
