use super::*;
use crate::algebra::ExponentVector;

fn pts(v: &[[i64; 2]]) -> Vec<ExponentVector> {
    v.iter().map(|p| ExponentVector::from(*p)).collect()
}

fn fixed(a: &[[i64; 2]], b: &[[i64; 2]], trials: usize) -> InstanceSpec {
    InstanceSpec {
        supports: Some([pts(a), pts(b)]),
        ..InstanceSpec::for_suite(Suite::Bk, 11).with_trials(trials)
    }
}

#[test]
fn bk_simplex_supports_count_one() {
    let simplex = [[0, 0], [1, 0], [0, 1]];
    let s = bk_check(&fixed(&simplex, &simplex, 20)).unwrap();
    assert!(s.ok());
    assert_eq!(s.degenerate, 0);
    for r in &s.reports {
        assert_eq!(r.checks[0].lhs, "1");
    }
}

#[test]
fn bk_dilated_simplex_counts_four() {
    let twice = [[0, 0], [2, 0], [0, 2]];
    let s = bk_check(&fixed(&twice, &twice, 10)).unwrap();
    assert!(s.ok());
    for r in s.reports.iter().filter(|r| r.verdict == Verdict::Pass) {
        assert_eq!(r.checks[0].lhs, "4");
        assert_eq!(r.checks[0].rhs, "4");
    }
}

#[test]
fn bk_segment_and_triangle() {
    let seg = [[0, 0], [2, 1]];
    let tri = [[0, 0], [3, 0], [0, 2]];
    let s = bk_check(&fixed(&seg, &tri, 10)).unwrap();
    assert!(s.ok());
    assert_eq!(s.passed, 10);
}

#[test]
fn bk_random_supports_small_run() {
    let spec = InstanceSpec::for_suite(Suite::Bk, 3).with_trials(12);
    let s = run_property_suite(Suite::Bk, &spec, Execution::default()).unwrap();
    assert!(s.ok(), "{}", s.to_jsonl());
}

#[test]
fn suites_are_deterministic() {
    for suite in [Suite::Bk, Suite::VolIvol, Suite::MixedVolume, Suite::Hilbert] {
        let spec = InstanceSpec::for_suite(suite, 42).with_trials(4);
        let a = run_property_suite(suite, &spec, Execution::Sequential).unwrap();
        let b = run_property_suite(suite, &spec, Execution::Parallel).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());
    }
}

#[test]
fn every_suite_runs_cleanly() {
    for suite in Suite::ALL {
        let spec = InstanceSpec::for_suite(suite, 5).with_trials(6);
        let s = run_property_suite(suite, &spec, Execution::default()).unwrap();
        assert!(s.ok(), "{suite}: {}", s.to_jsonl());
        assert!(s.passed > 0, "{suite}: no trial passed");
    }
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!(matches!("nope".parse::<Suite>(), Err(crate::Error::Unknown { .. })));
}

#[test]
fn failing_reports_carry_instances() {
    let spec = InstanceSpec::for_suite(Suite::DeltaAdditivity, 1).with_trials(2);
    let s = run_property_suite(Suite::DeltaAdditivity, &spec, Execution::Sequential).unwrap();
    for r in &s.reports {
        assert!(r.instance.get("P").is_some());
    }
}
