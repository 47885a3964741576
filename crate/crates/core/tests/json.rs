use serde_json::Value;

use fusionring::fixtures::f21_ring;
use fusionring::oracles::{proof_fragment_ring, so3_truncated};
use fusionring::{check_axioms, ladder_build, theorem_verdict};

#[test]
fn check_report_schema() {
    let v = serde_json::to_value(check_axioms(&so3_truncated(9))).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 7);
    for c in checks {
        for key in ["name", "status", "evaluated", "skipped", "failed"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
}

#[test]
fn verdict_schema() {
    let v = serde_json::to_value(theorem_verdict(&f21_ring()).unwrap()).unwrap();
    assert_eq!(v["verdict"], "conclusion_i");
    assert_eq!(v["order"], 3);
    assert_eq!(v["corollary"]["dimension"], 21);
    assert_eq!(v["corollary"]["divisible_by_three"], true);

    let v = serde_json::to_value(theorem_verdict(&so3_truncated(21)).unwrap()).unwrap();
    assert_eq!(v["verdict"], "conclusion_ii");
    assert_eq!(v["certificate"]["depth_reached"], 9);
    assert_eq!(
        v["certificate"]["terminal_status"]["status"],
        "truncation_reached"
    );
}

#[test]
fn fragment_certificate_schema() {
    let ring = proof_fragment_ring();
    let cert = ladder_build(&ring, ring.index_of("x3").unwrap(), 10).unwrap();
    let v: Value = serde_json::to_value(&cert).unwrap();
    let d = &v["terminal_status"]["diagnosis"];
    assert_eq!(d["branch"], "terminal_freeness");
    assert_eq!(d["violations"][0]["inner_dimension"], 30);
    assert_eq!(d["violations"][0]["outer_dimension"], 75);
}
