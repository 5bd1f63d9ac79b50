//! End-to-end pipeline runs against the shipped spec files.

use geoforge::caps::Caps;
use geoforge::pipeline::{run_pipeline_text, parse_spec, run_pipeline};

#[test]
fn tetrahedron_twist_spec_passes_end_to_end() {
    let text = include_str!("../fixtures/tetrahedron_twist.json");
    let report = run_pipeline_text(text, Caps::default());
    assert_eq!(report.exit_code(), 0, "{report:?}");
    // twist + three checks + materialize + iso
    assert_eq!(report.steps.len(), 6);
    let twist = &report.steps[0];
    assert!(twist.detail.as_ref().unwrap().contains("group order 48"));
    let names: Vec<&str> = report.steps.iter().map(|s| s.name.as_str()).collect();
    assert!(names.iter().any(|n| n.contains("flag-transitive")));
    assert!(names.iter().any(|n| n.contains("residually-connected")));
    assert!(names.iter().any(|n| n.contains("thin")));
    assert!(report.steps.last().unwrap().detail.as_ref().unwrap().contains("isomorphic"));
}

#[test]
fn deterministic_reports() {
    let text = include_str!("../fixtures/tetrahedron_twist.json");
    let a = run_pipeline_text(text, Caps::default());
    let b = run_pipeline_text(text, Caps::default());
    let strip = |r: &geoforge::pipeline::PipelineReport| {
        r.steps
            .iter()
            .map(|s| (s.name.clone(), s.status.clone(), s.detail.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn wreath_step_runs() {
    let text = r#"{
        "schema": 1,
        "groups": {
            "c2": {"kind": "permutation", "degree": 2, "generators": [["a", "(1,2)"]]},
            "sym3": {"kind": "permutation", "degree": 3,
                     "generators": [["s1", "(1,2)"], ["s2", "(2,3)"]]}
        },
        "systems": {
            "point": {"group": "c2", "parabolics": [["0", []]]},
            "simplex": {"group": "sym3",
                        "parabolics": [["1", ["s2"]], ["2", ["s1"]]]}
        },
        "pipeline": [
            {"op": "wreath", "alpha": "point", "beta": "simplex",
             "omega": {"kind": "natural"}, "slots": 3,
             "reps": ["0@1"], "bind": "wr"},
            {"op": "check", "system": "wr", "checks": ["flag-transitive", "rc1", "thin"]}
        ]
    }"#;
    let report = run_pipeline_text(text, Caps::default());
    assert_eq!(report.exit_code(), 0, "{report:?}");
    assert!(report.steps[0]
        .detail
        .as_ref()
        .unwrap()
        .contains("group order 48"));
}

#[test]
fn failing_check_exits_one() {
    let text = r#"{
        "schema": 1,
        "groups": {"v4": {"kind": "permutation", "degree": 4,
            "generators": [["x", "(1,2)"], ["y", "(3,4)"]]}},
        "systems": {"bad": {"group": "v4",
            "parabolics": [["0", ["x"]], ["1", ["y"]], ["2", []]]}},
        "pipeline": [{"op": "check", "system": "bad", "checks": ["rc1"]}]
    }"#;
    let report = run_pipeline_text(text, Caps::default());
    assert_eq!(report.exit_code(), 1);
    let step = report.steps.iter().find(|s| s.status == "fail").unwrap();
    assert!(step.witness.is_some());
}

#[test]
fn export_step_writes_files() {
    let dir = std::env::temp_dir().join("geoforge-e2e");
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("tetra.dot");
    let json = dir.join("tetra.json");
    let text = format!(
        r#"{{
        "schema": 1,
        "groups": {{"sym3": {{"kind": "permutation", "degree": 3,
            "generators": [["a", "(1,2)"], ["b", "(2,3)"]]}}}},
        "systems": {{"tri": {{"group": "sym3",
            "parabolics": [["0", ["b"]], ["1", ["a"]]]}}}},
        "pipeline": [
            {{"op": "materialize", "system": "tri", "bind": "g"}},
            {{"op": "export", "geometry": "g", "format": "dot", "path": {dot:?}}},
            {{"op": "export", "geometry": "g", "format": "json", "path": {json:?}}}
        ]
    }}"#
    );
    let spec = parse_spec(&text).unwrap();
    let report = run_pipeline(&spec, Caps::default());
    assert_eq!(report.exit_code(), 0, "{report:?}");
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("graph geometry {"));
    let json_text = std::fs::read_to_string(&json).unwrap();
    let back = geoforge::materialize::import_json(&json_text).unwrap();
    assert_eq!(back.elements().len(), 6);
    assert_eq!(geoforge::materialize::export_json(&back), json_text);
}
