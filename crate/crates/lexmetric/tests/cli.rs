//! End-to-end tests of the `lexmetric` binary: exit-code contract,
//! deterministic byte-identical reports, DOT emission and config
//! round-tripping.

use std::io::Write as _;
use std::process::{Command, Output};

use lexmetric::config::{emit_config, parse_config};
use lexmetric::report::COMMUNAL_CONFIG;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexmetric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file
}

#[test]
fn distance_command_matches_the_frozen_oracle() {
    let text = stdout(&["distance", "--from", "{}", "--to", "comp"]);
    assert!(text.contains("D({comp}||{}) = 5.533333 (= 83/15)"), "{text}");
    assert!(text.contains("D({}||{comp}) = 0.000000 (= 0)"), "{text}");
}

#[test]
fn incremental_paths_ranked() {
    let text = stdout(&[
        "path",
        "--from",
        "{}",
        "--to",
        "tax,raffle,comp",
        "--incremental",
        "--k",
        "6",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7); // header + 6 paths
    assert!(lines[1].contains("length 9.977778 (= 449/45)"), "{text}");
    assert!(lines[6].contains("616/15"), "{text}");
}

#[test]
fn json_mirrors_human() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "distance", "--from", "{}", "--to", "comp", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["directed_to_from"]["exact"], "83/15");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["reproduce", "--format", "json"])).unwrap();
    assert_eq!(json["path_deviations"], 3);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["reproduce"],
        vec!["graph"],
        vec!["pareto"],
        vec!["severity"],
        vec!["radius"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "{args:?} not deterministic");
        assert!(!a.is_empty());
    }
}

#[test]
fn dot_output_for_graph_only() {
    let dot = stdout(&["graph", "--format", "dot"]);
    assert!(dot.starts_with("digraph lexmetric {"));
    assert!(dot.contains("n0 [label=\"{}\"];"));
    assert!(dot.contains("n7 [label=\"{tax,raffle,comp}\"];"));
    let out = run(&["distance", "--from", "{}", "--to", "comp", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_code_matrix() {
    // 0: success
    assert_eq!(run(&["validate"]).status.code(), Some(0));
    assert_eq!(run(&["reproduce"]).status.code(), Some(0));
    // 1: domain errors
    let missing = run(&["validate", "--config", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(1));
    let syntax = write_temp("{ not json");
    assert_eq!(
        run(&["validate", "--config", syntax.path().to_str().unwrap()]).status.code(),
        Some(1)
    );
    let bad_sum = write_temp(&COMMUNAL_CONFIG.replace("8/30", "5/30"));
    let out = run(&["validate", "--config", bad_sum.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("{tax}"));
    // divergence needs player tables; the bundled config has none
    assert_eq!(run(&["divergence", "--from", "tax"]).status.code(), Some(1));
    // path --incremental requires monotone endpoints
    assert_eq!(
        run(&["path", "--from", "tax", "--to", "raffle,comp", "--incremental"]).status.code(),
        Some(1)
    );
    // 2: usage errors
    assert_eq!(run(&["distance", "--from", "{}"]).status.code(), Some(2));
    assert_eq!(run(&["distance", "--from", "nope", "--to", "{}"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "--variant", "bogus"]).status.code(), Some(2));
}

#[test]
fn config_round_trip_is_stable() {
    let config = parse_config(COMMUNAL_CONFIG).unwrap();
    let emitted = emit_config(&config);
    assert_eq!(parse_config(&emitted).unwrap(), config);
    // the emitted config drives the binary identically
    let copy = write_temp(&emitted);
    let a = stdout(&["severity"]);
    let b = stdout(&["severity", "--config", copy.path().to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn variant_and_log_base_flags() {
    // plus-symmetrized weights make A<->D symmetric in the graph report
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "graph", "--format", "json", "--variant", "plus",
    ]))
    .unwrap();
    let edges = json["edges"].as_array().unwrap();
    let weight = |from: &str, to: &str| -> f64 {
        edges
            .iter()
            .find(|e| e["from"] == from && e["to"] == to)
            .unwrap()["weight"]["value"]
            .as_f64()
            .unwrap()
    };
    assert_eq!(weight("{}", "{comp}"), weight("{comp}", "{}"));
    // base-2 entropy is the natural value divided by ln 2
    let nats: serde_json::Value =
        serde_json::from_str(&stdout(&["entropy", "--from", "comp", "--format", "json"])).unwrap();
    let bits: serde_json::Value = serde_json::from_str(&stdout(&[
        "entropy", "--from", "comp", "--format", "json", "--log-base", "2",
    ]))
    .unwrap();
    let h_e = nats["entropy"][0]["entropy"].as_f64().unwrap();
    let h_2 = bits["entropy"][0]["entropy"].as_f64().unwrap();
    assert!((h_2 - h_e / std::f64::consts::LN_2).abs() < 1e-12);
    assert!((h_e - 0.146_144_746).abs() < 1e-8);
}

#[test]
fn edge_override_config_is_labeled() {
    let with_override = COMMUNAL_CONFIG.replace(
        "\"direction\": \"to-maximal\"",
        "\"direction\": \"to-maximal\",\n    \"edge_overrides\": [\n      { \"from\": [], \"to\": [\"comp\"], \"weight\": \"332/30\", \"symmetric\": true }\n    ]",
    );
    let file = write_temp(&with_override);
    let text = stdout(&["graph", "--config", file.path().to_str().unwrap()]);
    assert!(text.contains("edge overrides active"), "{text}");
    assert!(text.contains("11.066667  [override]"), "{text}");
}

#[test]
fn signers_and_r_flag() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["signers", "--format", "json"])).unwrap();
    assert_eq!(json["signers"][0]["class"], "ordinary");
    assert_eq!(json["signers"][1]["class"], "stubborn");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["signers", "--r", "0", "--format", "json"])).unwrap();
    assert_eq!(json["signers"][0]["class"], "boycotter");
}
