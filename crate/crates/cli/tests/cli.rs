mod common;

use std::path::PathBuf;

use common::{powmon, powmon_with, stdout_json};
use serde_json::Value;

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

fn code(args: &[&str]) -> i32 {
    powmon(args).status.code().unwrap()
}

#[test]
fn aut_examples() {
    for (group, aut_g, aut_p0g, exceptional) in
        [("2,2", 6, 36, true), ("2", 1, 1, false), ("4", 2, 2, false)]
    {
        let out = powmon(&["aut", "--group", group, "--format", "json"]);
        assert!(out.status.success());
        let v = stdout_json(&out);
        assert_valid("aut.schema.json", &v);
        assert_eq!(v["aut_g_order"], aut_g, "{group}");
        assert_eq!(v["aut_p0g_order"], aut_p0g, "{group}");
        assert_eq!(v["exceptional"], exceptional, "{group}");
    }
}

#[test]
fn aut_emits_maps() {
    let v = stdout_json(&powmon(&[
        "aut",
        "--group",
        "4",
        "--emit-maps",
        "--format",
        "json",
    ]));
    assert_valid("aut.schema.json", &v);
    let maps = v["automorphisms"].as_array().unwrap();
    assert_eq!(maps.len(), 2);
    // the non-trivial map is induced by negation
    assert_eq!(maps[1]["pullback"], serde_json::json!([0, 3, 2, 1]));
    assert_eq!(maps[1]["subsets"][1]["subset"], serde_json::json!([0, 1]));
    assert_eq!(maps[1]["subsets"][1]["image"], serde_json::json!([0, 3]));
}

#[test]
fn raw_keeps_input_factors() {
    let v = stdout_json(&powmon(&[
        "aut", "--group", "4,2", "--raw", "--format", "json",
    ]));
    assert_eq!(v["group"], serde_json::json!([2, 4]));
    assert_eq!(v["input"], serde_json::json!([4, 2]));
    let plain = stdout_json(&powmon(&["aut", "--group", "4,2", "--format", "json"]));
    assert!(plain.get("input").is_none());
}

#[test]
fn verify_examples() {
    let v = stdout_json(&powmon(&["verify", "--max-order", "4", "--format", "json"]));
    assert_valid("verify.schema.json", &v);
    let groups: Vec<Value> = v["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"].clone())
        .collect();
    assert_eq!(
        groups,
        serde_json::json!([[], [2], [3], [4], [2, 2]])
            .as_array()
            .unwrap()
            .clone()
    );
    assert_eq!(v["passed"], true);

    let one = stdout_json(&powmon(&["verify", "--max-order", "1", "--format", "json"]));
    assert_eq!(one["groups"].as_array().unwrap().len(), 1);
    assert_eq!(one["passed"], true);

    let out = powmon(&["verify", "--max-order", "9", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let nine = stdout_json(&out);
    assert_valid("verify.schema.json", &nine);
    let names: Vec<Value> = nine["groups"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["group"].clone())
        .collect();
    for g in [vec![2, 2, 2], vec![3, 3], vec![8], vec![2, 4], vec![9]] {
        assert!(names.contains(&serde_json::json!(g)), "{g:?}");
    }
    for g in nine["groups"].as_array().unwrap() {
        assert!(
            g["checks"]
                .as_array()
                .unwrap()
                .iter()
                .all(|c| c["status"] == "pass"),
            "{g}"
        );
    }
}

#[test]
fn lemmas_examples() {
    let v = stdout_json(&powmon(&["lemmas", "--group", "2,4", "--format", "json"]));
    assert_valid("report.schema.json", &v);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));

    let klein = stdout_json(&powmon(&["lemmas", "--group", "2,2", "--format", "json"]));
    let prelim = klein["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "prelim")
        .unwrap();
    assert_eq!(prelim["status"], "pass");
    assert!(prelim["note"].as_str().unwrap().contains("C2^2"));

    let three = powmon(&["lemmas", "--group", "3"]);
    assert!(three.status.success());
    let text = String::from_utf8(three.stdout).unwrap();
    assert!(text.contains("2 automorphisms checked"), "{text}");
    assert!(!text.contains("fail"));
}

#[test]
fn lemmas_csv_has_one_row_per_check() {
    let out = powmon(&["lemmas", "--group", "2,4", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["check", "status", "note", "witness"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(rows.len() >= 10);
    assert!(rows.iter().all(|r| &r[1] == "pass"));
}

#[test]
fn table_examples() {
    let two = stdout_json(&powmon(&["table", "--group", "2", "--format", "json"]));
    assert_valid("table.schema.json", &two);
    assert_eq!(two["table"], serde_json::json!([[0, 1], [1, 1]]));
    assert_eq!(two["carrier"], serde_json::json!([[0], [0, 1]]));

    let klein = stdout_json(&powmon(&["table", "--group", "2,2", "--format", "json"]));
    let rows = klein["table"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7]));

    let four = stdout_json(&powmon(&["table", "--group", "4", "--format", "json"]));
    // {0,1} + {0,1} = {0,1,2}
    assert_eq!(four["carrier"][1], serde_json::json!([0, 1]));
    assert_eq!(four["carrier"][3], serde_json::json!([0, 1, 2]));
    assert_eq!(four["table"][1][1], 3);
}

#[test]
fn table_csv_layout() {
    let out = powmon(&["table", "--group", "4", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("carrier_index,subset,0,1,2,3,4,5,6,7"));
    assert_eq!(lines.next(), Some("0,[0],0,1,2,3,4,5,6,7"));
    assert_eq!(lines.next(), Some("1,\"[0,1]\",1,3,7,7,5,7,7,7"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["aut", "--group", "2,x"]), 2);
    assert_eq!(code(&["aut", "--group", "0"]), 2);
    assert_eq!(code(&["aut", "--group", "2,1"]), 2);
    assert_eq!(code(&["aut"]), 2);
    assert_eq!(code(&["verify"]), 2);
    assert_eq!(code(&["verify", "--max-order", "0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(
        code(&["aut", "--group", "4", "--emit-maps", "--format", "csv"]),
        2
    );
    assert_eq!(code(&["aut", "--group", "13"]), 3);
    assert_eq!(code(&["table", "--group", "13"]), 3);
    assert_eq!(code(&["aut", "--group", "2,4", "--budget", "5"]), 3);
    assert_eq!(code(&["verify", "--max-order", "13", "--strict"]), 3);
    assert_eq!(code(&["verify", "--max-order", "13"]), 0);
    assert_eq!(
        code(&["lemmas", "--group", "2,2,2", "--budget", "1", "--strict"]),
        3
    );
    assert_eq!(code(&["lemmas", "--group", "2,2,2", "--budget", "1"]), 0);
}

#[test]
fn budget_comes_from_environment() {
    let starved = powmon_with(&["aut", "--group", "2,4"], &[("POWMON_BUDGET", "5")]);
    assert_eq!(starved.status.code(), Some(3));
    let flag_wins = powmon_with(
        &["aut", "--group", "2,4", "--budget", "100000"],
        &[("POWMON_BUDGET", "5")],
    );
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--max-order", "6", "--format", "json"][..],
        &["verify", "--max-order", "6", "--format", "csv"],
        &["verify", "--max-order", "6"],
        &["aut", "--group", "2,2", "--emit-maps", "--format", "json"],
        &["lemmas", "--group", "2,4", "--format", "json"],
        &["table", "--group", "2,3"],
    ] {
        let a = powmon(args);
        let b = powmon(args);
        let threaded = powmon(&[args, &["--parallelism", "2"][..]].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, threaded.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn timings_stay_on_stderr() {
    let out = powmon(&["lemmas", "--group", "2,2", "--format", "json"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.starts_with("# metadata {"));
    assert!(stderr.contains("elapsed_ms"));
    assert!(!String::from_utf8(out.stdout).unwrap().contains("elapsed"));
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = powmon(&[
        "table",
        "--group",
        "2,2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("carrier_index,subset,0,1,2,3,4,5,6,7\n"));
}

#[test]
fn trivial_group_is_accepted() {
    let v = stdout_json(&powmon(&["aut", "--group=", "--format", "json"]));
    assert_eq!(v["group"], serde_json::json!([]));
    assert_eq!(v["aut_p0g_order"], 1);
    let t = stdout_json(&powmon(&["table", "--group=", "--format", "json"]));
    assert_eq!(t["table"], serde_json::json!([[0]]));
}

#[test]
fn verify_schema_embeds_the_report_schema() {
    assert_eq!(
        schema("verify.schema.json")["$defs"],
        schema("report.schema.json")["$defs"]
    );
}

#[test]
fn skipped_groups_validate() {
    let out = powmon(&["verify", "--max-order", "13", "--format", "json"]);
    let v = stdout_json(&out);
    assert_valid("verify.schema.json", &v);
    let last = v["groups"].as_array().unwrap().last().unwrap();
    assert_eq!(last["group"], serde_json::json!([13]));
    assert!(last["aut_g_order"].is_null());
    assert!(last["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "skipped"));
}
