use std::path::Path;
use std::process::{Command, Output};

fn qaffine(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qaffine"));
    cmd.args(args).env_remove("QAFFINE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("QAFFINE_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn character_table_shape() {
    let out = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "0,2", "--depth", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["algebra"], "B1_0_1");
    assert_eq!(v["highest_weight_labels"], serde_json::json!(["0", "2"]));
    assert_eq!(v["lambda0_coeff"], "1");
    assert_eq!(v["complete"], true);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries[0]["alpha_coords"], serde_json::json!([0, 0]));
    assert_eq!(entries[0]["multiplicity"], 1);
    assert!(entries.iter().all(|e| e["multiplicity"].as_u64().unwrap() > 0));
}

#[test]
fn csv_matches_json() {
    let args = ["character", "--algebra", "C2_2", "--labels", "2,0", "--depth", "4"];
    let j = json(&qaffine(&args, None));
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = String::from_utf8(qaffine(&csv_args, None).stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("c0,c1,multiplicity"));
    let rows: Vec<String> = lines.map(str::to_string).collect();
    let expected: Vec<String> = j["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let c: Vec<String> = e["alpha_coords"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
            format!("{},{}", c.join(","), e["multiplicity"])
        })
        .collect();
    assert_eq!(rows, expected);
}

#[test]
fn non_integrable_labels_are_usage_errors() {
    let out = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "0,1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even-label"));
    let forced = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "0,1", "--depth", "3", "--allow-nonintegrable"], None);
    assert_eq!(forced.status.code(), Some(0));
}

#[test]
fn mismatched_lambda0_is_rejected() {
    let out = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "1,0", "--lambda0", "5"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limit_gives_partial_table() {
    let out = qaffine(&["character", "--algebra", "B1_0_2", "--labels", "1,0,0", "--depth", "6", "--column-limit", "2"], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["complete"], false);
}

#[test]
fn cache_warm_equals_cold() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["character", "--algebra", "B1_0_1", "--labels", "1,2", "--depth", "5"];
    let plain = qaffine(&args, None);
    let cold = qaffine(&args, Some(dir.path()));
    let warm = qaffine(&args, Some(dir.path()));
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);
    let shallower = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "1,2", "--depth", "3"], Some(dir.path()));
    let direct = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "1,2", "--depth", "3"], None);
    assert_eq!(shallower.stdout, direct.stdout);
    let flag = qaffine(&["character", "--algebra", "B1_0_1", "--labels", "1,2", "--depth", "5", "--cache-dir", dir.path().to_str().unwrap()], None);
    assert_eq!(flag.stdout, cold.stdout);
}

#[test]
fn verify_reports_are_reproducible_without_timing() {
    let args = ["verify", "serre", "--algebra", "B1_0_1", "--labels", "1,0", "--depth", "3", "--no-timing"];
    let a = qaffine(&args, None);
    let b = qaffine(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["elapsed_ms"], 0);
    let stderr = String::from_utf8(a.stderr).unwrap();
    assert!(serde_json::from_str::<serde_json::Value>(&stderr).is_err());
    assert!(stderr.starts_with("PASS"));
}

#[test]
fn negative_controls_exit_one() {
    for args in [
        vec!["verify", "twist", "--family", "B", "--n", "1", "--labels", "1,0", "--depth", "3", "--mutate-signs"],
        vec!["verify", "presentation", "--algebra", "C2_2", "--mutate-signs"],
        vec!["verify", "tensor", "--algebra", "B1_0_1", "--labels", "1,0", "--depth", "2", "--uncorrected-coproduct"],
    ] {
        let out = qaffine(&args, None);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&out)["status"], "fail");
        assert!(!json(&out)["counterexample"].is_null());
    }
}

#[test]
fn positive_suites_exit_zero() {
    for args in [
        vec!["verify", "twist", "--family", "B", "--n", "1", "--labels", "1,0", "--depth", "3"],
        vec!["verify", "twist", "--algebra", "C2_3", "--labels", "0,1,0", "--depth", "2"],
        vec!["verify", "presentation", "--algebra", "A2_0_3"],
        vec!["verify", "tensor", "--algebra", "B1_0_1", "--labels", "1,0", "--right-labels", "0,2", "--depth", "2"],
        vec!["verify", "classical", "--algebra", "B1_0_2", "--labels", "1,0,0", "--depth", "3"],
        vec!["verify", "oracle", "--algebra", "B1_0_1", "--labels", "1,2", "--depth", "3", "--seed", "5"],
        vec!["verify", "specialized", "--algebra", "C2_2"],
    ] {
        let out = qaffine(&args, None);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn exported_spec_validates_and_broken_spec_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let exported = qaffine(&["catalog", "--export", "A2_0_3"], None);
    let path = dir.path().join("a.json");
    std::fs::write(&path, &exported.stdout).unwrap();
    let ok = qaffine(&["validate", "--spec", path.to_str().unwrap()], None);
    assert_eq!(ok.status.code(), Some(0));

    let broken = dir.path().join("b.json");
    std::fs::write(&broken, "{\n  \"name\": \"x\",\n  \"matrix\": [[2, -1], [-1, 2]],\n  \"theta\": [0],\n  \"d\": [1, \"1\"]\n}").unwrap();
    let out = qaffine(&["validate", "--spec", broken.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 5"), "{stderr}");

    let bad_theta = dir.path().join("c.json");
    std::fs::write(&bad_theta, "{\"name\": \"x\", \"matrix\": [[2, -1], [-4, 2]], \"theta\": [0], \"d\": [\"2\", \"1/2\"]}").unwrap();
    let out = qaffine(&["validate", "--spec", bad_theta.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn catalog_lists_partners() {
    let v = json(&qaffine(&["catalog"], None));
    let rows = v.as_array().unwrap();
    let b = rows.iter().find(|r| r["name"] == "B1_0_1").unwrap();
    assert_eq!(b["partner"], "A2_2");
    let a4 = rows.iter().find(|r| r["name"] == "A4_0_2").unwrap();
    assert!(a4["partner"].is_null());
}

#[test]
fn integrable_classifier_output() {
    let v = json(&qaffine(&["integrable", "--algebra", "B1_0_1", "--labels", "1,3"], None));
    assert_eq!(v["integrable"], false);
    let v = json(&qaffine(&["integrable", "--algebra", "B1_0_1", "--labels", "1,2"], None));
    assert_eq!(v["integrable"], true);
}
