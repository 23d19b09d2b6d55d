use std::process::Command;

use serde_json::Value;

fn kgonal(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kgonal")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = kgonal(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn rho_and_region() {
    assert_eq!(json(&["rho", "--g", "5", "--r", "1", "--d", "3"])["rho"], -1);
    let (code, csv, _) = kgonal(&["bn-region", "--g", "5", "--k", "3", "--x-max", "3", "--y-max", "3"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().count(), 10);
}

#[test]
fn genus5_example_writes_files() {
    let dir = std::env::temp_dir().join(format!("kgonal-cli-{}", std::process::id()));
    let report = json(&["example", "genus5", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(report["pencil_slopes"], serde_json::json!([2, 3, 3, 2]));
    let map = dir.join("genus5_map.json");
    assert!(dir.join("genus5_map.svg").exists());
    let v = json(&["map", "certify", "--map", map.to_str().unwrap(), "--strict"]);
    assert_eq!(v["certified"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn scroll_map_pipeline() {
    let chain = json(&["chain", "new", "--g", "5", "--k", "3"]).to_string();
    let t = "[[1,2,3],[3,4,5]]";
    let (code, _, err) = kgonal(&["scrollar", "check-dim", "--a", "1", "--b", "1", "--k", "3", "--tableau", t, "--g", "5"]);
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = kgonal(&[
        "map", "build-scroll", "--chain", &chain, "--tableau", t, "--a", "1", "--b", "1", "--divisor",
        &serde_json::json!({"normal": {"d": 5, "xi": ["0", "-1", "1", "0", "-1"]}}).to_string(),
    ]);
    assert_eq!(code, 0, "{err}");
    let map: Value = serde_json::from_str(&out).unwrap();
    let dir = std::env::temp_dir().join(format!("kgonal-scroll-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let tuned_path = dir.join("tuned.json");
    let tuned = json(&["map", "certify", "--map", &map.to_string(), "--tune", "--out", tuned_path.to_str().unwrap()]);
    assert_eq!(tuned["naively_well_spaced"], true);
    // Lengthen one tuned tree edge by 1 so its tie with the nearest escape breaks.
    let first = &tuned["tuning"]["tuned"][0];
    let edge = first["edge"].as_u64().unwrap() as usize;
    let len: i64 = first["len"].as_str().unwrap().parse().unwrap();
    let mut skeleton: Value = serde_json::from_str(&std::fs::read_to_string(&tuned_path).unwrap()).unwrap();
    skeleton["edges"][edge]["len"] = Value::String((len + 1).to_string());
    let bumped = dir.join("bumped.json");
    std::fs::write(&bumped, skeleton.to_string()).unwrap();
    let (code, _, _) = kgonal(&["map", "certify", "--map", bumped.to_str().unwrap()]);
    assert_eq!(code, 2, "stale positions are rejected");
    let (code, out, err) = kgonal(&["map", "certify", "--map", bumped.to_str().unwrap(), "--reintegrate", "--strict"]);
    assert_eq!(code, 3, "{out}{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn errors_are_json_on_stderr() {
    let (code, out, err) = kgonal(&["chain", "show", "--chain", "/no/such/file.json"]);
    assert_ne!(code, 0);
    assert!(out.is_empty());
    let e: Value = serde_json::from_str(err.trim()).unwrap();
    assert!(e["message"].as_str().unwrap().contains("/no/such/file.json"));
    let (code, _, _) = kgonal(&["rho", "--g", "5"]);
    assert_eq!(code, 2);
}
