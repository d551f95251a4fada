use std::process::Command;

fn igeom(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_igeom")).args(args).output().expect("binary runs")
}

#[test]
fn thm1_ball_passes_and_reports_json() {
    let out = igeom(&["verify", "--case", "thm1", "--body", "ball", "--dim", "3", "--h-power", "3", "--n-samples", "50000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "thm1");
    assert_eq!(v["pass"], true);
    assert!(v["seconds"].is_null());
    let lhs = v["lhs"]["mean"].as_f64().unwrap();
    assert!((lhs - 16.0 * std::f64::consts::PI / 5.0).abs() < 0.3);
    assert_eq!(v["lhs"]["n"], 50000);
}

#[test]
fn smooth_case_on_cube_is_usage_error() {
    let out = igeom(&["verify", "--case", "thm1", "--body", "cube", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smooth"));
}

#[test]
fn unknown_case_and_body_are_usage_errors() {
    assert_eq!(igeom(&["verify", "--case", "thm9"]).status.code(), Some(2));
    assert_eq!(igeom(&["verify", "--case", "thm1", "--body", "torus"]).status.code(), Some(2));
    assert_eq!(igeom(&["verify"]).status.code(), Some(2));
}

#[test]
fn printed_constants_fail_with_exit_one() {
    let out = igeom(&["verify", "--case", "thm2", "--body", "cube", "--dim", "3", "--n-samples", "50000", "--constants", "printed"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn kingman_passes() {
    let out = igeom(&["verify", "--case", "kingman", "--body", "ball", "--dim", "3", "--moment", "1", "--n-samples", "50000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_output_has_one_row() {
    let out = igeom(&["verify", "--case", "mean-chord", "--body", "cube", "--dim", "3", "--n-samples", "10000", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("case,body,dim"));
    assert!(lines[1].starts_with("mean-chord,cube,3"));
}

#[test]
fn out_path_writes_file_and_prints_summary() {
    let dir = std::env::temp_dir().join(format!("igeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let out = igeom(&["verify", "--case", "mean-chord", "--body", "ball", "--dim", "2", "--n-samples", "5000", "--out-path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["case"], "mean-chord");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn histogram_csv_has_overlay_for_ball() {
    let out = igeom(&["histogram", "--body", "ball", "--dim", "2", "--bins", "8", "--n-samples", "20000", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.lines().skip(1).all(|l| !l.ends_with(',')));
    let out = igeom(&["histogram", "--body", "cube", "--dim", "3", "--bins", "8", "--n-samples", "20000", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().skip(1).all(|l| l.ends_with(',')));
}

#[test]
fn shard_env_var_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_igeom"))
        .args(["verify", "--case", "mean-chord", "--body", "cube", "--dim", "3", "--n-samples", "1000"])
        .env("IGEOM_SHARDS", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["shards"], 3);
}

#[test]
fn fit_constant_reports_theoretical_value() {
    let out = igeom(&["fit-constant", "--case", "thm1", "--body", "ball", "--dim", "3", "--h-power", "3", "--n-samples", "50000"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let t = v["theoretical"].as_f64().unwrap();
    assert!((t - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-12);
    assert_eq!(v["cited"], 4.0);
}
