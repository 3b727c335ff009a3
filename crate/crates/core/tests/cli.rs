use std::process::Command;

fn s2(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_s2")).args(args).env_remove("MORAVA_S2_CACHE_DIR").output().unwrap()
}

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_prints_digits() {
    let o = s2(&["expand", "alpha", "--s-digits", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 + w*S^2 (mod S^4)\n");
}

#[test]
fn congruences_pass_eight_of_eight() {
    let o = s2(&["verify", "congruences"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["pass"], 8);
    assert_eq!(summary["summary"]["total"], 8);
}

#[test]
fn low_level_run_skips_theta_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    for p in [&a, &b] {
        let o = s2(&[
            "verify",
            "all",
            "--level",
            "3",
            "--coeff-bits",
            "3",
            "--trials",
            "20",
            "--report",
            p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ra = std::fs::read(&a).unwrap();
    assert_eq!(ra, std::fs::read(&b).unwrap());
    let text = String::from_utf8(ra).unwrap();
    let mut names = Vec::new();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        if let Some(check) = v["check"].as_str() {
            names.push(check.to_string());
            if v["suite"] == "theta" {
                assert_eq!(v["status"], "skipped");
            }
            assert!(v["elapsed_ms"].is_null());
        }
    }
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn config_file_and_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("run.toml");
    std::fs::write(&good, "seed = 11\ntrials = 10\n").unwrap();
    let o = s2(&["verify", "lie", "--config", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"seed\":11"));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "levle = 3\n").unwrap();
    let o = s2(&["verify", "lie", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn exports_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("theta.json");
    let o = s2(&["theta", "--level", "6", "--coeff-bits", "3", "--out", t.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let export: morava_s2::resolution::ThetaExport = serde_json::from_slice(&std::fs::read(&t).unwrap()).unwrap();
    assert_eq!((export.level, export.modulus), (6, 8));
    assert!(!export.theta().unwrap().is_zero());
    let o = s2(&["fgl", "--degree", "8"]);
    assert_eq!(stdout(&o).trim(), r#"{"format_version":1,"degree":8,"coefficients":[[0,1],[1,0],[2,2]]}"#);
    assert_eq!(s2(&["fgl", "--degree", "65"]).status.code(), Some(2));
}

#[test]
fn timings_are_opt_in() {
    let o = s2(&["verify", "n1", "--timings"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}
