use std::process::{Command, Output};

fn qaffine(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaffine")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passing_check_exits_zero() {
    let o = qaffine(&["verify", "--check", "ybe", "--n", "2", "--mode", "symbolic-q"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ybe"));
}

#[test]
fn mutation_exits_one_with_witness() {
    let o = qaffine(&["verify", "--check", "ybe", "--n", "2", "--mutation", "broken-r", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "fail");
    assert!(v["witness"].is_string());
}

#[test]
fn unknown_check_exits_two() {
    let o = qaffine(&["verify", "--check", "no-such-check"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn bad_window_exits_two() {
    let o = qaffine(&["verify", "--check", "ybe", "--window", "x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_without_timings_are_byte_identical() {
    let args = ["verify", "--check", "fusion", "--n", "2", "--k", "2", "--seed", "9", "--json", "--no-timings"];
    let (a, b) = (qaffine(&args), qaffine(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("millis"));
}

#[test]
fn config_file_is_read_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("qaffine-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("spec.toml");
    std::fs::write(&cfg, "check = \"ybe\"\nn = 3\nmode = \"symbolic-q\"\n").unwrap();
    let o = qaffine(&["verify", "--check", "ybe", "--config", cfg.to_str().unwrap(), "--n", "2", "--json", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["params"]["mode"], "symbolic-q");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn compute_writes_artifacts() {
    let dir = std::env::temp_dir().join(format!("qaffine-out-{}", std::process::id()));
    let o = qaffine(&["compute", "ell-bar", "--n", "2", "--mode", "symbolic-q", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# ell-bar n=2 q=symbolic"));
    let text = std::fs::read_to_string(dir.join("ell-bar-n2.txt")).unwrap();
    assert_eq!(text, stdout(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("ell-bar-n2.json")).unwrap()).unwrap();
    assert_eq!(json["target"], "ell-bar");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn list_shows_checks() {
    let o = qaffine(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["ybe", "centrality", "wakimoto", "acceptance"] {
        assert!(stdout(&o).contains(name));
    }
}
