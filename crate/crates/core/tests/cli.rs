use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bgg"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bgg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn out_of_range_node_exits_one() {
    let cfg = scratch("bad.cfg", "algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [3]\n");
    let out = bin().args(["homology", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("node index out of range"), "{err}");
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_key_and_usage_errors_exit_one() {
    let cfg = scratch("unknown.cfg", "algebra.type = A\nalgebra.rank = 1\nalgebra.flavour = 2\n");
    let out = bin().args(["inspect", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key"));
    assert_eq!(bin().output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["bgg"]).output().unwrap().status.code(), Some(1));
}

#[test]
fn homology_report_is_stable() {
    let cfg = scratch("a2.cfg", "algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [1, 2]\n");
    let run = || {
        let out = bin().args(["homology", "--config"]).arg(&cfg).env("BGG_THREADS", "2").output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        String::from_utf8(out.stdout).unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.ends_with("}\n"));
    let (mut ja, mut jb): (Value, Value) = (serde_json::from_str(&a).unwrap(), serde_json::from_str(&b).unwrap());
    assert_eq!(ja["homology"]["betti"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(ja["report_version"], 1);
    ja.as_object_mut().unwrap().remove("timing");
    jb.as_object_mut().unwrap().remove("timing");
    assert_eq!(ja, jb);
}

#[test]
fn out_flag_writes_file() {
    let cfg = scratch("b2.cfg", "algebra.type = B\nalgebra.rank = 2\nparabolic.crossed_nodes = [1]\nrep.highest_weight = [1, 0]\n");
    let dest = cfg.with_file_name("b2.json");
    let out = bin().args(["rockland", "--config"]).arg(&cfg).arg("--out").arg(&dest).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(v["rockland"]["block_diagonal"]["passed"], true);
    assert!(v.get("numeric").is_none());
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = bin().args(["selftest"]).env("BGG_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
