use std::process::Command;

fn parrep(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_parrep")).args(args).output().unwrap();
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn build_z2_prints_dims() {
    let (code, out) = parrep(&["build", "--group", "cyclic:2"]);
    assert_eq!(code, Some(0));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for (k, d) in [("apar", 2), ("hpar", 3), ("B", 3), ("homAA", 3), ("hglob", 6)] {
        assert_eq!(v["dims"][k], d, "{k}");
    }
}

#[test]
fn exit_codes_follow_the_table() {
    assert_eq!(parrep(&["verify", "--group", "cyclic:2", "--suites", "xi"]).0, Some(0));
    assert_eq!(parrep(&["verify", "--group", "cyclic:9"]).0, Some(2));
    assert_eq!(parrep(&["verify", "--group", "symmetric:3", "--suites", "hpar"]).0, Some(2));
    assert_eq!(parrep(&["verify", "--group", "cyclic:2", "--suites", "bogus"]).0, Some(3));
    assert_eq!(parrep(&["build", "--nope"]).0, Some(3));
    assert_eq!(parrep(&["verify", "--group", "file:/nonexistent/table.txt"]).0, Some(4));
}

#[test]
fn corrupted_module_fails_with_instances() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = parrep(&["export", "--group", "cyclic:2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, Some(0));
    let p = dir.path().join("apar-module.json");
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    // g•P{e,g} = 2·P{e,g}
    for row in v["action"].as_array_mut().unwrap() {
        if row[0] == "g" {
            row[2][0][1] = "2".into();
        }
    }
    std::fs::write(&p, v.to_string()).unwrap();
    let (code, out) = parrep(&["verify", "--group", "cyclic:2", "--suites", "pr-axioms", "--format", "text", "--module", p.to_str().unwrap()]);
    assert_eq!(code, Some(1), "{out}");
    assert!(out.contains("FAIL module-file.PR2"), "{out}");
}
