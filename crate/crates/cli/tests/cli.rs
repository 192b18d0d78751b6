use std::process::Command;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_segre-betti"))
        .args(args)
        .env_remove("BETTI_CACHE_DIR")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn headline_number_agrees() {
    let (code, out, _) = bin(&["betti", "--a", "3", "--b", "3", "--p", "11", "--q", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 22") && out.contains("AGREE"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["betti", "--a", "0", "--b", "1", "--p", "1", "--q", "1"][..],
        &["betti", "--a", "3", "--b", "2", "--p", "1", "--q", "1"],
        &["betti", "--a", "2", "--b", "2"],
        &["betti", "--a", "2", "--b", "2", "--p", "1", "--q", "1", "--field", "32004"],
        &["betti", "--a", "2", "--b", "2", "--p", "1", "--q", "1", "--threads", "0"],
        &["bidegree", "--a", "2", "--b", "2", "--p", "5", "--q", "1", "--window", "3:1,0:1"],
        &["verify", "kernel", "--a", "2", "--b", "3"],
        &["verify", "nonsense"],
        &["cache", "stats"],
        &["frobnicate"],
    ] {
        let (code, _, err) = bin(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn verify_suite_exits_0() {
    let (code, out, _) = bin(&["verify", "en", "--e", "1,2", "--c", "1", "--max-deg", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("all checks passed"));
    let (code, out, _) = bin(&["verify", "cocycles", "--a", "3", "--b", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn formats() {
    let (_, csv, _) = bin(&["bidegree", "--a", "2", "--b", "2", "--p", "5", "--q", "1", "--format", "csv"]);
    assert!(csv.starts_with("u1,u2,dim\n"));
    assert!(csv.contains("\n6,6,4\n"));
    let (_, table, _) = bin(&["betti", "--a", "2", "--b", "2", "--max-p", "6", "--format", "csv"]);
    assert_eq!(table.lines().nth(2), Some("1,0,20,64,90,64,20,0"));
    let (_, window, _) =
        bin(&["bidegree", "--a", "2", "--b", "2", "--p", "5", "--q", "1", "--window", "6:7,6:6"]);
    assert_eq!(window, "4 2\ntotal 20\n");
    let (_, empty, _) = bin(&["bidegree", "--a", "3", "--b", "3", "--p", "12", "--q", "1"]);
    assert_eq!(empty, "total 0\n");
}

#[test]
fn scroll_algebras() {
    let (code, out, _) = bin(&["betti", "--e", "2,3", "--p", "2", "--q", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["algebra"], "scroll");
    // p C(f, p+1) with f = 5
    assert_eq!(v["betti"], 20);
}

#[test]
fn cache_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let (code, _, _) = bin(&["betti", "--a", "2", "--b", "2", "--p", "5", "--q", "1", "--cache", cache]);
    assert_eq!(code, 0);
    let (_, stats, _) = bin(&["cache", "stats", "--cache", cache]);
    assert!(stats.contains("1 strand files"), "{stats}");
    let (code, cleared, _) = bin(&["cache", "clear", "--cache", cache]);
    assert_eq!(code, 0);
    assert!(cleared.starts_with("removed 1 "));
    let (_, stats, _) = bin(&["cache", "stats", "--cache", cache]);
    assert!(stats.contains("0 strand files"));
}
