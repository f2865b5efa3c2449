use std::io::Write;
use std::process::{Command, Output, Stdio};

const SIERPINSKI: &str = "points: a b\nopens: {}, {b}, {a b}\n";
const CHAIN2: &str = "points: a b\norder: a<=b\n";

fn ordtop(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ordtop"));
    cmd.args(args)
        .env_remove("ORDTOP_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn audit_exit_codes() {
    let clean = ordtop(&["audit", "T10.3", "--n", "3"], None);
    assert_eq!(code(&clean), 0);
    assert!(stdout(&clean).contains("instances: 29"));
    assert_eq!(code(&ordtop(&["audit", "L9.2", "--n", "3"], None)), 1);
    let unknown = ordtop(&["audit", "T99"], None);
    assert_eq!(code(&unknown), 2);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("T99"));
    assert_eq!(code(&ordtop(&["audit", "T9.3", "--n", "9"], None)), 2);
}

#[test]
fn audit_json_and_listing() {
    let o = ordtop(&["audit", "P5.5", "--n", "2", "--json"], None);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["instances"], 4);
    assert_eq!(v["violations"], 0);
    let list = stdout(&ordtop(&["audit", "--list"], None));
    for id in ["T3.3-roundtrip", "T5.3", "T10.3", "L9.2", "L1.1"] {
        assert!(list.contains(id), "{id}");
    }
}

#[test]
fn structure_commands_read_stdin() {
    let o = ordtop(&["classify", "-", "--json"], Some(SIERPINSKI));
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.to_string().contains("\"c_space\":true"));
    let m = ordtop(&["metrics", "-", "--json"], Some(SIERPINSKI));
    let v: serde_json::Value = serde_json::from_str(&stdout(&m)).unwrap();
    assert_eq!(v["metrics"]["weight_s"], 2);
    for args in [["patch", "-", "--zeta", "alpha"], ["complete", "-", "--json", "--dot"]] {
        assert_eq!(code(&ordtop(&args, Some(SIERPINSKI))), 0, "{args:?}");
    }
    let dot = stdout(&ordtop(&["classify", "-", "--dot"], Some(SIERPINSKI)));
    assert!(dot.starts_with("digraph"));
}

#[test]
fn powerdomain_output_matches_golden() {
    let o = ordtop(&["powerdomain", "-", "--theory", "plotkin"], Some(CHAIN2));
    assert_eq!(code(&o), 0);
    let golden = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../ordtop/tests/golden/plotkin-chain2.golden"
    ))
    .unwrap();
    for line in stdout(&o).lines().filter(|l| l.contains("<=") || l.contains(" = ")) {
        assert!(golden.contains(line.trim()), "{line}");
    }
    assert_eq!(
        code(&ordtop(&["powerdomain", "-", "--theory", "hoare"], Some(SIERPINSKI))),
        0
    );
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        code(&ordtop(&["classify", "-"], Some("points: a b\nopens: {a}, {b}\n"))),
        2
    );
    assert_eq!(code(&ordtop(&["classify", "/nonexistent/file"], None)), 2);
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ordtop"));
    let o = cmd
        .args(["audit", "--list"])
        .env("ORDTOP_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_expectations() {
    let base = [
        "search",
        "--kind",
        "ordered_space",
        "--require",
        "c1,c2,c4,semi_qospace",
        "--forbid",
        "c3",
        "--n",
        "3",
    ];
    assert_eq!(code(&ordtop(&[&base[..], &["--expect", "none"]].concat(), None)), 0);
    assert_eq!(code(&ordtop(&[&base[..], &["--expect", "witness"]].concat(), None)), 1);
    let hit = ordtop(
        &[
            "search",
            "--kind",
            "lattice",
            "--forbid",
            "distributive",
            "--n",
            "5",
            "--json",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&hit)).unwrap();
    assert_eq!(v["witness"]["size"], 5);
    assert_eq!(
        code(&ordtop(&["search", "--kind", "poset", "--require", "bogus"], None)),
        2
    );
    assert!(stdout(&ordtop(&["search", "--kind", "lattice", "--list-flags"], None)).contains("distributive"));
}

#[test]
fn gallery_check() {
    let o = ordtop(&["gallery", "all", "--check"], None);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&ordtop(&["gallery", "nowhere"], None)), 2);
    let dir = std::env::temp_dir().join(format!("ordtop-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("m3.golden"), "stale\n").unwrap();
    let stale = ordtop(
        &["gallery", "m3", "--check", "--golden-dir", dir.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&stale), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
