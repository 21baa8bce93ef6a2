use std::process::{Command, Output};

fn cosym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosym"))
        .args(args)
        .env_remove("COSYM_CORPUS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    serde_json::from_slice(&cosym(&a).stdout).expect("valid json")
}

#[test]
fn sphere_on_r7_pair() {
    let o = cosym(&["sphere", "r7_pair.frame"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("V = 6*l1^4 - 6*l1^2*l2^2 + 6*l2^4"));
}

#[test]
fn taut_and_round_on_t7_pairs() {
    let v = json(&["taut", "t7_pair1_fixed"]);
    assert_eq!(v["values"]["taut"], "true");
    assert_eq!(v["values"]["round"], "false");
    let v = json(&["round", "t7_pair2"]);
    assert_eq!(v["values"]["round"], "true");
    assert_eq!(v["values"]["taut"], "false");
}

#[test]
fn report_header_and_determinism() {
    let a = json(&["ntensors", "lie7"]);
    let b = json(&["ntensors", "lie7"]);
    assert_eq!(a["schema"], "cosym-report/1");
    assert_eq!(a["convention"], "d-no-half/1");
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timestamp");
        v
    };
    assert_eq!(strip(a), strip(b));
}

#[test]
fn json_file_and_corpus_dir() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&cosym(&["verify", "t3", "--json", "-"]));
    assert!(text.starts_with('{'));
    let frame = "name mine\ndim 3\nbracket e1 e2 = e3\nform eta1:1 = de1\nform Omega1:2 = de2^de3\n";
    std::fs::write(dir.path().join("mine.frame"), frame).unwrap();
    let out = dir.path().join("r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_cosym"))
        .args(["verify", "mine.frame", "--json", out.to_str().unwrap()])
        .env("COSYM_CORPUS", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["inputs"][0], "mine");
}

#[test]
fn error_exit_codes() {
    assert_eq!(cosym(&["frobnicate", "t3"]).status.code(), Some(2));
    assert_eq!(cosym(&["verify", "t3", "--max-depth", "x"]).status.code(), Some(2));
    assert_eq!(cosym(&["verify", "no_such_thing"]).status.code(), Some(3));
    assert_eq!(cosym(&["verify", "t3", "--ring", "lambda:1"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.frame");
    std::fs::write(&bad, "dim 3\nform a:1 = 1/0*de1\n").unwrap();
    let o = cosym(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column"));

    // 4-dimensional frame where a (2n+1)-dimensional one is required
    assert_eq!(cosym(&["verify", "hyperkahler_r4"]).status.code(), Some(3));
    let even = dir.path().join("even.frame");
    std::fs::write(&even, "dim 4\nform eta1:1 = de1\nform Omega1:2 = de2^de3\n").unwrap();
    assert_eq!(cosym(&["verify", even.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn lambda_at_a_point() {
    let v = json(&["lambda", "lie7", "--point", "0,0,1"]);
    assert_eq!(v["values"]["xi_lambda"], "xi3");
    assert_eq!(v["values"]["eta_lambda"], "dxi3");
}

#[test]
fn stdin_input() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_cosym"))
        .args(["classify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"dim 3\nform eta1:1 = de1\nform Omega1:2 = de2^de3\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn examples_table() {
    let o = cosym(&["examples"]);
    let out = stdout(&o);
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 20, "{out}");
    // The printed first T7 pair is not taut and the factor-2 product identity
    // does not hold; both rows fail and nothing else does.
    assert_eq!(fails.len(), 2, "{out}");
    assert!(fails.iter().any(|l| l.contains("t7_pair1")), "{out}");
    assert!(fails.iter().any(|l| l.contains("2 dt")), "{out}");
    assert_eq!(o.status.code(), Some(1));
}
