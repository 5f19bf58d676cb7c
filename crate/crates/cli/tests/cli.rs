use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freeknot"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decide_reports_slice_with_certificate() {
    let out = run(&["decide", "a b a b"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "slice");
    assert_eq!(v["odd"], true);
    assert_eq!(
        v["certificate"],
        json!([{ "chords": ["a", "b"], "correspondence": "parallel" }])
    );
}

#[test]
fn decide_empty_diagram() {
    let v = json_of(&run(&["decide", ""], None));
    assert_eq!(v["verdict"], "slice");
    assert_eq!(v["certificate"], json!([]));
}

#[test]
fn decide_three_star() {
    let v = json_of(&run(&["decide", "a b c a b c"], None));
    assert_eq!(v["odd"], false);
    assert_eq!(v["verdict"], "slice");
}

#[test]
fn decide_reads_stdin_and_files() {
    let v = json_of(&run(&["decide"], Some("a a\n")));
    assert_eq!(v["certificate"], json!([{ "chord": "a" }]));

    let path = std::env::temp_dir().join(format!("freeknot-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "x y x y").unwrap();
    let arg = format!("@{}", path.display());
    let v = json_of(&run(&["decide", &arg], None));
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["verdict"], "slice");
}

#[test]
fn malformed_code_exits_one() {
    let out = run(&["decide", "a b a"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(json_of(&out)["error"].as_str().unwrap().contains('b'));
    assert_eq!(run(&["decide", "--bogus"], None).status.code(), Some(1));
}

#[test]
fn odd_budget_exhaustion_exits_three() {
    let out = run(
        &[
            "decide",
            "a b c d a b c d",
            "--budget",
            "1",
            "--no-singleton-pruning",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(json_of(&out)["error"].is_string());
}

#[test]
fn check_accepts_and_rejects() {
    let good = r#"[{"chords":["a","b"],"correspondence":"parallel"}]"#;
    let out = run(&["check", "a b a b", good], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out), json!({ "valid": true }));

    let out = run(
        &["check", "a b a b", r#"[{"chord":"a"},{"chord":"b"}]"#],
        None,
    );
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["valid"], false);

    let out = run(&["check", "a b a b", r#"[{"chord":"a"}]"#], None);
    assert_eq!(out.status.code(), Some(4));

    let out = run(
        &["check", "a b a b", r#"[{"chord":"z"},{"chord":"b"}]"#],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_takes_decide_output_on_stdin() {
    let verdict = run(&["decide", "a b c a c b d d"], None);
    let out = run(
        &["check", "a b c a c b d d", "-"],
        Some(std::str::from_utf8(&verdict.stdout).unwrap()),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parity_of_star() {
    let code = json_of(&run(&["gen", "star", "4"], None))["code"].clone();
    let v = json_of(&run(&["parity", code.as_str().unwrap()], None));
    assert_eq!(v["odd_diagram"], true);
    assert_eq!(v["parity"]["c0"], "odd");

    let v = json_of(&run(&["parity", "a b a b c c"], None));
    assert_eq!(v["parity"], json!({ "a": "odd", "b": "odd", "c": "even" }));
    assert_eq!(v["odd_diagram"], false);
}

#[test]
fn sum_mirror_pipeline() {
    let gen = run(&["gen", "sum-mirror", "a b c a b c", "--certificate"], None);
    let doc = std::str::from_utf8(&gen.stdout).unwrap().to_string();
    let v: Value = serde_json::from_str(&doc).unwrap();
    let code = v["code"].as_str().unwrap();
    assert_eq!(json_of(&run(&["decide", code], None))["verdict"], "slice");
    assert_eq!(
        run(&["check", code, "-"], Some(&doc)).status.code(),
        Some(0)
    );
}

#[test]
fn canon_is_rotation_invariant() {
    let a = json_of(&run(&["canon", "a b c a c b"], None));
    let b = json_of(&run(&["canon", "b c a c b a"], None));
    assert_eq!(a, b);
}

#[test]
fn walk_replays() {
    let walk = run(
        &["moves", "walk", "a b a b", "--steps", "12", "--seed", "7"],
        None,
    );
    assert_eq!(walk.status.code(), Some(0));
    let script = std::str::from_utf8(&walk.stdout).unwrap();
    let out = run(&["moves", "replay", "-"], Some(script));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["moves"], 12);

    let mut tampered: Value = serde_json::from_str(script).unwrap();
    tampered["end"] = json!("q q r r s s t t u u v v w w");
    let out = run(&["moves", "replay", "-"], Some(&tampered.to_string()));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sites_listing() {
    let v = json_of(&run(&["moves", "sites", "a b b a"], None));
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn text_format_draws_diagrams() {
    let out = run(&["--format", "text", "decide", "a b a b"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verdict: slice"));
    assert!(text.contains("derived:"));
}

#[test]
fn gen_output_pipes_into_decide_and_parity() {
    for args in [
        vec!["gen", "star", "5"],
        vec!["gen", "random", "7", "3"],
        vec!["gen", "sum-mirror", "a b a c b c", "--certificate"],
    ] {
        let gen = run(&args, None);
        let doc = std::str::from_utf8(&gen.stdout).unwrap();
        for cmd in ["decide", "parity", "canon"] {
            let out = run(&[cmd], Some(doc));
            assert_ne!(out.status.code(), Some(1), "{args:?} | {cmd}");
            json_of(&out);
        }
    }
}
