use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlattice")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["ok"], true);
    v["result"].clone()
}

fn failure(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["ok"], false);
    v["error"].clone()
}

#[test]
fn lub_of_non_adjacent_generators_is_infinity() {
    let out = run(&["--ctx", "path3", "lub", r#"[["a",1]]"#, r#"[["c",1]]"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"ok":true,"result":"infinity"}"#);
    assert_eq!(ok(&["--ctx", "path3", "lub", r#"[["a",1]]"#, r#"[["b",1]]"#]), json!([["a", 1], ["b", 1]]));
}

#[test]
fn free_word_is_already_normal() {
    let word = r#"[["a",1],["b",1],["a",-1]]"#;
    let result = ok(&["--ctx", "free2", "nf", word]);
    assert_eq!(result, json!([["a", 1], ["b", 1], ["a", -1]]));
    assert_eq!(ok(&["--ctx", "free2", "len", word]), json!(3));
}

#[test]
fn normal_form_round_trips() {
    let cases = [
        ("path3", r#"[["b",1],["a",2],["c",-1],["b",-1]]"#),
        ("square4", r#"[["c",1],["a",1],["d",1],["b",1],["a",-1]]"#),
        ("b3", r#"[["B3","ts"],["B3",{"num":"s","den":"t"}],["B3","t"]]"#),
        ("b4", r#"[["B4","us"],["B4",{"num":"","den":"t"}]]"#),
    ];
    for (ctx, word) in cases {
        let first = ok(&["--ctx", ctx, "nf", word]);
        let text = first.to_string();
        let second = ok(&["--ctx", ctx, "nf", &text]);
        assert_eq!(first, second, "{ctx}: nf not idempotent");
        assert_eq!(ok(&["--ctx", ctx, "eq", word, &text]), json!(true), "{ctx}");
    }
}

#[test]
fn eq_is_an_equivalence_on_samples() {
    let words = [
        r#"[["a",1],["b",1]]"#,
        r#"[["b",1],["a",1]]"#,
        r#"[["a",1],["c",1],["b",1]]"#,
        r#"[["c",1],["b",1],["a",1]]"#,
        r#"[["a",2],["a",-1],["b",1]]"#,
    ];
    let eq = |x: &str, y: &str| ok(&["--ctx", "path3", "eq", x, y]) == json!(true);
    for x in words {
        assert!(eq(x, x));
        for y in words {
            assert_eq!(eq(x, y), eq(y, x));
            for z in words {
                if eq(x, y) && eq(y, z) {
                    assert!(eq(x, z));
                }
            }
        }
    }
    assert!(eq(words[0], words[4]));
    assert!(!eq(words[2], words[3]));
}

#[test]
fn outputs_are_byte_stable() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["--ctx", "square4", "nf", r#"[["d",1],["b",1],["c",1],["a",1]]"#],
        vec!["--ctx", "b3", "fraction", r#"[["B3",{"num":"sts","den":"ts"}]]"#],
        vec!["--ctx", "path3", "phi", r#"[["a",1],["b",1],["a",1]]"#],
        vec!["--ctx", "path3", "ball", "--max-degree", "3"],
        vec!["--ctx", "b3", "op", r#"[["B3","s"]]"#, "--max-degree", "3"],
        vec!["--ctx", "path3", "defect", "--threads", "1"],
    ];
    for args in cases {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = run(&["--ctx", "square4", "cov-check", r#"[["a",1]]"#, r#"[["c",1]]"#, "--threads", "1"]);
    let many = run(&["--ctx", "square4", "cov-check", r#"[["a",1]]"#, r#"[["c",1]]"#, "--threads", "3"]);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn fraction_and_rgcd() {
    assert_eq!(
        ok(&["--ctx", "free2", "fraction", r#"[["a",1],["b",-1]]"#]),
        json!({"a": [["a", 1]], "b": [["b", 1]]})
    );
    assert_eq!(ok(&["--ctx", "free2", "rgcd", r#"[["a",1],["b",1]]"#, r#"[["b",1]]"#]), json!([["b", 1]]));
    let err = failure(&["--ctx", "free2", "fraction", r#"[["b",-1],["a",1]]"#], 1);
    assert_eq!(err["kind"], "NotInPPInv");
    let err = failure(&["--ctx", "free2", "rgcd", r#"[["a",-1]]"#, r#"[["b",1]]"#], 1);
    assert_eq!(err["kind"], "NotPositive");
}

#[test]
fn exit_codes() {
    assert_eq!(failure(&["--ctx", "free2", "nf", "not json"], 2)["kind"], "Parse");
    assert_eq!(failure(&["--ctx", "free2", "nf", r#"[["z",1]]"#], 2)["kind"], "UnknownVertex");
    assert_eq!(failure(&["--ctx", "free2", "nf", r#"[["a",0]]"#], 2)["kind"], "TrivialSyllable");
    assert_eq!(failure(&["--ctx", "/nonexistent/ctx.json", "nf", "[]"], 2)["kind"], "Io");
    assert_eq!(failure(&["--ctx", "free2", "frobnicate"], 2)["kind"], "Usage");
    let out = run(&["--ctx", "free2", "relcheck", "--family", "one-dim"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "RelationViolation");
    assert_eq!(v["result"]["passed"], false);
    assert_eq!(ok(&["--ctx", "b3", "relcheck", "--family", "one-dim"])["passed"], true);
}

#[test]
fn context_files_and_io_flags() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = dir.path().join("ctx.json");
    std::fs::write(
        &ctx,
        r#"{"vertices":[{"name":"a","factor":"Z"},{"name":"v","factor":{"artin":{"generators":["s","t"],"m":[[1,4],[4,1]]}}}],"edges":[["a","v"]]}"#,
    )
    .unwrap();
    let ctx = ctx.to_str().unwrap();
    assert_eq!(ok(&["--ctx", ctx, "lub", r#"[["v","s"]]"#, r#"[["v","t"]]"#]), json!([["v", "stst"]]));
    assert_eq!(ok(&["--ctx", ctx, "nf", r#"[["v","s"],["a",1]]"#]), json!([["a", 1], ["v", "s"]]));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vertices":[{"name":"a","factor":"Z"}],"edges":[["a","a"]]}"#).unwrap();
    assert_eq!(failure(&["--ctx", bad.to_str().unwrap(), "nf", "[]"], 2)["kind"], "InvalidGraph");
    let affine = dir.path().join("affine.json");
    std::fs::write(
        &affine,
        r#"{"vertices":[{"name":"v","factor":{"artin":{"generators":["s","t","u"],"m":[[1,3,3],[3,1,3],[3,3,1]]}}}],"edges":[]}"#,
    )
    .unwrap();
    assert_eq!(failure(&["--ctx", affine.to_str().unwrap(), "nf", "[]"], 2)["kind"], "NotFiniteType");

    let input = dir.path().join("words.txt");
    std::fs::write(&input, "[[\"a\",1],[\"b\",1]]\n[[\"b\",1],[\"a\",1]]\n").unwrap();
    let output = dir.path().join("out.json");
    let out = run(&["--ctx", "path3", "eq", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(written, json!({"ok": true, "result": true}));
}

#[test]
fn norm_curve_csv() {
    let out = run(&["--ctx", "b3", "norm-curve", "--weights", r#"{"s":0.5,"t":0.5}"#, "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,ball_size,norm_estimate"));
    let rows: Vec<(usize, usize, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), [1, 2, 3, 4, 5, 6]);
    assert_eq!(rows.iter().map(|r| r.1).collect::<Vec<_>>(), [3, 7, 14, 26, 46, 79]);
    assert!(rows.windows(2).all(|w| w[1].2 >= w[0].2 - 1e-9));
    assert!((rows[5].2 - (std::f64::consts::PI / 10.0).cos()).abs() < 1e-6);

    assert_eq!(failure(&["--ctx", "b3", "norm-curve", "--weights", r#"{"s":-1}"#], 1)["kind"], "NegativeWeight");
    assert_eq!(failure(&["--ctx", "b3", "norm-curve", "--weights", "[1,2"], 2)["kind"], "Parse");
}

#[test]
fn ball_and_verify() {
    assert_eq!(ok(&["--ctx", "path3", "ball", "--max-degree", "2"])["size"], 11);
    assert_eq!(failure(&["--ctx", "free2", "ball", "--max-degree", "20", "--max-ball", "100"], 1)["kind"], "BallTooLarge");
    let report = ok(&["--ctx", "b3", "verify", "--samples", "20", "--seed", "7"]);
    assert_eq!(report["passed"], true);
    let report = ok(&["--ctx", "path3", "verify", "--samples", "20", "--max-degree", "2"]);
    assert_eq!(report["passed"], true);
}
