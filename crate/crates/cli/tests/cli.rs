use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relhom")).args(args).output().expect("binary runs")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("structured output is JSON");
    (out.status.code().unwrap(), v)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn running_example_dowker() {
    let (code, v) = structured(&["dowker", &fixture("example_running.csv")]);
    assert_eq!(code, 0);
    assert_eq!(v["source_homology"]["betti"], serde_json::json!([1, 1]));
    assert_eq!(v["target_homology"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn full_relation_sequence_is_exact() {
    let (code, v) = structured(&["les", "--relation", &fixture("full2x2.csv")]);
    assert_eq!(code, 0);
    assert_eq!(v["sequence"]["exact"], Value::Bool(true));
    // trailing zero Betti numbers are trimmed, so (1, 0) reads as [1]
    assert_eq!(v["product_homology"]["betti"], serde_json::json!([1]));
}

#[test]
fn empty_category_is_an_input_error() {
    let out = run(&["cat", &fixture("empty.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("empty.json:1:"), "{}", stderr(&out));
}

#[test]
fn diagnostics_carry_line_and_column() {
    for (args, at) in [
        (vec!["dowker", "bad_entry.csv"], "bad_entry.csv:3:5:"),
        (vec!["dowker", "ragged.csv"], "ragged.csv:2:1:"),
        (vec!["cat", "malformed.json"], "malformed.json:3:3:"),
        (vec!["cat", "unknown_object.json"], "unknown_object.json:3:56:"),
        (vec!["cat", "missing_composite.json"], "missing_composite.json:5:14:"),
        (vec!["nerve", "cover_orphan.txt"], "cover_orphan.txt:1:1:"),
    ] {
        let file = fixture(args[1]);
        let out = run(&[args[0], &file]);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr(&out).contains(at), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn exit_codes_follow_verdicts() {
    let ok: &[&[&str]] = &[
        &["galois", "example_running.csv"],
        &["join", "--relation", "example_running.csv"],
        &["product", "--relation", "full2x2.csv"],
        &["ss", "--relation", "example_running.csv"],
        &["ss", "--augmented", "--relation", "example_running.csv"],
        &["cosheaf", "--relation", "example_running.csv"],
        &["nerve", "cover_good.txt"],
        &["nerve", "cover_circle.txt"],
        &["cat", "interval.json"],
        &["cat", "hollow_triangle.json"],
        &["prof", "arrow_profunctor.json"],
        &["prof", "--relation", "example_running.csv"],
    ];
    for args in ok {
        let resolved: Vec<String> =
            args.iter().map(|a| if a.contains('.') { fixture(a) } else { a.to_string() }).collect();
        let refs: Vec<&str> = resolved.iter().map(String::as_str).collect();
        let out = run(&refs);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(run(&["prof", &fixture("bad_action.json")]).status.code(), Some(2));
    assert_eq!(run(&["--coeff", "Zp:4", "dowker"]).status.code(), Some(2));
}

#[test]
fn generators_define_a_complex_relation() {
    let (code, v) = structured(&[
        "join",
        "--source",
        &fixture("square.txt"),
        "--target",
        &fixture("edge.txt"),
        "--generators",
        &fixture("square_edge.gen"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], Value::Bool(true));
    let out = run(&["join", "--source", &fixture("square.txt"), "--target", &fixture("edge.txt"), "--generators", &fixture("bad.gen")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.gen:1:1:"));
}

#[test]
fn looped_category_needs_a_degree_bound() {
    assert_eq!(run(&["cat", &fixture("z2.json")]).status.code(), Some(2));
    let (code, v) = structured(&["--max-degree", "3", "cat", &fixture("z2.json")]);
    assert_eq!(code, 0);
    let degrees = v["homology"]["degrees"].as_array().unwrap();
    let torsion_at = |d: i64| degrees.iter().find(|x| x["degree"] == d).map(|x| x["torsion"].clone());
    assert_eq!(torsion_at(1), Some(serde_json::json!(["2"])));
}

#[test]
fn structured_output_is_deterministic() {
    for cmd in ["dowker", "galois", "join", "product", "les", "ss", "cosheaf", "prof"] {
        let args = ["--format", "structured", "--seed", "17", cmd];
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        assert!(!a.stdout.is_empty(), "{cmd}");
    }
}

#[test]
fn coefficient_choice_is_reported() {
    let (_, v) = structured(&["--coeff", "Zp:3", "dowker", &fixture("example_running.csv")]);
    assert_eq!(v["coefficients"], Value::String("Zp:3".into()));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("relhom-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(&["--format", "structured", "--out", path.to_str().unwrap(), "dowker", &fixture("example_running.csv")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], Value::String("dowker".into()));
    std::fs::remove_dir_all(&dir).unwrap();
}
