use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcryst"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 5] = [
        (
            &["eval", "--family", "vb", "--n", "3", "r1 r2"],
            "eval_vb3_r1r2.json",
        ),
        (&["bieberbach", "--n", "2"], "bieberbach_n2.json"),
        (
            &["relcheck", "--family", "vt", "--n", "4", "--arrow", "5"],
            "relcheck_vt4_arrow5.json",
        ),
        (
            &["oracle", "kernel", "--family", "kb3"],
            "oracle_kernel_kb3.json",
        ),
        (
            &["order", "--family", "vt", "--n", "3", "s1"],
            "order_vt3_s1.json",
        ),
    ];
    for (args, file) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert_eq!(
            String::from_utf8(out.stdout).unwrap(),
            golden(file),
            "{args:?}"
        );
    }
}

#[test]
fn golden_values() {
    assert_eq!(
        stdout_json(&["eval", "--family", "vb", "--n", "3", "r1 r2"])["order"],
        3
    );
    let b = stdout_json(&["bieberbach", "--n", "2", "--json"]);
    assert_eq!(
        (
            b["betti1"].clone(),
            b["orientable"].clone(),
            b["kahler"].clone()
        ),
        (1.into(), false.into(), false.into())
    );
    assert_eq!(
        stdout_json(&["relcheck", "--family", "vt", "--n", "4", "--arrow", "5"])["trivial"],
        false
    );
}

#[test]
fn every_subcommand_emits_json() {
    let element = r#"{"family":"vb","n":3,"vector":{"1,2":1,"2,1":-1},"perm":[2,1,3]}"#;
    let corpus: Vec<Vec<&str>> = vec![
        vec![
            "eval",
            "--family",
            "plbext",
            "--n",
            "3",
            "a[2,1]^-2 t1 t3",
            "--json",
        ],
        vec!["eval", "--family", "kb3", "d[1,2] r1"],
        vec!["order", element],
        vec!["order", "--family", "vb", "--n", "4", "s1 s2 s3"],
        vec!["conj", "s1", "s2"],
        vec!["conj", "--family", "vt", "s1", "s1 l[1,2]"],
        vec!["normal-form", element],
        vec!["torsion-make", "--n", "5", "--cycle-type", "2,3"],
        vec![
            "torsion-make",
            "--n",
            "4",
            "--cycle-type",
            "2,2",
            "--bound",
            "4",
            "--seed",
            "9",
        ],
        vec!["vc-realize", "--n", "5", "--k", "2"],
        vec!["vc-realize", "--family", "vt", "--n", "4", "--k", "1"],
        vec!["bieberbach", "--n", "3"],
        vec!["relcheck", "--family", "vb", "--n", "3", "--arrow", "1"],
        vec!["crystcheck", "--family", "vt", "--n", "4"],
        vec!["crystcheck", "--family", "kb3"],
        vec!["oracle", "order", "s1 l[1,2]", "--cap", "6"],
        vec!["oracle", "conj", "s1", "s2", "--radius", "1"],
        vec!["oracle", "relations", "--family", "plbext", "--n", "3"],
    ];
    for args in &corpus {
        let v = stdout_json(args);
        assert!(v.is_object(), "{args:?}");
    }
    assert_eq!(stdout_json(&corpus[14])["crystallographic"], false);
    assert_eq!(stdout_json(&corpus[5])["conjugate"], false);
}

#[test]
fn exit_codes() {
    let usage = [
        vec!["eval", "--family", "xx", "r1"],
        vec!["eval", "--n", "3", "q1"],
        vec!["order", r#"{"family":"vb","n":3"#],
        vec!["frobnicate"],
        vec!["relcheck", "--arrow", "many"],
    ];
    for args in &usage {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let domain = [
        vec!["eval", "--family", "vb", "--n", "3", "a[1,2]"],
        vec!["eval", "--n", "3", "s3"],
        vec!["vc-realize", "--family", "vt", "--n", "3", "--k", "2"],
        vec!["vc-realize", "--n", "4", "--k", "2"],
        vec!["normal-form", "--family", "vt", "s1"],
        vec!["torsion-make", "--n", "3", "--cycle-type", "2,2"],
        vec!["oracle", "conj", "--n", "6", "s1", "s2", "--radius", "4"],
    ];
    for args in &domain {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "torsion-make",
        "--n",
        "5",
        "--cycle-type",
        "5",
        "--bound",
        "3",
        "--seed",
        "4",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
