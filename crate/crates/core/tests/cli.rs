use std::io::Write;
use std::process::{Command, Output};

use coherent_realize::algebra::{catalog, ModelFile};

fn cohere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohere")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn realize_spin_one() {
    let out = cohere(&["realize", "--model", "su2", "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("J- : P = 2 z1, Q1 = -z1^2"), "{text}");
    assert!(text.contains("J+ : P = 0, Q1 = 1"));
}

#[test]
fn kernel_evaluation() {
    let out = cohere(&["kernel", "--model", "heisenberg", "--trunc", "10", "--eval", "0.3,0", "--eval", "0.5,0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let value: f64 =
        text.lines().find_map(|l| l.strip_prefix("value ")).and_then(|v| v.trim().parse().ok()).expect("value line");
    let exact: f64 = (0..=10)
        .scan(1.0, |t, n| {
            let term = *t;
            *t *= 0.15 / (n as f64 + 1.0);
            Some(term)
        })
        .sum();
    assert!((value - exact).abs() < 1e-10);
}

#[test]
fn failing_degree_check_exits_one() {
    let out = cohere(&["check", "--model", "su3", "--p", "1", "--q", "1", "--suite", "homomorphism,degree,parseval"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains("homomorphism")));
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("degree")));
    assert!(text.lines().any(|l| l.starts_with("SKIPPED") && l.contains("parseval")));
    assert!(text.contains("status fail"));
}

#[test]
fn passing_suite_exits_zero() {
    let out = cohere(&["check", "--model", "su2", "--j", "1/2", "--suite", "homomorphism,degree,parseval"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("status pass"));
}

#[test]
fn usage_errors_exit_two() {
    let out = cohere(&["check", "--model", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
    assert_eq!(cohere(&["realize", "--model", "su2", "--j", "-1"]).status.code(), Some(2));
    assert_eq!(cohere(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cohere(&["check", "--model", "su2", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn model_files() {
    let mut broken = tempfile::NamedTempFile::new().unwrap();
    write!(broken, "{{\"dim\": 3, \"basis_labels\": [").unwrap();
    let out = cohere(&["realize", "--model-file", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let m = catalog::su2::<f64>(1.0).unwrap();
    let mut good = tempfile::NamedTempFile::new().unwrap();
    write!(good, "{}", ModelFile::from_model(&m).to_json()).unwrap();
    let out = cohere(&["realize", "--model-file", good.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("J- : P = 2 z1, Q1 = -z1^2"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["check", "--model", "su11", "--k", "1", "--trunc", "12", "--json"];
    let a = cohere(&args);
    let b = cohere(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["model"], "su11");
    assert_eq!(v["status"], "pass");
    assert!(v["checks"].as_array().unwrap().len() >= 10);
}

#[test]
fn skipped_checks_are_marked() {
    let out = cohere(&["check", "--model", "su3", "--p", "1", "--q", "1", "--suite", "reproducing,adjoint", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "skipped");
    }
}
