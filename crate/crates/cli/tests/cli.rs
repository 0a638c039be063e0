use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypershell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn hvec_all_agrees() {
    let text = stdout(&["hvec", "3", "5"]);
    assert_eq!(text.matches("(0, 4, 6, 1)").count(), 3);
    assert!(text.contains("agreement yes"));
    assert!(text.contains("(closed)"));
}

#[test]
fn hvec_json_schema() {
    let v = json(&["hvec", "3", "5", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["k"], 3);
    assert_eq!(v["half_open"], true);
    assert_eq!(v["volume"], 11);
    assert_eq!(v["agreement"], true);
    for m in ["stats", "ehrhart", "shelling"] {
        assert_eq!(v["methods"][m], serde_json::json!([0, 4, 6, 1]), "{m}");
    }
    assert!(v["methods"]["formula_closed"].is_array());
}

#[test]
fn hvec_single_method() {
    assert!(stdout(&["hvec", "1", "4", "--method", "stats"]).contains("(1, 0, 0)"));
    assert!(stdout(&["hvec", "2", "5", "--method", "formula"]).contains("closed"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["hvec", "5", "4"][..],
        &["hvec", "0", "4"],
        &["count", "3", "3", "1"],
        &["triangulate", "2", "4", "--graph", "x"],
        &["frobnicate"],
        &["hvec", "2", "30"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "2", "3", "2"]).trim(), "3");
    assert_eq!(stdout(&["count", "2", "3", "0"]).trim(), "0");
    assert_eq!(stdout(&["count", "2", "3", "2", "--closed"]).trim(), "6");
}

#[test]
fn triangulate_dot() {
    let dot = stdout(&["triangulate", "3", "5", "--format", "dot", "--graph", "q"]);
    assert!(dot.starts_with("digraph"));
    let nodes = dot
        .lines()
        .filter(|l| l.contains("[label=") && !l.contains("->"))
        .count();
    assert_eq!(nodes, 11);
    for q in ["2413", "3142", "3421", "4312", "4321"] {
        assert!(dot.contains(&format!("Q={q}")), "{q}");
    }
    for g in ["p", "r", "gamma", "s"] {
        assert!(
            stdout(&["triangulate", "3", "5", "--format", "dot", "--graph", g])
                .starts_with("digraph")
        );
    }
}

#[test]
fn triangulate_single_simplex() {
    let v = json(&["triangulate", "1", "3"]);
    assert_eq!(v["simplices"].as_array().unwrap().len(), 1);
    assert!(v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn triangulate_json_round_trips() {
    let text = stdout(&["triangulate", "2", "4"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);

    let simplices = v["simplices"].as_array().unwrap();
    assert_eq!(simplices.len(), 4);
    let mut total = 0;
    for s in simplices {
        for key in [
            "vertices",
            "label_perm",
            "avatars",
            "block",
            "shelling_number",
            "boundary_removed",
        ] {
            assert!(s.get(key).is_some(), "missing {key}");
        }
        assert_eq!(s["vertices"].as_array().unwrap().len(), 4);
        total += s["shelling_number"].as_u64().unwrap();
    }
    // Δ'_{2,4} has h* = (0, 3, 1): shelling numbers 1, 1, 1, 2
    assert_eq!(total, 5);
    for e in v["edges"].as_array().unwrap() {
        for key in ["from", "to", "label", "type", "oriented"] {
            assert!(e.get(key).is_some(), "missing {key}");
        }
        assert!(e["label"].as_str().unwrap().starts_with("e_"));
    }
}

#[test]
fn verify_trivial_bound() {
    let text = stdout(&["verify", "--max-n", "2"]);
    assert!(text.lines().any(|l| l.starts_with("PASS k=1 n=2")));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_default_triangulation_bound() {
    let text = stdout(&["verify", "--max-n", "7"]);
    assert!(!text.contains("FAIL"));
    assert!(text.contains("PASS k=3 n=7 shelling-seeded"));
    // exhaustive checks stop at n = 6 unless asked for
    assert!(text.contains("SKIP k=3 n=7 face-sources"));
}

#[test]
fn verify_reports_skips_and_sorts() {
    let text = stdout(&["verify", "--max-n", "4", "--seeds", "3", "--r", "1"]);
    let keys: Vec<(usize, usize, String)> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("SKIP"))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            let num = |s: &str| s.split('=').nth(1).unwrap().parse::<usize>().unwrap();
            (num(f[1]), num(f[2]), f[3].to_string())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.iter().any(|(_, _, name)| name == "foata-han-r1"));
}

#[test]
fn verify_json() {
    let v = json(&["verify", "--max-n", "3", "--format", "json"]);
    let reports = v.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn injected_fault_fails_with_witness() {
    let out = run(&[
        "verify",
        "--max-n",
        "4",
        "--inject-fault",
        "flip-orientation",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("first failure"));
}

#[test]
fn identity_passes() {
    for r in ["0", "1"] {
        assert!(stdout(&["identity", "--r", r]).starts_with("PASS"));
    }
    let text = stdout(&["identity", "--r", "3", "--max-n", "6", "--max-k", "5"]);
    assert!(text.contains("42 coefficients agree"));
}

#[test]
fn joint_csv() {
    let csv = stdout(&["joint", "3"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "exc,des=0,des=1,des=2");
    assert_eq!(rows[1..], ["0,1,0,0", "1,0,3,1", "2,0,1,0"]);
}
