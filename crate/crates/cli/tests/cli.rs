use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lie2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lie2"))
        .args(args)
        .env_remove("LIE2_TABLE_DIR")
        .output()
        .expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn shipped_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/tables"))
}

#[test]
fn build_emits_structure_constants() {
    for (name, dim) in [("g2", 14), ("c2", 10), ("a2", 8), ("a1a1", 6)] {
        let o = lie2(&["build", name]);
        assert_eq!(o.status.code(), Some(0));
        let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(j["dim"], dim, "{name}");
    }
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g2.json");
    let o = lie2(&["build", "g2", "--emit", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&p)["dim"], 14);

    let o = lie2(&["build", "x9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("x9"));
}

#[test]
fn full_verification_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.json");
    let o = lie2(&["verify", "--report", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let j = read_json(&p);
    let s = &j["summary"];
    assert_eq!(s["rows_mismatch"], 0);
    assert_eq!(s["rows_total"], 264);
    let rows = j["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 264);
    let tally = |label: &str| rows.iter().filter(|r| r["verdict"]["verdict"] == label).count();
    assert_eq!(s["rows_match"], tally("match"));
    assert_eq!(s["rows_inconclusive"], tally("inconclusive"));
    assert_eq!(j["seed"], 0);
    let ids: Vec<&str> = j["known_deviations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"rho_raising"));
    assert!(ids.iter().any(|i| i.starts_with("erratum:")));
}

#[test]
fn reports_are_reproducible_across_runs_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: &str| {
        let p = dir.path().join(name);
        let o = lie2(&[
            "verify", "--samples", "1", "--seed", "7", "--jobs", jobs, "--report", p.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    let a = run("a.json", "1");
    let b = run("b.json", "1");
    let c = run("c.json", "4");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn table_selection_by_glob_and_env() {
    let glob = format!("{}/0[12]_*.tbl", shipped_dir().display());
    let o = lie2(&["verify", "--tables", &glob]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rows: 24 total"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(shipped_dir().join("07_a2_dim1_2.tbl"), dir.path().join("07.tbl")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lie2"))
        .args(["verify"])
        .env("LIE2_TABLE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rows: 13 total"), "{}", stdout(&o));
}

#[test]
fn corrupted_table_is_a_parse_error_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.tbl");
    std::fs::write(
        &p,
        "# Table 1: broken\n# rows: 1\n1 | C2 | X(1,0)+*X(0,1) | | | 1 | nilpotent | n_1_1 |\n",
    )
    .unwrap();
    let o = lie2(&["verify", "--tables", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("bad.tbl:3:"), "{err}");

    std::fs::write(&p, "# Table 1: short\n# rows: 2\n1 | C2 | X(1,0) | | | 1 | nilpotent | n_1_1 |\n").unwrap();
    let o = lie2(&["verify", "--tables", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("declares 2 rows"));
}

#[test]
fn wrong_claim_exits_with_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("wrong.tbl");
    std::fs::write(
        &p,
        "# Table 3: wrong claim\n# rows: 1\n3 | C2 | X(0,1); X(1,1); X(1,2) | | | 3 | nilpotent | 3n_1_1 |\n",
    )
    .unwrap();
    let o = lie2(&["verify", "--tables", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("03.01"), "{}", stdout(&o));
}

#[test]
fn identify_examples() {
    let o = lie2(&["identify", "--algebra", "c2", "--span", "X(0,1); X(1,1); X(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim 3, nilpotent") && s.contains("n_3_1"), "{s}");

    let o = lie2(&["identify", "--algebra", "g2", "--span", "X(1,0); X(0,1)", "--json"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["closed"], false);
    assert_eq!(j["span_dim"], 2);
    assert_eq!(j["closure_dim"], 6);

    let o = lie2(&["identify", "--algebra", "a1a1", "--span", "Ha; Hb"]);
    let s = stdout(&o);
    assert!(s.contains("dim 2") && s.contains("2n_1_1"), "{s}");

    let o = lie2(&["identify", "--algebra", "c2", "--span", "X(5,5)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_examples() {
    let o = lie2(&["decompose", "--algebra", "c2", "--sl2", "T(1,0); X(1,2); Y(1,2)"]);
    assert_eq!(stdout(&o).trim(), "V(2) + 2V(1) + 3V(0)");
    let o = lie2(&[
        "decompose", "--algebra", "c2", "--sl2", "T(1,0); X(1,2); Y(1,2)", "--space", "T(1,0); X(1,2); Y(1,2)",
    ]);
    assert_eq!(stdout(&o).trim(), "V(2)");
    let o = lie2(&["decompose", "--algebra", "a2", "--sl2", "Ha+Hb; X(1,1); Y(1,1)", "--json"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let total: u64 = j["highest_weights"].as_array().unwrap().iter().map(|n| n.as_u64().unwrap() + 1).sum();
    assert_eq!(total, 8);

    let o = lie2(&["decompose", "--algebra", "c2", "--sl2", "Ha; X(1,2); Y(1,2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("[h, e] != 2e"), "{}", stderr(&o));
}

#[test]
fn catalog_and_fingerprint() {
    let o = lie2(&["catalog", "list"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("s_7_3")));
    let o = lie2(&["catalog", "show", "n_4_1"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["dim"], 4);
    assert_eq!(lie2(&["catalog", "show", "nope"]).status.code(), Some(2));

    let o = lie2(&["fingerprint", "--entry", "s_3_1", "--param", "A=1/2"]);
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["dim"], 3);
    let o = lie2(&["fingerprint", "--algebra", "g2", "--span", "X(1,0); X(0,1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lie2(&["fingerprint"]).status.code(), Some(2));
}
