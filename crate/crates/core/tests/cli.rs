use std::path::Path;
use std::process::{Command, Output};

use chernkit::exact_poly::MPoly;
use chernkit::oracle::CheckReport;
use chernkit::universal::UniversalPolys;

const GOLDEN: &str = include_str!("golden/table_max_rank_4.json");

fn chernkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chernkit"))
        .args(args)
        .env_remove("CHERNKIT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn reports(path: &Path) -> Vec<CheckReport> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn formula_outputs() {
    let out = chernkit(&[
        "formula", "--rank", "3", "--index", "2", "--format", "latex",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "c_2 - \\frac{1}{3} c_1^2\n");

    let out = chernkit(&["formula", "--rank", "2", "--index", "1", "--format", "text"]);
    assert_eq!(stdout(&out), "0\n");

    let out = chernkit(&["formula", "--rank", "2", "--index", "2", "--format", "json"]);
    let p: MPoly = serde_json::from_str(&stdout(&out)).unwrap();
    let coeffs: Vec<String> = p
        .graded_terms()
        .iter()
        .map(|(_, c)| c.to_string())
        .collect();
    assert_eq!(coeffs, ["1", "-1/4"]);
}

#[test]
fn universal_json() {
    let out = chernkit(&["universal", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let u: UniversalPolys = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(u.num_roots, 10);
    assert_eq!(u, UniversalPolys::compute(3).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["formula", "--rank", "3", "--index", "4"][..],
        &["formula", "--rank", "7", "--index", "1"],
        &["formula", "--rank", "1", "--index", "1"],
        &["universal", "--rank", "9"],
        &["verify", "--suite", "nonsense"],
        &["verify", "--suite", "toy-rings", "--max-rank", "5"],
        &["table", "--max-rank", "7"],
        &["frobnicate"],
    ] {
        assert_eq!(chernkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn large_rank_needs_the_flag() {
    let out = chernkit(&[
        "formula",
        "--rank",
        "8",
        "--index",
        "2",
        "--allow-large-rank",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "c_2 - 7/16 c_1^2\n");
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let target = blocker.join("table.json");
    let out = chernkit(&[
        "table",
        "--max-rank",
        "2",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_passes_and_is_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = chernkit(&[
        "verify",
        "--suite",
        "all",
        "--seed",
        "7",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines = reports(&path);
    assert!(lines.iter().all(CheckReport::passed));
    let keys: Vec<_> = lines
        .iter()
        .map(|r| (r.identity.clone(), r.rank, r.ring.clone(), r.seed))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);

    let again = dir.path().join("again.jsonl");
    chernkit(&[
        "verify",
        "--suite",
        "all",
        "--seed",
        "7",
        "--out",
        again.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&again).unwrap()
    );
}

#[test]
fn formula_agreement_at_rank_six() {
    let out = chernkit(&["verify", "--suite", "formula-agreement", "--max-rank", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), (2..=6).sum::<usize>());
}

#[test]
fn injected_faults_exit_one() {
    for (suite, fault) in [
        ("phi-roundtrip", "phi"),
        ("toy-rings", "phi"),
        ("formula-agreement", "formula"),
        ("toy-rings", "formula"),
    ] {
        let out = chernkit(&[
            "verify",
            "--suite",
            suite,
            "--max-rank",
            "3",
            "--inject-fault",
            fault,
        ]);
        assert_eq!(out.status.code(), Some(1), "{suite} {fault}");
        let failing: Vec<CheckReport> = stdout(&out)
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .filter(|r: &CheckReport| !r.passed())
            .collect();
        assert!(!failing.is_empty());
        assert!(failing
            .iter()
            .all(|r| r.witness.as_ref().is_some_and(|w| !w.is_zero())));
    }
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_chernkit"))
        .args(["table", "--max-rank", "2"])
        .env("CHERNKIT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("table_max_rank_2.json")).unwrap();
    assert!(text.contains("\"N\": 3"));
}

#[test]
fn table_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let out = chernkit(&["table", "--max-rank", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), GOLDEN);
}

#[test]
fn table_rank_three_contains_reduced_c2() {
    let out = chernkit(&["table", "--max-rank", "3"]);
    let table: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rank3 = &table["ranks"][1];
    assert_eq!(rank3["n"], 3);
    let c2: MPoly = serde_json::from_value(rank3["reduced"][1].clone()).unwrap();
    assert_eq!(
        chernkit::exact_poly::render(&c2, chernkit::exact_poly::Style::Text),
        "c_2 - 1/3 c_1^2"
    );
}
