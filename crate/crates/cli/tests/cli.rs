use std::path::Path;
use std::process::{Command, Output};

use catalan_paths::exact::to_decimal;
use catalan_paths::paths::{average_length, average_limit};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_catalan-paths"));
    cmd.env_remove("CATALAN_PATHS_ENUM_BOUND");
    cmd.env_remove("CATALAN_PATHS_PAIR_BOUND");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 output")
}

#[test]
fn catalan_lists() {
    assert_eq!(stdout(&run(&["catalan", "3"])), "1\n1\n2\n5\n");
    assert_eq!(stdout(&run(&["catalan", "0"])), "1\n");
    let ten = stdout(&run(&["catalan", "10"]));
    assert_eq!(ten.lines().count(), 11);
    assert_eq!(ten.lines().last(), Some("16796"));
}

#[test]
fn avg_methods_agree() {
    let oracle = run(&["avg", "--n", "2", "--r", "1", "--method", "oracle"]);
    assert!(oracle.status.success());
    assert_eq!(stdout(&oracle), "S=6 count=4 A=3/2 (~1.500000)\n");

    let closed = stdout(&run(&[
        "avg", "--n", "50", "--r", "1", "--method", "closed",
    ]));
    assert!(closed.contains(" A=75/26 (~2.884615)"), "{closed}");

    let outputs: Vec<String> = ["closed", "recursive", "oracle", "series"]
        .iter()
        .map(|m| stdout(&run(&["avg", "--n", "9", "--r", "4", "--method", m])))
        .collect();
    assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{outputs:?}");
}

#[test]
fn exit_codes() {
    let out = run(&["avg", "--n", "5", "--r", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("r out of range"));

    let out = run(&["avg", "--n", "13", "--r", "2", "--method", "oracle"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("> 12"), "{}", stderr(&out));

    let out = run(&["avg", "--n", "40", "--r", "30", "--method", "series"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("> 64"), "{}", stderr(&out));

    assert_eq!(
        run(&["avg", "--n", "5", "--r", "1", "--digits", "51"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bounds_follow_environment() {
    let out = bin()
        .env("CATALAN_PATHS_PAIR_BOUND", "5")
        .args(["avg", "--n", "6", "--r", "2", "--method", "oracle"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("> 5"));

    let out = bin()
        .env("CATALAN_PATHS_ENUM_BOUND", "4")
        .args(["verify", "--suite", "oracle", "--nmax", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn figure_matches_golden_file() {
    let golden = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/figure_small.csv"),
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.csv");
    let out = run(&[
        "figure-afinal",
        "--n",
        "2,3,5",
        "--rmax",
        "6",
        "--digits",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden);

    let sequential = run(&[
        "--sequential",
        "figure-afinal",
        "--n",
        "2,3,5",
        "--rmax",
        "6",
        "--digits",
        "4",
    ]);
    assert_eq!(stdout(&sequential), golden);
}

#[test]
fn figure_round_trips_against_closed_form() {
    let digits = 12;
    let csv = stdout(&run(&[
        "figure-afinal",
        "--n",
        "50,100,200",
        "--rmax",
        "80",
        "--digits",
        "12",
    ]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("r,50,100,200,inf"));
    let mut rows = 0;
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 5);
        let r: usize = cells[0].parse().unwrap();
        for (cell, n) in cells[1..4].iter().zip([50, 100, 200]) {
            if r > n {
                assert!(cell.is_empty());
                continue;
            }
            assert_eq!(*cell, to_decimal(&average_length(n, r).unwrap(), digits));
        }
        assert_eq!(cells[4], to_decimal(&average_limit(r).unwrap(), digits));
        rows += 1;
    }
    assert_eq!(rows, 80);
}

#[test]
fn figure_rejects_unwritable_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("fig.csv");
    let out = run(&["figure-afinal", "--n", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("cannot write"));
}

#[test]
fn verify_reports() {
    let out = run(&["verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out)
        .lines()
        .all(|l| l.starts_with("PASS") || l.starts_with("suite")));

    let out = run(&["verify", "--suite", "oracle", "--nmax", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let out = run(&["verify", "--suite", "identities", "--corrupt-catalan", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.contains("FAIL recurrence (n+2) C_(n+1) = (4n+2) C_n, n <= 200: n = 8: got 48630, expected 48620"), "{report}");
}
