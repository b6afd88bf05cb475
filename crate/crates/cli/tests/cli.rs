use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_levelorbits"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn orbits_at_level_eleven() {
    let o = run(&["orbits", "--level", "11"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["orbit_sizes"], serde_json::json!([1]));
    assert_eq!(v["min_p"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["orbits"]).status.code(), Some(1));
    assert_eq!(run(&["orbits", "--level", "12"]).status.code(), Some(1));
    assert_eq!(run(&["model", "--d", "3", "--t", "x"]).status.code(), Some(1));
    assert_eq!(run(&["model", "--d", "3", "--t", "2", "--weight", "2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.jsonl");
    let o = run(&["ingest", "--file", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_tables_and_figure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let out_s = out.to_str().unwrap();
    assert!(run(&["sweep", "--xmax", "101", "--jobs", "2", "--out", out_s]).status.success());

    let csv = dir.path().join("fig.csv");
    let o = run(&["figure", "--in", out_s, "--samples", "2,13,101", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(
        std::fs::read_to_string(&csv).unwrap(),
        "X,A\n2,0.0\n13,0.16666666666666666\n101,1.3846153846153846\n"
    );

    let o = run(&["figure", "--in", out_s, "--samples", "103", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["tables", "--in", out_s, "--table", "sizes", "--ranges", "11"]);
    assert_eq!(stdout(&o), "range,1,2,3,4,5,6,7\n(10,11],1,0,0,0,0,0,0\n");
    let o = run(&["tables", "--in", out_s, "--table", "minp"]);
    assert!(stdout(&o).starts_with("p,count\n2,"));
    let o = run(&["tables", "--in", out_s, "--table", "counts", "--ranges", "0-13"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "(0,13],6,0,0,0,0,0,0,0.00");

    let o = run(&["average", "--in", out_s, "--xmax", "13"]);
    assert!(stdout(&o).starts_with("0.16666666666666666 (1/6)"));
}

#[test]
fn ingest_average_and_crosscheck() {
    let k4 = fixture("newforms_k4_prime_lt250.jsonl");
    let o = run(&["ingest", "--file", k4.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("weight 4: "));
    let o = run(&["average", "--in", k4.to_str().unwrap(), "--xmax", "250", "--weight", "4", "--r", "1"]);
    assert!(o.status.success());
    let a: f64 = stdout(&o).split_whitespace().next().unwrap().parse().unwrap();
    assert!((a - 2.057).abs() <= 0.001);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    assert!(run(&["sweep", "--xmax", "60", "--out", out.to_str().unwrap()]).status.success());
    let k2 = fixture("newforms_k2_prime_le500.jsonl");
    let o = run(&[
        "crosscheck",
        "--brandt",
        out.to_str().unwrap(),
        "--lmfdb",
        k2.to_str().unwrap(),
        "--xmax",
        "60",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("17 of 17 levels agree"));
    let o = run(&[
        "crosscheck",
        "--brandt",
        out.to_str().unwrap(),
        "--lmfdb",
        k2.to_str().unwrap(),
        "--xmax",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_modes() {
    let o = run(&["model", "--d", "3", "--e", "1", "--t", "9/2"]);
    assert!(stdout(&o).contains("(10/27)"));
    let o = run(&["model", "--d", "4", "--e", "2", "--t", "4.0"]);
    assert!(stdout(&o).contains("(175/2048)"));
    let o = run(&["model", "--weight", "2", "--level", "1009", "--r", "1"]);
    assert!(stdout(&o).starts_with("dimension 42\n"));
}
