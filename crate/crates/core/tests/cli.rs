use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn hypercx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercx")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn diagnostic(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).expect("stderr is one JSON diagnostic")
}

#[test]
fn analyze_matches_golden_report() {
    let input = fixture("gt.family");
    let o = hypercx(&["analyze", "--input", input.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = std::fs::read_to_string(fixture("gt_t13.report.json")).unwrap();
    assert!(stdout(&o) == golden, "report drifted from tests/fixtures/gt_t13.report.json");
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join(format!("hypercx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = hypercx(&["family", "gt", "--param", "t=1/3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(written, std::fs::read_to_string(fixture("gt_t13.report.json")).unwrap());
}

#[test]
fn table_rows() {
    let third = stdout(&hypercx(&["analyze", "--family", "gt", "--param", "t=1/3"]));
    assert!(third.lines().any(|l| l == "H^{2,0}_dolbeault: 4"));
    assert!(third.lines().any(|l| l == "H^{2,0}_bott-chern: 5"));
    let half = stdout(&hypercx(&["analyze", "--family", "gt", "--param", "t=1/2"]));
    assert!(half.lines().any(|l| l == "abelian hypercomplex: true"));
    assert!(half.lines().any(|l| l.starts_with("hkt: true")));
}

#[test]
fn non_hkt_is_a_successful_answer() {
    let o = hypercx(&["hkt", "--family", "nilpotent8", "--param", "t1=1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hkt"], serde_json::json!(false), "{v}");
    assert_eq!(v["method_a"], v["method_b"]);
}

#[test]
fn cohomology_subcommand() {
    let o = hypercx(&["cohomology", "--family", "gt", "--param", "t=1/3", "--p", "2", "--kind", "bott-chern", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bott-chern"));
}

#[test]
fn user_errors_exit_2_with_diagnostics() {
    let broken = fixture("broken.alg");
    let o = hypercx(&["validate", "--input", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let d = diagnostic(&o);
    assert_eq!(d["error"], "JACOBI_VIOLATION");
    assert_eq!(d["triple"], serde_json::json!([1, 2, 3]));

    let o = hypercx(&["analyze", "--family", "gt", "--param", "t=0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "NON_RATIONAL_LITERAL");

    let o = hypercx(&["analyze", "--family", "gt", "--param", "t=3/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["error"], "BAD_PARAMETERS");

    let o = hypercx(&["analyze"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_hypercx"))
            .args(["sweep", "--family", "nilpotent8", "--grid", "t1=-1,0,1", "--grid", "t2=0,1", "--format", "json"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}
