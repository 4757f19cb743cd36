use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lheap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lheap")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bench_binary_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let o = lheap(&[
        "bench",
        "--structure",
        "binary",
        "--workload",
        "ratio",
        "--n-max",
        "65536",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# timing_block=64\n"));
    assert!(text.contains("# rounds=until_n_max\n"));
    assert!(text.contains("\nstructure,M,arity,n_bucket,op,ops_count,total_ns,mean_comparisons,mean_entry_moves\n"));
    assert!(text.lines().any(|l| l.starts_with("binary,1,2,32768,insert,")));
}

#[test]
fn bench_rejects_small_n_max() {
    let o = lheap(&["bench", "--n-max", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = lheap(&["bench", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn bad_structure_is_config_error() {
    assert_eq!(lheap(&["bench", "--structure", "treap", "--n-max", "2000"]).status.code(), Some(2));
    assert_eq!(lheap(&["bench", "--n-max", "8388608"]).status.code(), Some(2));
    assert_eq!(lheap(&["adjudicate", "--arity-override", "1"]).status.code(), Some(2));
}

#[test]
fn faithful_needs_unsafe_flag() {
    assert_eq!(lheap(&["bench", "--structure", "faithful", "--n-max", "2000"]).status.code(), Some(2));
    let o = lheap(&["bench", "--structure", "faithful", "--n-max", "2000", "--unsafe-faithful", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("faithful-sift-unsafe"));
}

#[test]
fn fit_svg_memory_and_speedup() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("chart.svg");
    let o = lheap(&[
        "bench",
        "--structure",
        "binary,layered:2",
        "--n-max",
        "65536",
        "--fit",
        "--report-memory",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("layered:2 insert: alpha="), "{out}");
    assert!(out.contains("claimed 0.500"));
    assert!(out.contains("speedup against binary"));
    assert!(out.contains("refuted"));
    let chart = std::fs::read_to_string(&svg).unwrap();
    assert!(chart.starts_with("<svg") && chart.trim_end().ends_with("</svg>"));
}

#[test]
fn adjudicate_layered_writes_none() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    let o = lheap(&[
        "adjudicate",
        "--structure",
        "layered",
        "--layers",
        "2",
        "--m-max",
        "7",
        "--arity-override",
        "3",
        "--fixture",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("result=none"), "{text}");
}

#[test]
fn check_exit_codes() {
    let faithful = fixture("faithful-k3-sift.txt");
    let o = lheap(&["check", "--fixture", faithful.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DIVERGES"));
    let o = lheap(&["check", "--fixture", faithful.to_str().unwrap(), "--structure", "layered"]);
    assert_eq!(o.status.code(), Some(0));
    let o = lheap(&["check", "--fixture", fixture("layered2-k3.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lheap(&["check", "--fixture", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn check_rejects_malformed_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "I 1\nP\n").unwrap();
    assert_eq!(lheap(&["check", "--fixture", path.to_str().unwrap()]).status.code(), Some(2));
}
