use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dimer_core::report::Report;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn dimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimer"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const WORKED: [&str; 6] = ["--cut", "a,b,c", "--tree", "e,h,k", "--complement", "f,j"];

#[test]
fn validate_fixture_prints_genus() {
    let o = dimer(&["validate", fixture("genus2.tiling").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "genus: 2");
}

#[test]
fn validate_missing_file_is_an_input_error() {
    let o = dimer(&["validate", "/nonexistent/x.tiling"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_invalid_map_is_an_assertion_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.tiling");
    fs::write(
        &path,
        "vertex b1 black : x_b\nvertex w1 white : x_w\nvertex b2 black : y_b\n\
         vertex w2 white : y_w\nedge x : x_b x_w\nedge y : y_b y_w\n",
    )
    .unwrap();
    let o = dimer(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let wrong_genus = dir.path().join("wrong.tiling");
    fs::write(&wrong_genus, "genus: 3\nvertex b black : x_b\nvertex w white : x_w\nedge x : x_b x_w\n").unwrap();
    assert_eq!(dimer(&["validate", wrong_genus.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn malformed_tiling_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tiling");
    fs::write(&path, "genus: 2\nvertex w1 white : a_w\nvertex b1 : a_b\n").unwrap();
    let o = dimer(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn dualize_writes_the_quiver() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.txt");
    let o = dimer(&["dualize", fixture("genus2.tiling").to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("arrow ")).count(), 12);
    assert!(text.contains("term + : j g e a"));
}

#[test]
fn relator_reports_the_worked_example() {
    let path = fixture("genus2.tiling");
    let mut args = vec!["relator", path.to_str().unwrap()];
    args.extend(WORKED);
    let o = dimer(&args);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::parse(&stdout(&o)).unwrap();
    assert_eq!(report.get("RELATOR", "relator-compact"), Some("li⁻¹l⁻¹idgd⁻¹g⁻¹"));
    assert_eq!(report.get("NORMALIZATION", "status"), Some("found"));
    assert!(report.passed());
}

#[test]
fn relator_with_automatic_choices_is_deterministic() {
    let path = fixture("genus2.tiling");
    let a = dimer(&["relator", path.to_str().unwrap()]);
    let b = dimer(&["relator", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn relator_sweeps_the_named_cuts() {
    let path = fixture("genus2.tiling");
    let mut relators = Vec::new();
    for cut in ["a,b,c", "d,e,f", "g,h,i", "j,k,l"] {
        let o = dimer(&["relator", path.to_str().unwrap(), "--cut", cut]);
        assert_eq!(o.status.code(), Some(0), "cut {cut}");
        let report = Report::parse(&stdout(&o)).unwrap();
        assert_eq!(report.get("NORMALIZATION", "status"), Some("found"));
        relators.push(report.get("RELATOR", "relator").unwrap().to_string());
    }
    assert_eq!(relators.len(), 4);
}

#[test]
fn unknown_cut_arrow_is_an_input_error() {
    let path = fixture("genus2.tiling");
    let o = dimer(&["relator", path.to_str().unwrap(), "--cut", "a,b,z"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_from_config_passes() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    let out = dir.path().join("report.txt");
    fs::write(
        &config,
        format!(
            "tiling: {}\ncut: a b c\ntree: e h k\ncomplement: f j\nseed: 1\nsamples: 100\nblock-sizes: 1x1 1x2 2x1 2x2\n",
            fixture("genus2.tiling").display()
        ),
    )
    .unwrap();
    let o = dimer(&["verify", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = Report::parse(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(report.passed());
    let square = report.get("DIAGRAMS", "comparison/top-right").unwrap();
    assert!(square.starts_with("pass | expected fails-generically"));
}

#[test]
fn verify_with_zero_tolerance_fails() {
    let path = fixture("genus2.tiling");
    let mut args = vec!["verify", path.to_str().unwrap(), "--samples", "10", "--tolerance", "0"];
    args.extend(WORKED);
    assert_eq!(dimer(&args).status.code(), Some(1));
}

#[test]
fn verify_block_run_emits_the_shape_table() {
    let path = fixture("genus2.tiling");
    let mut args = vec!["verify", path.to_str().unwrap(), "--samples", "10", "--block-sizes", "2x2"];
    args.extend(WORKED);
    let o = dimer(&args);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::parse(&stdout(&o)).unwrap();
    assert!(report.get("CHECKS", "block-shape-2x2").is_some());
}

#[test]
fn verify_inverted_fixture_takes_the_inverse_power() {
    let path = fixture("genus2-inverted.tiling");
    let mut args = vec!["verify", path.to_str().unwrap(), "--samples", "20"];
    args.extend(WORKED);
    let o = dimer(&args);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::parse(&stdout(&o)).unwrap();
    assert_eq!(report.get("NORMALIZATION", "sign"), Some("-1"));
}

#[test]
fn bad_config_line_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.cfg");
    fs::write(&config, "seed: 1\nsamples: many\n").unwrap();
    let o = dimer(&["verify", "--config", config.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}
