//! End-to-end tests of the `depthnn` binary: output contents, manifests,
//! determinism, replay, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_depthnn"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

const TRIANGLE: &str = "0,0\n1,0\n0,1\n";

#[test]
fn depth_on_triangle_fixture() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("triangle.csv");
    write(&data, TRIANGLE);
    let out = dir.path().join("depth.csv");
    let output = run(&[
        "depth",
        "--data",
        data.to_str().unwrap(),
        "--depth",
        "halfspace",
        "--query",
        "0,0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.contains("0.3333333333333333"), "csv was: {csv}");
    // manifest written alongside
    let manifest = dir.path().join("depth.csv.manifest.json");
    assert!(manifest.exists());
    let text = fs::read_to_string(&manifest).unwrap();
    assert!(text.contains("\"subcommand\": \"depth\""));
}

#[test]
fn benchmark_is_deterministic_and_worker_independent() {
    let dir = TempDir::new().unwrap();
    let out1 = dir.path().join("a");
    let out2 = dir.path().join("b");
    for out in [&out1, &out2] {
        let output = run(&[
            "benchmark",
            "--setup",
            "1",
            "--replications",
            "3",
            "--n-train",
            "30",
            "--n-test",
            "10",
            "--methods",
            "lda,knn-",
            "--seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    }
    let rows1 = fs::read(out1.join("rows.csv")).unwrap();
    let rows2 = fs::read(out2.join("rows.csv")).unwrap();
    assert_eq!(rows1, rows2);
    let sum1 = fs::read(out1.join("summary.json")).unwrap();
    let sum2 = fs::read(out2.join("summary.json")).unwrap();
    assert_eq!(sum1, sum2);
}

#[test]
fn classify_and_cv_round_trip() {
    let dir = TempDir::new().unwrap();
    let train = dir.path().join("train.csv");
    let test = dir.path().join("test.csv");
    // separable clusters in general position
    let mut rows = String::new();
    for i in 0..10 {
        let j = i as f64;
        rows.push_str(&format!("{},{},0\n", j * 0.13, 0.07 * (j - 4.0) * (j - 4.0) % 0.9));
        rows.push_str(&format!("{},{},1\n", 5.0 + j * 0.11, 0.3 + 0.05 * j * j % 0.7));
    }
    write(&train, &rows);
    write(&test, "0.4,0.3,0\n5.4,0.5,1\n");
    let out = dir.path().join("pred.csv");
    let output = run(&[
        "classify",
        "--train",
        train.to_str().unwrap(),
        "--test",
        test.to_str().unwrap(),
        "--method",
        "dknn",
        "--depth",
        "halfspace",
        "--k",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("test error 0.00%"), "stdout: {stdout}");

    let cv_out = dir.path().join("cv.json");
    let output = run(&[
        "cv",
        "--train",
        train.to_str().unwrap(),
        "--family",
        "knn",
        "--grid",
        "1,3,5",
        "--out",
        cv_out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let json = fs::read_to_string(&cv_out).unwrap();
    assert!(json.contains("best_k"));
}

#[test]
fn replay_reproduces_outputs_bit_identically() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("triangle.csv");
    write(&data, TRIANGLE);
    let out = dir.path().join("depth.csv");
    let output = run(&[
        "depth",
        "--data",
        data.to_str().unwrap(),
        "--depth",
        "simplicial",
        "--query",
        "0.25,0.25",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let first = fs::read(&out).unwrap();
    fs::remove_file(&out).unwrap();
    let manifest = dir.path().join("depth.csv.manifest.json");
    let output = run(&["replay", "--manifest", manifest.to_str().unwrap()]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let second = fs::read(&out).unwrap();
    assert_eq!(first, second);
}

#[test]
fn exit_codes_distinguish_validation_from_computation() {
    let dir = TempDir::new().unwrap();
    // unknown flag -> exit 2 is clap's usage error; spec wants usage text
    // and exit 1 for validation problems, so check our own validation path:
    let missing = run(&[
        "depth",
        "--data",
        dir.path().join("nope.csv").to_str().unwrap(),
        "--depth",
        "halfspace",
        "--query",
        "0,0",
        "--out",
        dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(missing.status.code(), Some(1));

    // computational error: singular covariance (collinear data, mahalanobis)
    let data = dir.path().join("line.csv");
    write(&data, "0,0\n1,1\n2,2\n3,3\n");
    let singular = run(&[
        "depth",
        "--data",
        data.to_str().unwrap(),
        "--depth",
        "mahalanobis",
        "--query",
        "0,0",
        "--out",
        dir.path().join("o2.csv").to_str().unwrap(),
    ]);
    assert_eq!(singular.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&singular.stderr);
    assert!(stderr.contains("error"), "stderr: {stderr}");
}

#[test]
fn estimate_volume_and_density() {
    let dir = TempDir::new().unwrap();
    let data = dir.path().join("pts.csv");
    let mut rows = String::new();
    for i in 0..40 {
        let t = i as f64 / 40.0 * std::f64::consts::TAU;
        rows.push_str(&format!("{},{}\n", t.cos(), t.sin()));
    }
    write(&data, &rows);
    let out = dir.path().join("vol.csv");
    let output = run(&[
        "estimate",
        "--data",
        data.to_str().unwrap(),
        "--what",
        "volume",
        "--mode",
        "euclidean",
        "--query",
        "0,0",
        "--k",
        "40",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    // all 40 points at radius 1 -> ball volume pi
    let csv = fs::read_to_string(&out).unwrap();
    let vol: f64 = csv.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((vol - std::f64::consts::PI).abs() < 1e-9);
}

#[test]
fn fetch_data_offline_reports_missing_files() {
    let dir = TempDir::new().unwrap();
    let output = run(&[
        "fetch-data",
        "--dataset",
        "ripley",
        "--offline",
        "--data-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("synth.tr"), "stderr: {stderr}");
}
