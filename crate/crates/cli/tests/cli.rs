use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use advrisk::analytic::gaussian_equal_var;
use advrisk::discrete::total_variation;
use advrisk::report::{RiskReport, RiskRow};
use advrisk::Measure;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_advrisk"));
    c.env_remove("ADVRISK_JOBS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn rows(out: &Output) -> Vec<RiskRow> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    RiskReport::rows_from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn toy(dir: &Path) -> (String, String) {
    (write(dir, "a.csv", "0\n1\n2\n3\n"), write(dir, "b.csv", "0.3\n1.6\n2.2\n5\n"))
}

#[test]
fn exact_sweep_is_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = toy(dir.path());
    let r = rows(&run(&["exact", "--class-a", &a, "--class-b", &b, "--eps-sweep", "0:1:5"]));
    assert_eq!(r.len(), 5);
    assert!(r.windows(2).all(|w| w[0].risk <= w[1].risk && w[0].eps < w[1].eps));
    assert!(r.iter().all(|x| x.method == "exact-empirical"));
}

#[test]
fn exact_identical_inputs_give_one_half() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _) = toy(dir.path());
    for row in rows(&run(&["exact", "--class-a", &a, "--class-b", &a, "--eps-sweep", "0:2:4"])) {
        assert_eq!(row.risk, Some(0.5));
        assert!(row.degenerate);
    }
}

#[test]
fn exact_at_zero_is_total_variation() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0\n1\n1\n2\n");
    let b = write(dir.path(), "b.csv", "1\n2\n3\n4\n");
    let tv = total_variation(
        &Measure::uniform_1d(&[0.0, 1.0, 1.0, 2.0]).unwrap(),
        &Measure::uniform_1d(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
    )
    .unwrap();
    let r = rows(&run(&["exact", "--class-a", &a, "--class-b", &b, "--eps", "0"]));
    assert_eq!(r[0].risk, Some(0.5 * (1.0 - tv)));
}

#[test]
fn analytic_examples() {
    let r = rows(&run(&["analytic", "gaussian-equal-var", "--mu0", "0", "--mu1", "2", "--sigma", "1", "--eps", "1"]));
    assert_eq!((r[0].risk, r[0].degenerate), (Some(0.5), true));
    let r = rows(&run(&["analytic", "uniform", "--a0", "0", "--b0", "1", "--a1", "5", "--b1", "6", "--eps", "0.1"]));
    assert_eq!(r[0].risk, Some(0.0));
    let out = run(&[
        "analytic",
        "gaussian-same-mean",
        "--sigma0",
        "1",
        "--sigma1",
        "0.5",
        "--eps",
        "0.3",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let report = RiskReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let (w, _) = advrisk::analytic::motivating_example(1.0, 0.5, 0.3).unwrap();
    assert!((report.rows[0].diagnostics["m"] - w).abs() < 1e-8);
    let r = rows(&run(&["analytic", "gaussian-iso", "--mu0", "0,0", "--mu1", "1,-1", "--sigma", "1", "--eps", "0.2"]));
    assert_eq!(r[0].classifier, "w=[1 -1];b=1");
}

#[test]
fn mixture_reduces_to_exact_and_grows_with_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = toy(dir.path());
    let exact = rows(&run(&["exact", "--class-a", &a, "--class-b", &b, "--eps-sweep", "0:1:5"]));
    let mix =
        rows(&run(&["mixture", "--class-a", &a, "--class-b", &b, "--eps-sweep", "0:1:5", "--sigma", "0,0.1,0.5"]));
    assert_eq!(mix.len(), 15);
    for (k, e) in exact.iter().enumerate() {
        let zero = &mix[3 * k];
        assert_eq!(zero.sigma, Some(0.0));
        assert_eq!(zero.risk.map(f64::to_bits), e.risk.map(f64::to_bits));
        assert_eq!(zero.depsilon.map(f64::to_bits), e.depsilon.map(f64::to_bits));
        assert!(mix[3 * k + 1].risk <= mix[3 * k + 2].risk);
    }
}

#[test]
fn mixture_single_pair_is_equal_variance_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0\n");
    let b = write(dir.path(), "b.csv", "2\n");
    let r = rows(&run(&["mixture", "--class-a", &a, "--class-b", &b, "--eps-sweep", "0:1.5:7", "--sigma", "0.8"]));
    for row in r {
        let cf = gaussian_equal_var(0.0, 2.0, 0.8, row.eps).unwrap().risk;
        assert!((row.risk.unwrap() - cf).abs() < 1e-12, "eps {}", row.eps);
    }
}

#[test]
fn wp_point_masses() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "0\n");
    let b = write(dir.path(), "b.csv", "-2.5\n");
    let r = rows(&run(&["wp", "--class-a", &a, "--class-b", &b, "--p", "1", "--eps", "1"]));
    assert_eq!(r[0].depsilon, Some(2.5));
    assert_eq!(r[0].risk, Some(0.0));
}

#[test]
fn riskof_empty_set() {
    let r = rows(&run(&[
        "riskof",
        "--class0",
        "gaussian:0,1",
        "--class1",
        "uniform:-1,3",
        "--set",
        "empty",
        "--eps",
        "0,0.4",
    ]));
    assert!(r.iter().all(|x| x.risk == Some(0.5)));
}

#[test]
fn lossbounds_toy_sandwich() {
    let r = rows(&run(&["lossbounds", "--toy", "--eps-sweep", "0:0.5:6"]));
    for chunk in r.chunks(4) {
        let get = |m: &str| chunk.iter().find(|x| x.method == m).unwrap().risk.unwrap();
        assert!(get("loss-bound-lower") <= get("loss-toy-exact") + 1e-12);
        assert!(get("loss-toy-exact") <= get("loss-bound-upper") + 1e-12);
    }
    assert!(!run(&["lossbounds", "--eps", "0.1"]).status.success());
}

#[test]
fn verify_corpus_passes() {
    let out = run(&["verify", "--scale", "0.2", "--corpus", corpus().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn jobs_do_not_change_output() {
    let c = corpus();
    let (a, b) = (c.join("clusters_a.csv"), c.join("clusters_b.csv"));
    let args = ["exact", "--class-a", a.to_str().unwrap(), "--class-b", b.to_str().unwrap(), "--eps-sweep", "0:2:17"];
    let one = run(&[&["--jobs", "1"][..], &args[..]].concat());
    let many = bin().args(args).env("ADVRISK_JOBS", "4").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn labeled_data_and_subsampling() {
    let dir = tempfile::tempdir().unwrap();
    let body: String = (0..30).map(|i| format!("{},{},{}\n", i % 3, i, i * 2)).collect();
    let data = write(dir.path(), "d.csv", &body);
    let base = ["exact", "--data", &data, "--classes", "0,2", "--eps", "3", "--n-per-class", "4"];
    let x = run(&[&base[..], &["--seed", "5"]].concat());
    let y = run(&[&base[..], &["--seed", "5"]].concat());
    assert!(x.status.success(), "{}", String::from_utf8_lossy(&x.stderr));
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(run(&["exact", "--data", &data, "--classes", "0,7", "--eps", "1"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let (a, _) = toy(dir.path());
    let ragged = write(dir.path(), "r.csv", "0\n1,2\n");
    let bad = run(&["exact", "--class-a", &ragged, "--class-b", &a, "--eps", "1"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    assert_eq!(run(&["exact", "--class-a", &a, "--class-b", &a, "--eps", "-1"]).status.code(), Some(1));
    assert_eq!(
        run(&["analytic", "gaussian-equal-var", "--mu0", "0", "--mu1", "1", "--sigma=0", "--eps", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_certificates_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = toy(dir.path());
    let out_path = dir.path().join("r.json");
    let out = run(&[
        "exact",
        "--class-a",
        &a,
        "--class-b",
        &b,
        "--eps",
        "0.25,0.5",
        "--format",
        "json",
        "--certificates",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let report = RiskReport::from_json(&text).unwrap();
    assert_eq!(report.certificates.len(), 2);
    assert_eq!(RiskReport::from_json(&report.to_json().unwrap()).unwrap(), report);
}
