//! End-to-end checks of the campaign harness: statistical invariants that any
//! correct pipeline must satisfy, plus command-line behaviour of the compiled
//! binary (sweeps, plots, space comparison, sample dumps, exit codes).

use std::path::Path;
use std::process::Command;

use mstlab::config::{resolve, Experiment, RawSettings};
use mstlab::experiments::run_experiment;
use mstlab::report::read_sweep;
use mstlab::sampledump::read_sample;

fn raw(n: u64, epsilon: Option<f64>, trials: u64, seed: u64) -> RawSettings {
    RawSettings {
        n: Some(n),
        lambda: Some(0.0),
        epsilon,
        trials: Some(trials),
        seed: Some(seed),
        ..Default::default()
    }
}

#[test]
fn confidence_interval_shrinks_with_more_trials() {
    let run = |trials: u64| {
        let cfg = resolve(Experiment::MstWeight, &raw(300, None, trials, 7)).unwrap();
        run_experiment(&cfg).unwrap().summary.scalars["mst_weight"].ci95
    };
    let ratio = run(200) / run(100);
    // doubling the sample should cut the interval by about 1/sqrt(2)
    assert!(
        (0.6..=0.8).contains(&ratio),
        "ci ratio {ratio} outside [0.6, 0.8]"
    );
}

#[test]
fn zero_noise_gives_perfect_agreement() {
    let cfg = resolve(Experiment::Sensitivity, &raw(2000, Some(0.0), 25, 2)).unwrap();
    let out = run_experiment(&cfg).unwrap();
    for key in ["diameter", "size", "mean_pairwise_distance"] {
        assert_eq!(out.summary.correlations[key].r, 1.0, "{key} not exactly 1");
    }
    let cfg = resolve(Experiment::Stability, &raw(2000, Some(0.0), 25, 2)).unwrap();
    let out = run_experiment(&cfg).unwrap();
    assert_eq!(out.summary.scalars["conn_match"].mean, 1.0);
    assert_eq!(out.summary.scalars["sym_diff_bound"].mean, 0.0);
}

#[test]
fn two_vertex_weight_matches_uniform_mean() {
    let cfg = resolve(Experiment::MstWeight, &raw(2, None, 400, 3)).unwrap();
    let out = run_experiment(&cfg).unwrap();
    let mean = out.summary.scalars["mst_weight"].mean;
    assert!((mean - 0.5).abs() < 0.05, "two-vertex mean {mean}");
}

#[test]
fn full_noise_keeps_shared_cycle_edges_rare() {
    let cfg = resolve(Experiment::BadEdges, &raw(10_000, Some(1.0), 50, 5)).unwrap();
    let out = run_experiment(&cfg).unwrap();
    let mean = out.summary.scalars["shared_cycle_edges"].mean;
    assert!(mean <= 1.0, "mean shared cycle edges {mean} above 1/epsilon");
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mstlab"))
}

#[test]
fn cli_sweep_then_plot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args([
            "sensitivity",
            "--n",
            "2000",
            "--sweep",
            "epsilon=0.3,0.9",
            "--trials",
            "10",
            "--seed",
            "9",
            "--out",
        ])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let sweep_path = dir.path().join("sensitivity_sweep.json");
    let sweep = read_sweep(&sweep_path).unwrap();
    assert_eq!(sweep.parameter, "epsilon");
    assert_eq!(sweep.points.len(), 2);
    assert_eq!(sweep.points[0].value, 0.3);
    assert_eq!(sweep.points[1].eps3n, 0.9f64.powi(3) * 2000.0);
    assert!(dir.path().join("sensitivity_epsilon_0.3.csv").exists());
    assert!(dir.path().join("sensitivity_epsilon_0.9.json").exists());

    let svg_path = dir.path().join("r.svg");
    let status = bin()
        .args(["plot", "--in"])
        .arg(&sweep_path)
        .args(["--y", "r_diameter", "--out"])
        .arg(&svg_path)
        .status()
        .unwrap();
    assert!(status.success());
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"), "not an svg: {}", &svg[..40.min(svg.len())]);
    assert!(svg.contains("</svg>"));
}

#[test]
fn cli_dump_sample_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("first.bin");
    let status = bin()
        .args([
            "bad-edges",
            "--n",
            "4000",
            "--epsilon",
            "0.2",
            "--trials",
            "3",
            "--seed",
            "13",
            "--dump-sample",
        ])
        .arg(&dump)
        .args(["--out"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    let sample = read_sample(&dump).unwrap();
    assert_eq!(sample.params.n, 4000);
    assert_eq!(sample.params.epsilon, 0.2);
    assert!(!sample.triples.is_empty());
}

fn write_space(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn cli_ghp_reports_exact_distance() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.space");
    let one = dir.path().join("one.space");
    write_space(&two, "2\n0.5\n0.5\n0.0 1.0\n1.0 0.0\n");
    write_space(&one, "1\n1.0\n0.0\n");
    let out = bin().arg("ghp").arg(&two).arg(&one).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "exact 5.0000000000000000e-1");
}

#[test]
fn cli_exit_codes_distinguish_failure_kinds() {
    let code = |out: std::process::Output| out.status.code().unwrap();
    let usage = bin().arg("--definitely-not-a-flag").output().unwrap();
    assert_eq!(code(usage), 2);
    let config = bin()
        .args(["bad-edges", "--n", "100", "--epsilon", "0"])
        .output()
        .unwrap();
    assert_eq!(code(config), 3);
    let io = bin()
        .args(["plot", "--in", "/nonexistent/sweep.json", "--y", "r_diameter"])
        .output()
        .unwrap();
    assert_eq!(code(io), 1);
}
