//! Command-line front end: argument parsing, config resolution, experiment
//! dispatch, and the two file-level utilities (space distance, sweep plot).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use mstlab_core::metric::{ghp_exact, ghp_upper_bound, MetricError};

use crate::config::{
    apply_sweep_value, parse_config_file, parse_sweep, resolve, Experiment, ExperimentConfig,
    RawSettings,
};
use crate::experiments::{run_experiment, write_outputs};
use crate::report::{read_sweep, write_sweep, SweepFile, SweepPoint};
use crate::spacefile::read_space;
use crate::svg::{render_plot, sweep_series, PlotOptions};
use crate::LabError;

#[derive(Parser)]
#[command(
    name = "mstlab",
    version,
    about = "Monte Carlo laboratory for noise effects on random minimum spanning forests"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Total weight of the full minimum spanning tree
    MstWeight(RunArgs),
    /// Edges on cycles in both coupled critical graphs
    BadEdges(RunArgs),
    /// Correlation of forest functionals across noise at criticality
    Sensitivity(RunArgs),
    /// Cycle-set agreement and difference bounds under weak noise
    Stability(RunArgs),
    /// Component sizes, surpluses, and girths at criticality
    Components(RunArgs),
    /// Distributional checks of the coupled cycle-breaking kernel
    KernelCheck(RunArgs),
    /// Distance between two measured metric spaces read from files
    Ghp {
        /// First space file: point count, masses, then the distance matrix
        x: PathBuf,
        /// Second space file
        y: PathBuf,
    },
    /// Render one series of a sweep summary as an SVG line plot
    Plot(PlotArgs),
}

#[derive(Args)]
pub struct RunArgs {
    /// Flat `key = value` config file; command-line flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Vertex count
    #[arg(long)]
    pub n: Option<u64>,
    /// Criticality parameter in p = 1/n + lambda n^(-4/3)
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Per-edge weight resampling probability
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Noise rate through epsilon = t * n^(-1/3); excludes --epsilon
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory receiving <experiment>.csv and .json
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-run over values, e.g. epsilon=0.1,0.2 (also n, lambda, t)
    #[arg(long)]
    pub sweep: Option<String>,
    /// Worker threads; affects wall time only, never any output byte
    #[arg(long)]
    pub threads: Option<usize>,
    /// Leading components compared by the stability event
    #[arg(long)]
    pub j_max: Option<u64>,
    /// Also measure full spanning trees (extends the horizon to connectivity)
    #[arg(long)]
    pub full_tree: bool,
    /// Write trial 0's coupled sample to this file (bad-edges only)
    #[arg(long)]
    pub dump_sample: Option<PathBuf>,
}

impl RunArgs {
    fn to_raw(&self) -> RawSettings {
        RawSettings {
            n: self.n,
            lambda: self.lambda,
            epsilon: self.epsilon,
            t: self.t,
            trials: self.trials,
            seed: self.seed,
            j_max: self.j_max,
            threads: self.threads,
            full_tree: self.full_tree.then_some(true),
            out: self.out.clone(),
            sweep: self.sweep.clone(),
            dump_sample: self.dump_sample.clone(),
        }
    }
}

#[derive(Args)]
pub struct PlotArgs {
    /// Sweep summary JSON written by a --sweep run
    #[arg(long = "in")]
    pub input: PathBuf,
    /// X axis: value | eps3n
    #[arg(long, default_value = "eps3n")]
    pub x: String,
    /// Y axis: r_<correlation>, a scalar name, or an extra field
    #[arg(long)]
    pub y: String,
    /// Output SVG path; defaults to the input with an .svg extension
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Logarithmic x axis (x values must be positive)
    #[arg(long)]
    pub log_x: bool,
}

pub fn run(cli: Cli) -> Result<(), LabError> {
    match cli.command {
        Command::MstWeight(a) => run_command(Experiment::MstWeight, &a),
        Command::BadEdges(a) => run_command(Experiment::BadEdges, &a),
        Command::Sensitivity(a) => run_command(Experiment::Sensitivity, &a),
        Command::Stability(a) => run_command(Experiment::Stability, &a),
        Command::Components(a) => run_command(Experiment::Components, &a),
        Command::KernelCheck(a) => run_command(Experiment::KernelCheck, &a),
        Command::Ghp { x, y } => ghp_command(&x, &y),
        Command::Plot(a) => plot_command(&a),
    }
}

fn regime_note(cfg: &ExperimentConfig) {
    let v = cfg.eps3n();
    match cfg.experiment {
        Experiment::Sensitivity if v < 10.0 => {
            eprintln!("note: epsilon^3 n = {v:.3}; decorrelation is an epsilon^3 n -> infinity effect");
        }
        Experiment::Stability if v > 1.0 => {
            eprintln!("note: epsilon^3 n = {v:.3}; stability is an epsilon^3 n -> 0 effect");
        }
        _ => {}
    }
}

fn run_command(experiment: Experiment, args: &RunArgs) -> Result<(), LabError> {
    let base = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => RawSettings::default(),
    };
    let merged = args.to_raw().over(base);
    let Some(sweep_text) = merged.sweep.clone() else {
        let cfg = resolve(experiment, &merged)?;
        regime_note(&cfg);
        let out = run_experiment(&cfg)?;
        let paths = write_outputs(&cfg, experiment.name(), &out)?;
        println!("wrote {}", paths.csv.display());
        println!("wrote {}", paths.json.display());
        return Ok(());
    };
    if merged.dump_sample.is_some() {
        return Err(LabError::Config(
            "--dump-sample works on single runs, not sweeps".into(),
        ));
    }
    let spec = parse_sweep(&sweep_text)?;
    let mut points = Vec::with_capacity(spec.values.len());
    let mut out_dir = PathBuf::from(".");
    for &value in &spec.values {
        let raw = apply_sweep_value(&merged, &spec.parameter, value)?;
        let cfg = resolve(experiment, &raw)?;
        regime_note(&cfg);
        let out = run_experiment(&cfg)?;
        let stem = format!("{}_{}_{}", experiment.name(), spec.parameter, value);
        let paths = write_outputs(&cfg, &stem, &out)?;
        println!("wrote {}", paths.csv.display());
        points.push(SweepPoint {
            value,
            eps3n: cfg.eps3n(),
            summary: out.summary,
        });
        out_dir = cfg.out_dir;
    }
    let sweep = SweepFile {
        experiment: experiment.name().into(),
        parameter: spec.parameter,
        points,
    };
    let path = out_dir.join(format!("{}_sweep.json", experiment.name()));
    write_sweep(&path, &sweep)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn ghp_command(x_path: &Path, y_path: &Path) -> Result<(), LabError> {
    let x = read_space(x_path)?;
    let y = read_space(y_path)?;
    match ghp_exact(&x, &y) {
        Ok(d) => println!("exact {d:.16e}"),
        Err(MetricError::TooLarge { .. } | MetricError::MassMismatch { .. }) => {
            let d = ghp_upper_bound(&x, &y);
            println!("upper-bound {d:.16e}");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn plot_command(args: &PlotArgs) -> Result<(), LabError> {
    let sweep = read_sweep(&args.input)?;
    let points = sweep_series(&sweep, &args.x, &args.y)?;
    let opts = PlotOptions {
        title: format!("{}: {} vs {}", sweep.experiment, args.y, args.x),
        x_label: args.x.clone(),
        y_label: args.y.clone(),
        log_x: args.log_x,
    };
    let svg = render_plot(&points, &opts)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| args.input.with_extension("svg"));
    std::fs::write(&out, svg)?;
    println!("wrote {}", out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
        let cli = Cli::try_parse_from([
            "mstlab",
            "sensitivity",
            "--n",
            "1000",
            "--epsilon",
            "0.5",
            "--trials",
            "10",
            "--seed",
            "3",
            "--out",
            "results",
        ])
        .unwrap();
        match cli.command {
            Command::Sensitivity(a) => {
                assert_eq!(a.n, Some(1000));
                assert_eq!(a.epsilon, Some(0.5));
            }
            _ => panic!("wrong subcommand"),
        }
        assert!(Cli::try_parse_from(["mstlab", "frobnicate"]).is_err());
        let neg = Cli::try_parse_from(["mstlab", "components", "--n", "100", "--lambda", "-2.5"])
            .unwrap();
        match neg.command {
            Command::Components(a) => assert_eq!(a.lambda, Some(-2.5)),
            _ => panic!("wrong subcommand"),
        }
    }
}
