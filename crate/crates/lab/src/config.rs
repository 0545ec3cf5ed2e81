//! Experiment configuration: resolved parameters plus the flat key = value
//! config-file format. Command-line flags override file values; unknown keys
//! in a file are rejected outright.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::report::ConfigEcho;
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    MstWeight,
    BadEdges,
    Sensitivity,
    Stability,
    Components,
    KernelCheck,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::MstWeight => "mst-weight",
            Experiment::BadEdges => "bad-edges",
            Experiment::Sensitivity => "sensitivity",
            Experiment::Stability => "stability",
            Experiment::Components => "components",
            Experiment::KernelCheck => "kernel-check",
        }
    }

    pub fn needs_n(self) -> bool {
        self != Experiment::KernelCheck
    }
}

/// Noise strength given either directly or through t with
/// `epsilon = t * n^{-1/3}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseSpec {
    Epsilon(f64),
    T(f64),
}

/// Everything one experiment run needs. Built by [`resolve`] after merging
/// config file and flags.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: u64,
    pub lambda: f64,
    pub epsilon: f64,
    /// Set when epsilon came from a t value.
    pub t: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub j_max: u64,
    pub threads: usize,
    pub full_tree: bool,
    pub out_dir: PathBuf,
    pub dump_sample: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.n,
            lambda: self.lambda,
            epsilon: self.epsilon,
            t: self.t,
            trials: self.trials,
            seed: self.seed,
            j_max: if self.experiment == Experiment::Stability {
                Some(self.j_max)
            } else {
                None
            },
        }
    }

    pub fn eps3n(&self) -> f64 {
        self.epsilon.powi(3) * self.n as f64
    }
}

/// Raw settings before validation; every field optional so that file values
/// and flags can be merged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawSettings {
    pub n: Option<u64>,
    pub lambda: Option<f64>,
    pub epsilon: Option<f64>,
    pub t: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub j_max: Option<u64>,
    pub threads: Option<usize>,
    pub full_tree: Option<bool>,
    pub out: Option<PathBuf>,
    pub sweep: Option<String>,
    pub dump_sample: Option<PathBuf>,
}

impl RawSettings {
    /// Values from `self` win over `base`.
    pub fn over(self, base: RawSettings) -> RawSettings {
        RawSettings {
            n: self.n.or(base.n),
            lambda: self.lambda.or(base.lambda),
            epsilon: self.epsilon.or(base.epsilon),
            t: self.t.or(base.t),
            trials: self.trials.or(base.trials),
            seed: self.seed.or(base.seed),
            j_max: self.j_max.or(base.j_max),
            threads: self.threads.or(base.threads),
            full_tree: self.full_tree.or(base.full_tree),
            out: self.out.or(base.out),
            sweep: self.sweep.or(base.sweep),
            dump_sample: self.dump_sample.or(base.dump_sample),
        }
    }
}

/// Parses the flat `key = value` format with `#` comments.
pub fn parse_config_file(path: &Path) -> Result<RawSettings, LabError> {
    let text = std::fs::read_to_string(path)?;
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(LabError::Config(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if map.insert(key.clone(), value).is_some() {
            return Err(LabError::Config(format!(
                "{}:{}: duplicate key {key}",
                path.display(),
                lineno + 1
            )));
        }
    }
    raw_from_map(map, path)
}

fn raw_from_map(map: BTreeMap<String, String>, path: &Path) -> Result<RawSettings, LabError> {
    let mut raw = RawSettings::default();
    for (key, value) in map {
        let fail = |what: &str| {
            LabError::Config(format!(
                "{}: key {key}: {what} (value {value:?})",
                path.display()
            ))
        };
        match key.as_str() {
            "n" => raw.n = Some(value.parse().map_err(|_| fail("expected integer"))?),
            "lambda" => raw.lambda = Some(value.parse().map_err(|_| fail("expected number"))?),
            "epsilon" => raw.epsilon = Some(value.parse().map_err(|_| fail("expected number"))?),
            "t" => raw.t = Some(value.parse().map_err(|_| fail("expected number"))?),
            "trials" => raw.trials = Some(value.parse().map_err(|_| fail("expected integer"))?),
            "seed" => raw.seed = Some(value.parse().map_err(|_| fail("expected integer"))?),
            "j_max" => raw.j_max = Some(value.parse().map_err(|_| fail("expected integer"))?),
            "threads" => raw.threads = Some(value.parse().map_err(|_| fail("expected integer"))?),
            "full_tree" => {
                raw.full_tree = Some(value.parse().map_err(|_| fail("expected true/false"))?)
            }
            "out" => raw.out = Some(PathBuf::from(value)),
            "sweep" => raw.sweep = Some(value),
            "dump_sample" => raw.dump_sample = Some(PathBuf::from(value)),
            _ => {
                return Err(LabError::Config(format!(
                    "{}: unknown key {key}",
                    path.display()
                )))
            }
        }
    }
    Ok(raw)
}

/// Validates merged settings into a runnable config.
pub fn resolve(experiment: Experiment, raw: &RawSettings) -> Result<ExperimentConfig, LabError> {
    let bad = |msg: String| Err(LabError::Config(msg));
    let n = match raw.n {
        Some(n) if n >= 2 => n,
        Some(n) => return bad(format!("n must be at least 2, got {n}")),
        None if experiment.needs_n() => return bad("n is required".into()),
        None => 2,
    };
    let lambda = raw.lambda.unwrap_or(0.0);
    if !lambda.is_finite() {
        return bad(format!("lambda must be finite, got {lambda}"));
    }
    let (epsilon, t) = match (raw.epsilon, raw.t) {
        (Some(_), Some(_)) => return bad("give epsilon or t, not both".into()),
        (Some(e), None) => (e, None),
        (None, Some(t)) => (t * (n as f64).powf(-1.0 / 3.0), Some(t)),
        (None, None) => match experiment {
            Experiment::MstWeight | Experiment::Components | Experiment::KernelCheck => (0.0, None),
            _ => return bad("epsilon (or t) is required".into()),
        },
    };
    if !(0.0..=1.0).contains(&epsilon) {
        return bad(format!("epsilon must lie in [0, 1], got {epsilon}"));
    }
    if experiment == Experiment::BadEdges && epsilon == 0.0 {
        return bad("bad-edges needs epsilon > 0: with epsilon = 0 the shared cycle set is the whole cycle set".into());
    }
    let trials = raw.trials.unwrap_or(100);
    if trials < 1 {
        return bad("trials must be at least 1".into());
    }
    let j_max = raw.j_max.unwrap_or(3);
    if j_max < 1 {
        return bad("j_max must be at least 1".into());
    }
    let threads = raw.threads.unwrap_or(1);
    if threads < 1 {
        return bad("threads must be at least 1".into());
    }
    if experiment.needs_n() && experiment != Experiment::MstWeight {
        let p = mstlab_core::sample::p_critical(n as usize, lambda);
        if !(p > 0.0 && p <= 1.0) {
            return bad(format!(
                "1/n + lambda n^(-4/3) = {p} is not a probability for n = {n}, lambda = {lambda}"
            ));
        }
    }
    Ok(ExperimentConfig {
        experiment,
        n,
        lambda,
        epsilon,
        t,
        trials,
        seed: raw.seed.unwrap_or(0),
        j_max,
        threads,
        full_tree: raw.full_tree.unwrap_or(false),
        out_dir: raw.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        dump_sample: raw.dump_sample.clone(),
    })
}

/// A parameter sweep: which knob, and the values it takes.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub parameter: String,
    pub values: Vec<f64>,
}

pub fn parse_sweep(text: &str) -> Result<SweepSpec, LabError> {
    let Some((param, list)) = text.split_once('=') else {
        return Err(LabError::Config(format!(
            "sweep must look like PARAM=v1,v2,..., got {text:?}"
        )));
    };
    let parameter = param.trim().to_string();
    if !["epsilon", "n", "lambda", "t"].contains(&parameter.as_str()) {
        return Err(LabError::Config(format!(
            "cannot sweep over {parameter:?}; choose epsilon, n, lambda, or t"
        )));
    }
    let mut values = Vec::new();
    for piece in list.split(',') {
        let piece = piece.trim();
        let v: f64 = piece
            .parse()
            .map_err(|_| LabError::Config(format!("bad sweep value {piece:?}")))?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(LabError::Config("sweep needs at least one value".into()));
    }
    Ok(SweepSpec { parameter, values })
}

/// Applies one sweep value on top of the base settings.
pub fn apply_sweep_value(
    base: &RawSettings,
    parameter: &str,
    value: f64,
) -> Result<RawSettings, LabError> {
    let mut raw = base.clone();
    match parameter {
        "epsilon" => {
            raw.epsilon = Some(value);
            raw.t = None;
        }
        "t" => {
            raw.t = Some(value);
            raw.epsilon = None;
        }
        "lambda" => raw.lambda = Some(value),
        "n" => {
            if value <= 0.0 || value.fract() != 0.0 {
                return Err(LabError::Config(format!(
                    "swept n must be a positive integer, got {value}"
                )));
            }
            raw.n = Some(value as u64);
        }
        other => return Err(LabError::Config(format!("cannot sweep over {other:?}"))),
    }
    Ok(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_file(content: &str) -> (tempfile::TempDir, PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg");
        let mut f = std::fs::File::create(&path).unwrap();
        f.write_all(content.as_bytes()).unwrap();
        (dir, path)
    }

    #[test]
    fn file_parsing_and_overrides() {
        let (_d, path) = write_file("# campaign\nn = 500\nepsilon = 0.3\ntrials = 40\n");
        let file = parse_config_file(&path).unwrap();
        assert_eq!(file.n, Some(500));
        let flags = RawSettings {
            epsilon: Some(0.5),
            ..Default::default()
        };
        let merged = flags.over(file);
        assert_eq!(merged.epsilon, Some(0.5));
        assert_eq!(merged.n, Some(500));
        assert_eq!(merged.trials, Some(40));
    }

    #[test]
    fn unknown_keys_fail_fast() {
        let (_d, path) = write_file("n = 10\nbogus = 1\n");
        assert!(matches!(parse_config_file(&path), Err(LabError::Config(_))));
    }

    #[test]
    fn epsilon_and_t_are_exclusive() {
        let raw = RawSettings {
            n: Some(1000),
            epsilon: Some(0.1),
            t: Some(0.5),
            ..Default::default()
        };
        assert!(resolve(Experiment::Sensitivity, &raw).is_err());
        let raw = RawSettings {
            n: Some(1000),
            t: Some(0.5),
            ..Default::default()
        };
        let cfg = resolve(Experiment::Sensitivity, &raw).unwrap();
        assert!((cfg.epsilon - 0.05).abs() < 1e-12);
        assert_eq!(cfg.t, Some(0.5));
        // eps^3 n recovers t^3
        assert!((cfg.eps3n() - 0.125).abs() < 1e-9);
    }

    #[test]
    fn experiment_preconditions() {
        let raw = RawSettings {
            n: Some(1000),
            epsilon: Some(0.0),
            ..Default::default()
        };
        assert!(resolve(Experiment::BadEdges, &raw).is_err());
        assert!(resolve(Experiment::Sensitivity, &raw).is_ok());
        let raw = RawSettings {
            n: Some(1000),
            ..Default::default()
        };
        assert!(resolve(Experiment::Sensitivity, &raw).is_err());
        assert!(resolve(Experiment::MstWeight, &raw).is_ok());
        let no_n = RawSettings::default();
        assert!(resolve(Experiment::Components, &no_n).is_err());
        assert!(resolve(Experiment::KernelCheck, &no_n).is_ok());
    }

    #[test]
    fn sweep_parsing() {
        let s = parse_sweep("epsilon=0.1, 0.2,0.4").unwrap();
        assert_eq!(s.parameter, "epsilon");
        assert_eq!(s.values, vec![0.1, 0.2, 0.4]);
        assert!(parse_sweep("rho=1").is_err());
        assert!(parse_sweep("epsilon=").is_err());
        let base = RawSettings {
            n: Some(100),
            ..Default::default()
        };
        let stepped = apply_sweep_value(&base, "t", 0.3).unwrap();
        assert_eq!(stepped.t, Some(0.3));
        assert!(apply_sweep_value(&base, "n", 10.5).is_err());
    }
}
