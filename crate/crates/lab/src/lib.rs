//! Experiment harness around `mstlab-core`: configuration, trial scheduling,
//! CSV/JSON reports, and the command-line front end.

pub mod cli;
pub mod config;
pub mod experiments;
pub mod report;
pub mod sampledump;
pub mod spacefile;
pub mod stats;
pub mod svg;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    /// Bad parameter or config value; maps to exit code 3.
    #[error("{0}")]
    Config(String),
    /// Malformed input file; maps to exit code 3.
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Core(String),
}

impl From<mstlab_core::graph::GraphError> for LabError {
    fn from(e: mstlab_core::graph::GraphError) -> Self {
        LabError::Core(format!("{e:?}"))
    }
}

impl From<mstlab_core::sample::SampleError> for LabError {
    fn from(e: mstlab_core::sample::SampleError) -> Self {
        LabError::Core(format!("{e:?}"))
    }
}

impl From<mstlab_core::msf::MsfError> for LabError {
    fn from(e: mstlab_core::msf::MsfError) -> Self {
        LabError::Core(format!("{e:?}"))
    }
}

impl From<mstlab_core::metric::MetricError> for LabError {
    fn from(e: mstlab_core::metric::MetricError) -> Self {
        LabError::Core(format!("{e:?}"))
    }
}

impl LabError {
    /// Process exit code for this error. Usage errors from the argument
    /// parser exit with 2 before any of this runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Parse(_) => 3,
            LabError::Io(_) | LabError::Core(_) => 1,
        }
    }
}
