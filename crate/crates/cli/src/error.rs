use std::fmt;

/// Command failures, each tagged with a stable machine-parsable code.  The
/// top level prints them as `error[CODE] message` on stderr and maps the
/// code to the process exit status.
#[derive(Debug)]
pub enum CliError {
    /// Flag/config validation problems.
    Usage(String),
    /// Filesystem trouble (missing files, unwritable outputs).
    Io(String),
    /// Malformed dataset, gene map, or model files.
    Data(String),
    /// A fit, study, or curve computation failed.
    Run(String),
    /// A theory bound was violated beyond tolerance.
    Bounds(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "E_USAGE",
            CliError::Io(_) => "E_IO",
            CliError::Data(_) => "E_DATA",
            CliError::Run(_) => "E_RUN",
            CliError::Bounds(_) => "E_BOUNDS",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Data(_) => 4,
            CliError::Run(_) => 5,
            CliError::Bounds(_) => 6,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m)
            | CliError::Io(m)
            | CliError::Data(m)
            | CliError::Run(m)
            | CliError::Bounds(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<enn_pipeline::PipelineError> for CliError {
    fn from(err: enn_pipeline::PipelineError) -> Self {
        match err {
            enn_pipeline::PipelineError::InvalidConfig(m) => CliError::Usage(m),
            enn_pipeline::PipelineError::UnknownMethod(m) => {
                CliError::Usage(format!("unknown fit method `{m}`"))
            }
            other => CliError::Run(other.to_string()),
        }
    }
}

impl From<enn_simgen::SimError> for CliError {
    fn from(err: enn_simgen::SimError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<enn_models::ModelError> for CliError {
    fn from(err: enn_models::ModelError) -> Self {
        CliError::Data(err.to_string())
    }
}

pub fn io_err(context: &str, err: std::io::Error) -> CliError {
    CliError::Io(format!("{context}: {err}"))
}
