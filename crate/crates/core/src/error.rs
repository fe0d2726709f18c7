use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("failed to parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid air data: {0}")]
    InvalidAirData(String),

    #[error("pitch attitude {theta_deg:.3} deg is within the Euler singularity margin")]
    Singularity { theta_deg: f64, state: [f64; 12] },

    #[error("integration fault: non-finite {0}")]
    IntegrationFault(String),

    #[error("trim did not converge after {iterations} iterations (residual {residual:.3e})")]
    TrimFailure { iterations: usize, residual: f64 },

    #[error("rudder has no yaw authority (a_psi2 = 0)")]
    UncontrollablePlant,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("bearing undefined: position coincides with orbit center")]
    UndefinedBearing,

    #[error("{mode} run failed at t = {time:.2} s: {message}")]
    RunFault {
        mode: String,
        time: f64,
        message: String,
        category: &'static str,
    },
}

impl Error {
    /// Short category tag used for CLI diagnostics and exit codes.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Config(_) | Error::Validation(_) | Error::Parse { .. } => "config",
            Error::FileNotFound(_) | Error::Io { .. } => "io",
            Error::InvalidAirData(_) | Error::Singularity { .. } | Error::IntegrationFault(_) => "dynamics",
            Error::TrimFailure { .. } => "trim",
            Error::UncontrollablePlant => "control",
            Error::Domain(_) | Error::InsufficientData { .. } => "metrics",
            Error::UndefinedBearing => "guidance",
            Error::RunFault { category, .. } => category,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "config" => 2,
            "io" => 3,
            "dynamics" => 4,
            "trim" => 5,
            "control" => 6,
            "guidance" => 7,
            _ => 8,
        }
    }
}
