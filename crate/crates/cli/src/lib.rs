//! Command-line front end: experiment orchestration, persisted reports
//! (CSV/JSON/SVG), and the acceptance suite behind `verify`.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod plot;
pub mod reports;

/// Exit-code classification for every failure the front end can produce.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or config; nothing was computed.
    Validation(String),
    /// A computation failed (budget, saturation, numerical guard).
    Computation(String),
    /// The acceptance suite ran and at least one criterion failed.
    Acceptance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Computation(_) => 3,
            CliError::Acceptance(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Computation(m) | CliError::Acceptance(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self {
            CliError::Validation(_) => "validation error",
            CliError::Computation(_) => "computation error",
            CliError::Acceptance(_) => "acceptance failure",
        };
        write!(f, "{tag}: {}", self.message())
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

pub fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn computation(msg: impl Into<String>) -> CliError {
    CliError::Computation(msg.into())
}
