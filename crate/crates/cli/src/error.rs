//! Process-level error categories and their exit codes.

use std::fmt;

/// Exit code 2: bad flags, bad config keys, constraint violations.
/// Exit code 3: a numerical routine failed to converge or was fed an
/// out-of-domain request discovered only at compute time.
/// Exit code 4: the filesystem refused a read or write.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "configuration error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "io failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}
