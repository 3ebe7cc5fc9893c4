//! CLI error-to-exit-code mapping: 1 for usage/IO problems, 2 for
//! degenerate inputs where the requested measure is undefined.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(emcor::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(e) => match e {
                emcor::Error::UndefinedECor
                | emcor::Error::UndefinedDCor
                | emcor::Error::ZeroVariance => 2,
                _ => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<emcor::Error> for CliError {
    fn from(e: emcor::Error) -> Self {
        CliError::Core(e)
    }
}
