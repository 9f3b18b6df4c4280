//! JSON interchange, text rendering, reference tables, sweeps and the
//! command-line front end for [`shellkit_core`].

pub mod cli;
pub mod golden;
pub mod io;
pub mod render;
pub mod sweep;

pub use shellkit_core as core;

use std::fmt;

#[derive(Debug)]
pub enum Error {
    Core(shellkit_core::Error),
    Json(serde_json::Error),
    Io(std::io::Error),
    /// Malformed or inconsistent input.
    Input(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Core(e) => write!(f, "{e}"),
            Error::Json(e) => write!(f, "invalid JSON: {e}"),
            Error::Io(e) => write!(f, "{e}"),
            Error::Input(s) => f.write_str(s),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Core(e) => Some(e),
            Error::Json(e) => Some(e),
            Error::Io(e) => Some(e),
            Error::Input(_) => None,
        }
    }
}

impl From<shellkit_core::Error> for Error {
    fn from(e: shellkit_core::Error) -> Self {
        Error::Core(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
