use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violated a type invariant.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// An empirical fit was evaluated outside the range where it is defined.
    #[error("{model} is undefined at {wavelength_nm} nm: {reason}")]
    Domain {
        model: &'static str,
        wavelength_nm: f64,
        reason: String,
    },

    #[error("no absorption entry for carrier `{label}`")]
    MissingAbsorption { label: String },

    #[error("unknown {kind} `{name}` (valid: {})", valid.join(", "))]
    UnknownPreset {
        kind: &'static str,
        name: String,
        valid: Vec<&'static str>,
    },

    #[error("scenario parse error at line {line}{}: {message}", key.as_ref().map(|k| format!(", key `{k}`")).unwrap_or_default())]
    Parse {
        line: usize,
        key: Option<String>,
        message: String,
    },

    /// Zero detection probability: no number of pulses reaches the block size.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("no grid point yields a positive key")]
    EmptyFeasibleSet,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }
}

/// Shorthand for precondition checks on numeric inputs.
pub(crate) fn ensure(cond: bool, what: &'static str, reason: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(what, reason()))
    }
}
