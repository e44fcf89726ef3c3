use std::fmt::Debug;
use std::path::PathBuf;

use epr_universe::{CosmologyError, MacrotimeError, SpectralError, SymmetryError, UniverseError};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or arguments that clap could not catch; exits with 2.
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{message}")]
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Usage(_) => "Usage".into(),
            CliError::Read { .. } => "Read".into(),
            CliError::Write { .. } => "Write".into(),
            CliError::Parse { .. } => "Parse".into(),
            CliError::Domain { kind, .. } => kind.clone(),
        }
    }

    /// `{"error":{"kind":..,"message":..}}` on one line.
    pub fn to_json(&self) -> String {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}}).to_string()
    }

    fn domain<E: Debug + std::fmt::Display>(e: E) -> Self {
        CliError::Domain {
            kind: variant_name(&format!("{e:?}")),
            message: e.to_string(),
        }
    }
}

const WRAPPERS: [&str; 4] = ["Universe", "Macrotime", "Symmetry", "Spectral"];

/// Innermost variant name of a debug-printed error, skipping the
/// transparent wrappers that nest one module's error inside another's.
fn variant_name(debug: &str) -> String {
    let mut rest = debug;
    loop {
        let end = rest.find(['(', '{', ' ', ')']).unwrap_or(rest.len());
        let head = &rest[..end];
        if WRAPPERS.contains(&head) && rest[end..].starts_with('(') {
            rest = &rest[end + 1..];
        } else {
            return head.to_string();
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain(e)
            }
        }
    )*};
}

domain_from!(UniverseError, SymmetryError, SpectralError, MacrotimeError, CosmologyError);
