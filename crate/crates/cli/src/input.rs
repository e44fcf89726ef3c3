//! Loading complexes and groups from files. A file may hold the bare value
//! or any report whose `result` (or `result.complex`) holds it.

use std::path::{Path, PathBuf};

use epr_universe::symmetry::{cyclic_group, product_of_cyclic, symmetric_group};
use epr_universe::{EprComplex, PermGroup};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::CliError;

fn read_value(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Descends through `result` and `complex` wrappers until `marker` appears.
fn unwrap_to(mut v: Value, marker: &str) -> Value {
    loop {
        if v.get(marker).is_some() {
            return v;
        }
        match v.get("result").or_else(|| v.get("complex")) {
            Some(inner) => v = inner.clone(),
            None => return v,
        }
    }
}

fn load<T: DeserializeOwned>(path: &Path, marker: &str) -> Result<T, CliError> {
    let v = unwrap_to(read_value(path)?, marker);
    serde_json::from_value(v).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn load_complex(path: &Path) -> Result<EprComplex, CliError> {
    load(path, "n_phi")
}

pub fn load_group(path: &Path) -> Result<PermGroup, CliError> {
    load(path, "generators")
}

/// Exactly `count` inputs, or a usage error naming the command.
pub fn expect_inputs<'a>(inputs: &'a [PathBuf], count: usize, command: &str) -> Result<&'a [PathBuf], CliError> {
    if inputs.len() == count {
        Ok(inputs)
    } else {
        Err(CliError::Usage(format!(
            "{command} takes {count} --in file(s), got {}",
            inputs.len()
        )))
    }
}

/// `trivial`, `zN`, `sN` or a product such as `z2xz2`.
pub fn named_group(name: &str) -> Result<PermGroup, CliError> {
    let bad = || CliError::Usage(format!("unknown group {name:?}; expected trivial, zN, zAxzB... or sN"));
    let lower = name.to_ascii_lowercase();
    if lower == "trivial" {
        return Ok(PermGroup::trivial(1));
    }
    if let Some(n) = lower.strip_prefix('s') {
        let n: usize = n.parse().map_err(|_| bad())?;
        return if n >= 1 { Ok(symmetric_group(n)) } else { Err(bad()) };
    }
    let factors = lower
        .split('x')
        .map(|f| f.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()).filter(|&n| n >= 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(bad)?;
    Ok(match factors.as_slice() {
        [n] => cyclic_group(*n),
        _ => product_of_cyclic(&factors),
    })
}
