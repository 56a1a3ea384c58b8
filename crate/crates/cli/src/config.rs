//! Configuration plumbing: explicit unit suffixes, plain `key = value`
//! files, flag-over-file resolution, and canonical emission so that
//! parse(emit(config)) returns the same configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::error::CliError;

// ---------------------------------------------------------------------------
// Unit-suffixed scalars
// ---------------------------------------------------------------------------

/// Length in microns; written "28um".
pub fn parse_micron(s: &str) -> Result<f64, String> {
    let body = s
        .trim()
        .strip_suffix("um")
        .ok_or_else(|| format!("expected a micron length like '28um', got '{s}'"))?;
    body.trim()
        .parse::<f64>()
        .map_err(|_| format!("malformed number '{body}' (unit um)"))
}

/// Energy in pico-electronvolt; written "-1peV".
pub fn parse_pev(s: &str) -> Result<f64, String> {
    let body = s
        .trim()
        .strip_suffix("peV")
        .ok_or_else(|| format!("expected an energy like '-1peV', got '{s}'"))?;
    body.trim()
        .parse::<f64>()
        .map_err(|_| format!("malformed number '{body}' (unit peV)"))
}

/// One instant in milliseconds; written "1.5ms".
pub fn parse_ms(s: &str) -> Result<f64, String> {
    let body = s
        .trim()
        .strip_suffix("ms")
        .ok_or_else(|| format!("expected a time like '1.5ms', got '{s}'"))?;
    body.trim()
        .parse::<f64>()
        .map_err(|_| format!("malformed number '{body}' (unit ms)"))
}

/// Comma-separated list of instants: "0ms,1.5ms,3ms".
pub fn parse_ms_list(s: &str) -> Result<Vec<f64>, String> {
    let parts: Result<Vec<f64>, String> = s.split(',').map(parse_ms).collect();
    let list = parts?;
    if list.is_empty() {
        return Err("expected at least one time".into());
    }
    Ok(list)
}

pub fn parse_plain_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("malformed number '{s}'"))
}

pub fn parse_usize(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("malformed integer '{s}'"))
}

pub fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(format!("expected 'true' or 'false', got '{other}'")),
    }
}

// ---------------------------------------------------------------------------
// Canonical emission (exact round trip through 17 significant digits)
// ---------------------------------------------------------------------------

pub fn emit_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn emit_micron(x: f64) -> String {
    format!("{x:.16e}um")
}

pub fn emit_pev(x: f64) -> String {
    format!("{x:.16e}peV")
}

pub fn emit_ms(x: f64) -> String {
    format!("{x:.16e}ms")
}

pub fn emit_ms_list(xs: &[f64]) -> String {
    xs.iter().map(|x| emit_ms(*x)).collect::<Vec<_>>().join(",")
}

pub fn emit_bool(b: bool) -> String {
    if b { "true".into() } else { "false".into() }
}

// ---------------------------------------------------------------------------
// key = value files with flag-over-file resolution
// ---------------------------------------------------------------------------

/// A loaded configuration file (possibly empty when none was given) that
/// tracks which keys the active command consumed, so leftovers can be
/// reported by name.
pub struct Resolver {
    origin: String,
    file: BTreeMap<String, String>,
    used: BTreeSet<String>,
}

impl Resolver {
    pub fn empty() -> Self {
        Resolver {
            origin: String::new(),
            file: BTreeMap::new(),
            used: BTreeSet::new(),
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Io(format!("cannot read config '{}': {e}", path.display()))
        })?;
        let mut file = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config '{}' line {}: expected 'key = value', got '{line}'",
                    path.display(),
                    idx + 1
                )));
            };
            let key = k.trim().to_string();
            if key.is_empty() {
                return Err(CliError::Usage(format!(
                    "config '{}' line {}: empty key",
                    path.display(),
                    idx + 1
                )));
            }
            if file.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!(
                    "config '{}': duplicate key '{key}'",
                    path.display()
                )));
            }
        }
        Ok(Resolver {
            origin: path.display().to_string(),
            file,
            used: BTreeSet::new(),
        })
    }

    pub fn from_optional(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(p) => Self::from_file(p),
            None => Ok(Self::empty()),
        }
    }

    /// The `command` entry, reserved for selecting the subcommand.
    pub fn command_entry(&mut self) -> Option<String> {
        self.used.insert("command".into());
        self.file.get("command").cloned()
    }

    /// The `output` entry, used when no --output flag was given.
    pub fn output_entry(&mut self) -> Option<String> {
        self.used.insert("output".into());
        self.file.get("output").cloned()
    }

    /// Effective value of one parameter: the flag when given, else the
    /// file entry (parsed with the same grammar as the flag), else the
    /// default.
    pub fn take<T>(
        &mut self,
        key: &str,
        flag: Option<T>,
        default: T,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<T, CliError> {
        self.used.insert(key.to_string());
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.file.get(key) {
            Some(raw) => {
                parse(raw).map_err(|e| CliError::Usage(format!("key '{key}': {e}")))
            }
            None => Ok(default),
        }
    }

    /// Reject keys that the active command does not know.  `version` is
    /// accepted and ignored so that exported metadata blocks can be fed
    /// back verbatim.
    pub fn finish(mut self) -> Result<(), CliError> {
        self.used.insert("version".into());
        if let Some(k) = self.file.keys().find(|k| !self.used.contains(*k)) {
            let origin = if self.origin.is_empty() {
                String::new()
            } else {
                format!(" in config '{}'", self.origin)
            };
            return Err(CliError::Usage(format!("unknown key '{k}'{origin}")));
        }
        Ok(())
    }
}
