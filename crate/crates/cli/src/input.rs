//! Reading input files and recording their digests.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use kempf_core::{Error, Polynomial};
use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};

/// Why a run produced no answer.
#[derive(Debug)]
pub enum Failure {
    /// Bad files, bad arguments, or inputs violating a precondition.
    Input(String),
    /// Anything that is our fault, e.g. failing to write an output file.
    Internal(String),
    /// The deadline given by `--timeout` passed.
    Timeout,
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) | Failure::Timeout => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m.clone(),
            Failure::Timeout => "timeout exceeded".to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Interrupted => Failure::Timeout,
            other => Failure::Input(other.to_string()),
        }
    }
}

/// SHA-256 digests of every input, keyed by role.
#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: BTreeMap<String, String>,
}

impl Inputs {
    pub fn record(&mut self, role: &str, bytes: &[u8]) {
        self.digests.insert(role.to_string(), hex::encode(Sha256::digest(bytes)));
    }

    pub fn read(&mut self, role: &str, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        self.record(role, text.as_bytes());
        Ok(text)
    }

    pub fn json<T: DeserializeOwned>(&mut self, role: &str, path: &Path) -> Result<T, Failure> {
        let text = self.read(role, path)?;
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }

    /// One polynomial per line; blank lines and `#` comments are skipped.
    pub fn ideal(&mut self, role: &str, path: &Path) -> Result<Vec<Polynomial>, Failure> {
        let text = self.read(role, path)?;
        parse_ideal(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

pub fn parse_ideal(text: &str) -> Result<Vec<Polynomial>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(line.parse().map_err(|e: Error| format!("line {}: {e}", n + 1))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_lines() {
        let gens = parse_ideal("# comment\nx_1^2 - x_2^2\n\n  x_1*x_2 \n").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].to_string(), "x_1*x_2");
        let err = parse_ideal("x_1\nx_1 +* 2\n").unwrap_err();
        assert!(err.starts_with("line 2:"), "{err}");
    }

    #[test]
    fn digests_are_sha256() {
        let mut inputs = Inputs::default();
        inputs.record("a", b"abc");
        assert_eq!(inputs.digests["a"], "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
