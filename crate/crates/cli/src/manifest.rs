//! Run manifests: what was run, on which inputs, with which caps, and what came out.

use opcohom::labeling::{Caps, GammaPreset};
use opcohom::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub preset: Option<GammaPreset>,
    pub caps: Option<Caps>,
    /// Input path ↦ SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    /// Output role ↦ SHA-256 of its bytes; destinations are left out so reruns compare equal.
    pub outputs: BTreeMap<String, String>,
    pub versions: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: Vec<String>) -> Self {
        let versions = BTreeMap::from([("opcohom".to_string(), env!("CARGO_PKG_VERSION").to_string()), ("format".to_string(), "1".to_string())]);
        RunManifest { command, versions, ..Default::default() }
    }

    /// Reads a file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.insert(path.display().to_string(), sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| Error::Parse(format!("{} is not UTF-8", path.display())))
    }

    pub fn read_json(&mut self, path: &Path) -> Result<serde_json::Value> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn record_output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.insert(name.to_string(), sha256_hex(bytes));
    }
}
