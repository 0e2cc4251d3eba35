use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::Path;

use crate::CliError;

/// Everything needed to rerun a report: no timestamps, no thread count.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: String,
    pub seed: u64,
    /// Every flag of the subcommand, defaults included.
    pub flags: Value,
    /// Input path to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64, flags: &impl Serialize) -> Self {
        RunManifest {
            tool: "expanders",
            version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            seed,
            flags: serde_json::to_value(flags).expect("flags serialize"),
            inputs: BTreeMap::new(),
        }
    }

    /// Reads an input file and records its digest.
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        self.inputs.insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{} is not UTF-8", path.display())))
    }

    /// `{"manifest": …}` merged with the fields of `report`. Non-object
    /// reports go under `"report"`.
    pub fn json(&self, report: &impl Serialize) -> String {
        let mut out = Map::new();
        out.insert("manifest".into(), serde_json::to_value(self).expect("manifest serializes"));
        match serde_json::to_value(report).expect("report serializes") {
            Value::Object(fields) => out.extend(fields),
            other => {
                out.insert("report".into(), other);
            }
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(out)).expect("json");
        s.push('\n');
        s
    }

    /// The CSV body preceded by a `# manifest` comment line.
    pub fn csv(&self, body: &str) -> String {
        format!("# manifest {}\n{body}", serde_json::to_string(self).expect("manifest serializes"))
    }
}
