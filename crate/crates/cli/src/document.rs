use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use flatlie::{Check, Report, Signature, Vector};

use crate::manifest::{emit_vector, Manifest, RawManifest};

pub const TOOL: &str = "flatlie";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub indices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            check: c.name.clone(),
            note: c.note.clone(),
            verdict: c.verdict.as_str().to_string(),
            witness: c.witness.as_ref().map(|w| WitnessDoc {
                indices: w.indices.clone(),
                left: w.left.as_deref().map(emit_vector),
                right: w.right.as_deref().map(emit_vector),
            }),
        }
    }
}

/// Output of every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub checks: Vec<CheckDoc>,
    /// Computed objects keyed by role; manifests use the manifest syntax.
    pub derived: BTreeMap<String, serde_json::Value>,
    pub input_digest: String,
    pub tool: String,
    pub version: String,
}

impl ReportDocument {
    pub fn new(inputs: &[&[u8]]) -> Self {
        let mut hasher = Sha256::new();
        for bytes in inputs {
            hasher.update((bytes.len() as u64).to_le_bytes());
            hasher.update(bytes);
        }
        Self {
            checks: Vec::new(),
            derived: BTreeMap::new(),
            input_digest: format!("sha256:{}", hex::encode(hasher.finalize())),
            tool: TOOL.into(),
            version: VERSION.into(),
        }
    }

    pub fn add_report(&mut self, report: &Report) {
        self.checks.extend(report.checks.iter().map(CheckDoc::from));
    }

    pub fn add_prefixed(&mut self, prefix: &str, report: &Report) {
        for c in &report.checks {
            let mut doc = CheckDoc::from(c);
            doc.check = format!("{prefix}.{}", doc.check);
            self.checks.push(doc);
        }
    }

    pub fn add_check(&mut self, check: &Check) {
        self.checks.push(CheckDoc::from(check));
    }

    pub fn derive(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable");
        self.derived.insert(key.to_string(), v);
    }

    pub fn derive_manifest(&mut self, key: &str, m: &Manifest) {
        self.derive(key, RawManifest::from(m));
    }

    pub fn derive_signature(&mut self, key: &str, s: Signature) {
        let mut map = BTreeMap::new();
        map.insert("index", s.index);
        map.insert("plus", s.plus);
        map.insert("zero", s.zero);
        self.derive(key, map);
    }

    pub fn derive_vectors(&mut self, key: &str, vs: &[Vector]) {
        let rows: Vec<Vec<String>> = vs.iter().map(|v| emit_vector(v)).collect();
        self.derive(key, rows);
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == "fail").count()
    }

    pub fn warned(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == "warn").count()
    }
}
