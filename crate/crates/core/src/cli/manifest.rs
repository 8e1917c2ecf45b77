use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::params::{DerivedGroups, PhysicalParams};
use crate::pde::{Drift, Grid1D};

pub const MANIFEST_FILE: &str = "manifest.json";

/// Record of one run, written after every other artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub config_hash: String,
    pub params: Option<PhysicalParams>,
    pub groups: Option<DerivedGroups>,
    pub scheme: Option<String>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub grid: Option<Grid1D>,
    /// Continuity-law convention constant.
    pub kappa: f64,
    pub drift: Option<Drift>,
    /// Artifacts relative to the output directory.
    pub files: Vec<String>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(dir.join(MANIFEST_FILE), text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

pub(crate) fn now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
