use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::analytic::DensityShape;
use crate::error::{Error, Result};
use crate::params::{match_gpe_to_hgpe, PhysicalParams, System};
use crate::profile::Branch;

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "t",
    "V",
    "U",
    "rho0",
    "vbar",
    "grid.n",
    "grid.length",
    "dt",
    "steps",
    "output.dir",
    "system",
    "branch",
    "shape",
    "snapshot.every",
    "sweep.vbar",
    "sweep.pde",
    "sound.eps",
    "input",
    "column",
];

/// Environment variable that overrides `output.dir`.
pub const OUT_ENV: &str = "SOLITONLAB_OUT";

/// Flat `key = value` configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Config {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Config::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::InvalidValue {
                key: format!("line {}", no + 1),
                value: raw.to_string(),
            })?;
            c.set(k.trim(), v.trim())?;
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let mut c = Config::new();
        for (k, v) in map {
            c.set(k, v)?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !KEYS.contains(&key) {
            return Err(Error::UnknownKey(key.to_string()));
        }
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Applies a `key=value` override.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair.split_once('=').ok_or_else(|| Error::InvalidValue {
            key: "--set".into(),
            value: pair.to_string(),
        })?;
        self.set(k.trim(), v.trim())
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn parse_as<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| Error::InvalidValue {
                key: key.to_string(),
                value: v.to_string(),
            }),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.parse_as(key)?.unwrap_or(default))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64> {
        self.parse_as(key)?.ok_or_else(|| Error::MissingKey(key.to_string()))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.parse_as(key)?.unwrap_or(default))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize> {
        self.parse_as(key)?.ok_or_else(|| Error::MissingKey(key.to_string()))
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        Ok(self.parse_as(key)?.unwrap_or(default))
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.get(key) else { return Ok(None) };
        v.split(',')
            .map(|s| {
                s.trim().parse().map_err(|_| Error::InvalidValue {
                    key: key.to_string(),
                    value: v.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    fn parse_with<T>(&self, key: &str, default: T, f: impl Fn(&str) -> std::result::Result<T, String>) -> Result<T> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => f(v).map_err(|_| Error::InvalidValue {
                key: key.to_string(),
                value: v.to_string(),
            }),
        }
    }

    pub fn system(&self) -> Result<System> {
        self.parse_with("system", System::Hgpe, str::parse)
    }

    pub fn branch(&self) -> Result<Branch> {
        self.parse_with("branch", Branch::Dark, str::parse)
    }

    pub fn shape(&self) -> Result<DensityShape> {
        self.parse_with("shape", DensityShape::Exact, str::parse)
    }

    /// Parameters for `system`. Without `U`, the condensate side uses the
    /// parameters matched to the half-filled hard-core set.
    pub fn params(&self, system: System) -> Result<PhysicalParams> {
        let hgpe = PhysicalParams {
            hopping: self.f64_or("t", 1.0)?,
            nn_attraction: self.require_f64("V")?,
            onsite_repulsion: self.f64_or("U", 0.0)?,
            background_density: self.f64_or("rho0", 0.5)?,
        };
        match (system, self.get("U")) {
            (System::Hgpe, _) => Ok(hgpe),
            (System::Gpe, Some(_)) => Ok(PhysicalParams {
                background_density: self.f64_or("rho0", 0.25)?,
                ..hgpe
            }),
            (System::Gpe, None) => match_gpe_to_hgpe(&hgpe),
        }
    }

    /// Output directory: `flag`, then the environment, then `output.dir`, then `out`.
    pub fn output_dir(&self, flag: Option<&Path>) -> PathBuf {
        if let Some(p) = flag {
            return p.to_path_buf();
        }
        if let Some(p) = std::env::var_os(OUT_ENV).filter(|s| !s.is_empty()) {
            return PathBuf::from(p);
        }
        PathBuf::from(self.get("output.dir").unwrap_or("out"))
    }

    /// SHA-256 of the sorted `key=value` lines, excluding the output location.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in self.entries.iter().filter(|(k, _)| k.as_str() != "output.dir") {
            h.update(k.as_bytes());
            h.update(b"=");
            h.update(v.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blanks() {
        let c = Config::parse("# header\nt = 1\n\nV=0.3333 # trailing\n").unwrap();
        assert_eq!(c.get("V"), Some("0.3333"));
        assert_eq!(c.f64_or("t", 0.0).unwrap(), 1.0);
    }

    #[test]
    fn unknown_key_is_named() {
        let e = Config::parse("vbar=0.5\nfoo=1\n").unwrap_err();
        assert!(matches!(&e, Error::UnknownKey(k) if k == "foo"));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn missing_and_invalid() {
        let c = Config::parse("steps=abc").unwrap();
        assert!(matches!(c.require_f64("dt"), Err(Error::MissingKey(k)) if k == "dt"));
        assert!(matches!(c.require_usize("steps"), Err(Error::InvalidValue { .. })));
    }

    #[test]
    fn hash_ignores_order_and_output() {
        let a = Config::parse("t=1\nV=0.3\noutput.dir=a").unwrap();
        let b = Config::parse("V=0.3\nt=1\noutput.dir=b").unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn condensate_side_defaults_to_matched_parameters() {
        let c = Config::parse("V=0.3333333333333333").unwrap();
        let g = c.params(System::Gpe).unwrap();
        assert_eq!(g.background_density, 0.25);
        assert!((g.onsite_repulsion - 4.0 / 3.0).abs() < 1e-12);
    }
}
