use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Node,
    Curve,
    Icis,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    #[default]
    All,
    NodeOnly,
    CurveOnly,
}

/// Everything a run depends on; echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub kind: Kind,
    #[serde(default)]
    pub p: Option<usize>,
    #[serde(default)]
    pub q: Option<usize>,
    #[serde(default)]
    pub r: Option<usize>,
    /// Base point as `num/den` strings.
    #[serde(default)]
    pub base: Option<Vec<String>>,
    #[serde(default)]
    pub trunc: Option<i64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub g: Vec<String>,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub suite: Suite,
    #[serde(default)]
    pub mutate: bool,
}

pub fn default_samples() -> usize {
    5
}

impl RunConfig {
    pub fn new(kind: Kind) -> Self {
        RunConfig {
            kind,
            p: None,
            q: None,
            r: None,
            base: None,
            trunc: None,
            samples: default_samples(),
            seed: 0,
            out: None,
            g: vec![],
            f: None,
            suite: Suite::All,
            mutate: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Counterexample data for failed checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: None, witness: None }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        if !self.pass {
            self.witness = Some(w);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: Kind,
    pub config: RunConfig,
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub artifacts: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: config.kind,
            config: config.clone(),
            conventions: BTreeMap::new(),
            checks: vec![],
            artifacts: BTreeMap::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
