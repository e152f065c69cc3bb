//! Reproducible verification runs over parameter grids, emitting
//! versioned reports.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ktheory::SixTermData;
use crate::repn::Cutoff;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    Relations,
    Basis,
    Identities,
    Iso,
    Fiber,
    LemmaGen,
    Ktheory,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 8] = [
        SuiteName::Relations,
        SuiteName::Basis,
        SuiteName::Identities,
        SuiteName::Iso,
        SuiteName::Fiber,
        SuiteName::LemmaGen,
        SuiteName::Ktheory,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Relations => "relations",
            SuiteName::Basis => "basis",
            SuiteName::Identities => "identities",
            SuiteName::Iso => "iso",
            SuiteName::Fiber => "fiber",
            SuiteName::LemmaGen => "lemma-gen",
            SuiteName::Ktheory => "ktheory",
            SuiteName::All => "all",
        }
    }

    /// The concrete suites this name stands for.
    pub fn expand(self) -> Vec<SuiteName> {
        match self {
            SuiteName::All => SuiteName::ALL[..7].to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub theta: Vec<f64>,
    /// Per-suite default when absent.
    pub cutoff: Option<Cutoff>,
    /// Series length; chosen from `p, q` when absent.
    pub k: Option<usize>,
    /// Overrides every numerical threshold when present.
    pub tol: Option<f64>,
    pub seed: u64,
    pub preset: Option<String>,
    pub out: Option<PathBuf>,
    pub format: ReportFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteName::All,
            p: vec![0.0, 0.3, 0.7],
            q: vec![0.0, 0.3, 0.7],
            theta: vec![0.0, 0.5, 0.7071],
            cutoff: None,
            k: None,
            tol: None,
            seed: 0,
            preset: None,
            out: None,
            format: ReportFormat::Json,
        }
    }
}

impl SuiteConfig {
    pub fn for_suite(suite: SuiteName) -> Self {
        SuiteConfig { suite, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, grid) in [("p", &self.p), ("q", &self.q), ("theta", &self.theta)] {
            if grid.is_empty() {
                return Err(Error::Config(format!("empty {name} grid")));
            }
            if let Some(x) = grid.iter().find(|x| !(0.0..1.0).contains(*x)) {
                return Err(Error::Config(format!("{name} = {x} outside [0, 1)")));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("tolerance {t} must be positive")));
            }
        }
        if self.k == Some(0) {
            return Err(Error::Config("K must be at least 1".into()));
        }
        if let Some(c) = self.cutoff {
            Cutoff::new(c.n, c.m).map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Some(name) = &self.preset {
            if !matches!(self.suite, SuiteName::Ktheory | SuiteName::All) {
                return Err(Error::Config(format!("--preset applies to the ktheory suite, not {}", self.suite)));
            }
            SixTermData::preset(name)?;
        }
        Ok(())
    }

    pub(crate) fn tolerance(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    pub(crate) fn cutoff_or(&self, default: Cutoff) -> Cutoff {
        self.cutoff.unwrap_or(default)
    }

    pub(crate) fn grid(&self) -> Vec<(f64, f64, f64)> {
        let mut cells = Vec::new();
        for &p in &self.p {
            for &q in &self.q {
                for &theta in &self.theta {
                    cells.push((p, q, theta));
                }
            }
        }
        cells
    }
}

/// One check: what was measured, against what, and whether it passed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: SuiteName,
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub measured: Value,
    pub threshold: Value,
    pub pass: bool,
}

impl CheckRecord {
    pub fn key(&self) -> String {
        let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}|{}|{}", self.suite, self.name, inputs.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: SuiteName,
    pub config: SuiteConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    pub wall_clock_seconds: f64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// JSON with the timing field zeroed, for reproducibility comparisons.
    pub fn to_canonical_json(&self) -> String {
        VerificationReport { wall_clock_seconds: 0.0, ..self.clone() }.to_json()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "{} {} {} [{}] measured={} threshold={}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.suite,
                r.name,
                inputs.join(" "),
                r.measured,
                r.threshold
            ));
        }
        out.push_str(&format!(
            "summary: {} checks, {} passed, {} failed in {:.2}s\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.wall_clock_seconds
        ));
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => self.to_text(),
        }
    }

    /// Records whose name starts with `prefix`.
    pub fn find<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records.iter().filter(move |r| r.name.starts_with(prefix))
    }
}

pub fn run(config: &SuiteConfig) -> Result<VerificationReport> {
    config.validate()?;
    let start = Instant::now();
    let mut records = Vec::new();
    for suite in config.suite.expand() {
        records.extend(match suite {
            SuiteName::Relations => checks::relations(config)?,
            SuiteName::Basis => checks::basis(config)?,
            SuiteName::Identities => checks::identities(config)?,
            SuiteName::Iso => checks::iso(config)?,
            SuiteName::Fiber => checks::fiber(config)?,
            SuiteName::LemmaGen => checks::lemma_gen(config)?,
            SuiteName::Ktheory => checks::ktheory(config)?,
            SuiteName::All => unreachable!("expanded above"),
        });
    }
    records.sort_by_cached_key(CheckRecord::key);
    let passed = records.iter().filter(|r| r.pass).count();
    let summary = Summary { total: records.len(), passed, failed: records.len() - passed };
    Ok(VerificationReport {
        schema: SCHEMA_VERSION.to_string(),
        suite: config.suite,
        config: config.clone(),
        records,
        summary,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}
