//! JSON run configuration.

use std::path::{Path, PathBuf};

use hardylab::corpus::{default_corpus, CorpusSpec};
use hardylab::functionals::{CaseId, EvalOptions, Grid};
use hardylab::Tolerance;
use serde::Deserialize;

use crate::table::Format;

pub const SCHEMA: &str = "1";

/// `"all"`, `"identity"`, a single case id, or a list of case ids.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum CaseSelection {
    One(String),
    Many(Vec<String>),
}

impl CaseSelection {
    pub fn resolve(&self) -> Result<Vec<CaseId>, String> {
        let names = match self {
            CaseSelection::One(s) => vec![s.clone()],
            CaseSelection::Many(v) => v.clone(),
        };
        let mut out = Vec::new();
        for name in &names {
            match name.trim().to_ascii_lowercase().as_str() {
                "all" => out.extend(CaseId::ALL),
                "identity" => out.extend(CaseId::IDENTITY),
                _ => out.push(CaseId::parse(name).map_err(|e| e.to_string())?),
            }
        }
        let mut seen = std::collections::HashSet::new();
        out.retain(|c| seen.insert(*c));
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolConfig {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    pub cases: Option<CaseSelection>,
    pub grid: Option<Grid>,
    /// Corpus ids such as `bump:R=1,m=4`.
    pub corpus: Option<Vec<String>>,
    pub tolerance: Option<TolConfig>,
    /// Scales for sharpness sweeps.
    pub scales: Option<Vec<f64>>,
    /// Relative perturbation of every sharp constant, for harness self-tests.
    #[serde(default)]
    pub perturb_constant: f64,
    #[serde(default)]
    pub oracle: bool,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))?;
        if cfg.schema != SCHEMA {
            return Err(format!("unsupported config schema \"{}\" (expected \"{SCHEMA}\")", cfg.schema));
        }
        Ok(cfg)
    }

    pub fn corpus(&self) -> Result<Vec<CorpusSpec>, String> {
        match &self.corpus {
            None => Ok(default_corpus()),
            Some(ids) => ids.iter().map(|s| CorpusSpec::parse(s).map_err(|e| e.to_string())).collect(),
        }
    }

    pub fn eval_options(&self) -> Result<EvalOptions, String> {
        let mut opts = EvalOptions { oracle: self.oracle, ..EvalOptions::default() };
        if let Some(t) = self.tolerance {
            if !(t.rel > 0.0 && t.abs >= 0.0) {
                return Err(format!("tolerance must have rel > 0 and abs >= 0, got {t:?}"));
            }
            opts.tol = Tolerance { rel: t.rel, abs: t.abs };
        }
        if !(self.perturb_constant.is_finite() && self.perturb_constant > -1.0) {
            return Err(format!("perturb_constant must be > -1, got {}", self.perturb_constant));
        }
        opts.constant_factor = 1.0 + self.perturb_constant;
        Ok(opts)
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            schema: SCHEMA.into(),
            cases: None,
            grid: None,
            corpus: None,
            tolerance: None,
            scales: None,
            perturb_constant: 0.0,
            oracle: false,
            out: None,
            format: None,
        }
    }
}
