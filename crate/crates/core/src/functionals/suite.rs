//! Parameter grids and batch verification over them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::registry::{CaseId, InequalityCase};
use super::report::{evaluate_case_with, EvalOptions, VerificationReport};
use crate::constants::CaseParams;
use crate::corpus::CorpusSpec;
use crate::error::{Error, Result};
use crate::exec;
use crate::geometry::ModelManifold;

/// A grid value for `beta`: a number, or the midpoint `(n - p)/2` of the
/// Hardy range, resolved per cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BetaRepr", into = "BetaRepr")]
pub enum BetaChoice {
    Value(f64),
    HalfGap,
}

const HALF_GAP: &str = "(n-p)/2";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BetaRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<BetaRepr> for BetaChoice {
    type Error = String;

    fn try_from(r: BetaRepr) -> std::result::Result<Self, String> {
        match r {
            BetaRepr::Number(v) => Ok(BetaChoice::Value(v)),
            BetaRepr::Text(s) if s.replace(' ', "") == HALF_GAP => Ok(BetaChoice::HalfGap),
            BetaRepr::Text(s) => Err(format!("beta must be a number or \"{HALF_GAP}\", got \"{s}\"")),
        }
    }
}

impl From<BetaChoice> for BetaRepr {
    fn from(b: BetaChoice) -> Self {
        match b {
            BetaChoice::Value(v) => BetaRepr::Number(v),
            BetaChoice::HalfGap => BetaRepr::Text(HALF_GAP.into()),
        }
    }
}

impl std::str::FromStr for BetaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let repr = match s.trim().parse::<f64>() {
            Ok(v) => BetaRepr::Number(v),
            Err(_) => BetaRepr::Text(s.to_string()),
        };
        BetaChoice::try_from(repr).map_err(|reason| Error::Parse { input: s.to_string(), reason })
    }
}

impl BetaChoice {
    pub fn resolve(&self, n: u32, p: f64) -> f64 {
        match *self {
            BetaChoice::Value(v) => v,
            BetaChoice::HalfGap => (n as f64 - p) / 2.0,
        }
    }
}

impl fmt::Display for BetaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaChoice::Value(v) => write!(f, "{v}"),
            BetaChoice::HalfGap => f.write_str(HALF_GAP),
        }
    }
}

/// Cartesian product of parameter lists. `l` only matters for the
/// higher-order cases. Missing lists deserialize to their defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub n: Vec<u32>,
    pub p: Vec<f64>,
    pub beta: Vec<BetaChoice>,
    pub b: Vec<f64>,
    pub l: Vec<usize>,
}

impl Default for Grid {
    /// `n in {3,4,5,8}`, `p in {1.5,2,3}`, `beta in {-1,0,1,(n-p)/2}`,
    /// `b in {0,1}`, `l in {1,2}`.
    fn default() -> Self {
        Grid {
            n: vec![3, 4, 5, 8],
            p: vec![1.5, 2.0, 3.0],
            beta: vec![
                BetaChoice::Value(-1.0),
                BetaChoice::Value(0.0),
                BetaChoice::Value(1.0),
                BetaChoice::HalfGap,
            ],
            b: vec![0.0, 1.0],
            l: vec![1, 2],
        }
    }
}

impl Grid {
    /// Every parameter combination, in `n, p, beta, b, l` order.
    pub fn params(&self) -> Vec<CaseParams> {
        let mut out = Vec::new();
        for &n in &self.n {
            for &p in &self.p {
                for beta in &self.beta {
                    for &b in &self.b {
                        for &l in &self.l {
                            out.push(CaseParams::new(n, p, beta.resolve(n, p), b, l));
                        }
                    }
                }
            }
        }
        out
    }
}

/// What happened to one `(case, params, corpus)` cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CellOutcome {
    Report(Box<VerificationReport>),
    /// Parameters outside the case's range, or a profile the case cannot take.
    Skipped { reason: String },
    /// Anything else: the cell could not be evaluated.
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub case: CaseId,
    pub params: CaseParams,
    pub corpus_id: String,
    pub outcome: CellOutcome,
}

fn outcome_of(e: Error) -> CellOutcome {
    match e {
        Error::Validity { .. } | Error::Contract(_) => CellOutcome::Skipped { reason: e.to_string() },
        _ => CellOutcome::Error { message: e.to_string() },
    }
}

fn evaluate_cell(case: CaseId, params: CaseParams, spec: &CorpusSpec, opts: &EvalOptions) -> CellOutcome {
    let run = || -> Result<VerificationReport> {
        let ic = InequalityCase::new(case, params)?;
        let f = spec.instantiate(&ic.params)?;
        let m = ModelManifold::new(params.n, params.b)?;
        evaluate_case_with(&ic, &m, f.as_ref(), opts)
    };
    match run() {
        Ok(r) => CellOutcome::Report(Box::new(r)),
        Err(e) => outcome_of(e),
    }
}

/// Every `case x params x corpus` cell in that nesting order. Cells that
/// differ only in an `l` the case ignores appear once.
pub fn expand(cases: &[CaseId], grid: &Grid, corpus: &[CorpusSpec]) -> Vec<(CaseId, CaseParams, CorpusSpec)> {
    let params = grid.params();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &case in cases {
        for c in &params {
            let c = case.normalize(*c);
            let key = (case, c.n, c.p.to_bits(), c.beta.to_bits(), c.b.to_bits(), c.l);
            if !seen.insert(key) {
                continue;
            }
            for spec in corpus {
                out.push((case, c, *spec));
            }
        }
    }
    out
}

/// Evaluates every cell of the grid; order follows [`expand`].
pub fn run_suite(cases: &[CaseId], grid: &Grid, corpus: &[CorpusSpec], opts: &EvalOptions) -> Vec<Cell> {
    let cells = expand(cases, grid, corpus);
    exec::map(&cells, |(case, params, spec)| Cell {
        case: *case,
        params: *params,
        corpus_id: spec.to_string(),
        outcome: evaluate_cell(*case, *params, spec, opts),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_choice_serde() {
        let v: Vec<BetaChoice> = serde_json::from_str(r#"[1.5, "(n-p)/2", "(n - p)/2"]"#).unwrap();
        assert_eq!(v, vec![BetaChoice::Value(1.5), BetaChoice::HalfGap, BetaChoice::HalfGap]);
        assert!(serde_json::from_str::<BetaChoice>(r#""n-p""#).is_err());
        assert_eq!(serde_json::to_string(&BetaChoice::HalfGap).unwrap(), r#""(n-p)/2""#);
        assert_eq!(BetaChoice::HalfGap.resolve(5, 2.0), 1.5);

        let g: Grid = serde_json::from_str(r#"{"n": [4], "beta": [0, "(n-p)/2"]}"#).unwrap();
        assert_eq!((g.n, g.p), (vec![4], Grid::default().p));
        assert!(serde_json::from_str::<Grid>(r#"{"m": [4]}"#).is_err());
    }

    #[test]
    fn expansion_collapses_unused_l() {
        let grid = Grid { l: vec![1, 2, 3], ..Grid::default() };
        let corpus = [CorpusSpec::Bump { r: 1.0, m: 4 }];
        let hardy = expand(&[CaseId::HARDY_SUB], &grid, &corpus);
        let even = expand(&[CaseId::RELLICH_EVEN], &grid, &corpus);
        assert_eq!(hardy.len() * 3, even.len());
        assert!(hardy.iter().all(|(_, c, _)| c.l == 0));
    }
}
