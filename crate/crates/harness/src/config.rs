//! Experiment configuration: CLI flags and JSON config files share this shape.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use mjue_core::asymptotics::BULK_EDGE_DELTA;
use mjue_core::{cheb_fit, ChebSeries64, ModifiedJacobiWeight64};
use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyKind {
    Density,
    Bulk,
    Edge,
    Gap,
    Recurrence,
    Asymptotics,
}

impl fmt::Display for StudyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StudyKind::Density => "density",
            StudyKind::Bulk => "bulk",
            StudyKind::Edge => "edge",
            StudyKind::Gap => "gap",
            StudyKind::Recurrence => "recurrence",
            StudyKind::Asymptotics => "asymptotics",
        };
        f.write_str(s)
    }
}

/// Evaluation grid: either `lo:hi:count` or an explicit point list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridSpec {
    Range { lo: f64, hi: f64, count: usize },
    List(Vec<f64>),
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        match self {
            GridSpec::List(v) => v.clone(),
            GridSpec::Range { lo, hi, count } => match count {
                0 => Vec::new(),
                1 => vec![*lo],
                _ => (0..*count)
                    .map(|i| lo + (hi - lo) * i as f64 / (*count as f64 - 1.0))
                    .collect(),
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            GridSpec::List(v) => v.is_empty(),
            GridSpec::Range { count, .. } => *count == 0,
        }
    }
}

impl FromStr for GridSpec {
    type Err = HarnessError;

    /// `lo:hi:count` or a comma-separated point list.
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        let bad = |what: &str| HarnessError::Config(format!("invalid grid `{s}`: {what}"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(bad("expected lo:hi:count"));
            }
            let lo: f64 = parts[0].parse().map_err(|_| bad("lo not a number"))?;
            let hi: f64 = parts[1].parse().map_err(|_| bad("hi not a number"))?;
            let count: usize = parts[2].parse().map_err(|_| bad("count not an integer"))?;
            Ok(GridSpec::Range { lo, hi, count })
        } else {
            let pts: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse()).collect();
            Ok(GridSpec::List(pts.map_err(|_| bad("bad point list"))?))
        }
    }
}

fn default_h() -> String {
    "one".to_string()
}
fn default_n() -> Vec<usize> {
    vec![50, 100, 200, 400]
}
fn default_grid() -> GridSpec {
    GridSpec::List(Vec::new())
}
fn default_s() -> Vec<f64> {
    vec![0.5, 2.0, 8.0]
}
fn default_m() -> usize {
    64
}
fn default_tol() -> f64 {
    0.3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub study: StudyKind,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    /// `one` | `exp` | `runge` | `@path.json` (Chebyshev coefficient file)
    #[serde(default = "default_h")]
    pub h: String,
    #[serde(default = "default_n")]
    pub n: Vec<usize>,
    /// Empty means "use the study's default grid".
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
    /// Bulk scaling center.
    #[serde(default)]
    pub x: f64,
    /// Gap interval endpoints.
    #[serde(default = "default_s")]
    pub s: Vec<f64>,
    /// Nystrom quadrature size.
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Half-width of the accepted band around the expected convergence order.
    #[serde(default = "default_tol")]
    pub tol: f64,
}

impl ExperimentConfig {
    pub fn new(study: StudyKind) -> Self {
        ExperimentConfig {
            study,
            alpha: 0.0,
            beta: 0.0,
            h: default_h(),
            n: default_n(),
            grid: default_grid(),
            x: 0.0,
            s: default_s(),
            m: default_m(),
            out: None,
            tol: default_tol(),
        }
    }

    /// The grid actually used: the configured one, or the study default.
    pub fn resolved_grid(&self) -> Vec<f64> {
        if !self.grid.is_empty() {
            return self.grid.points();
        }
        match self.study {
            StudyKind::Density => vec![-0.8, 0.0, 0.5],
            StudyKind::Bulk => GridSpec::Range {
                lo: -2.0,
                hi: 2.0,
                count: 9,
            }
            .points(),
            StudyKind::Edge => vec![0.5, 1.0, 2.5, 5.0, 10.0],
            StudyKind::Gap | StudyKind::Recurrence => Vec::new(),
            StudyKind::Asymptotics => vec![-0.6, -0.2, 0.1, 0.4],
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let err = |msg: String| Err(HarnessError::Config(msg));
        if self.alpha <= -1.0 || self.beta <= -1.0 {
            return err(format!(
                "weight exponents must exceed -1, got alpha={}, beta={}",
                self.alpha, self.beta
            ));
        }
        if self.n.is_empty() {
            return err("n list must be nonempty".into());
        }
        if !self.n.windows(2).all(|w| w[0] < w[1]) || self.n[0] < 2 {
            return err(format!(
                "n list must be strictly increasing with every entry >= 2, got {:?}",
                self.n
            ));
        }
        if !(self.tol > 0.0) {
            return err(format!("tol must be positive, got {}", self.tol));
        }
        let grid = self.resolved_grid();
        match self.study {
            StudyKind::Density | StudyKind::Asymptotics => {
                if grid.is_empty() {
                    return err("grid must be nonempty".into());
                }
                let lim = 1.0 - BULK_EDGE_DELTA;
                if grid.iter().any(|&x| x.abs() > lim) {
                    return err(format!("grid must lie inside [-{lim}, {lim}]"));
                }
            }
            StudyKind::Bulk => {
                if grid.is_empty() {
                    return err("grid must be nonempty".into());
                }
                if self.x.abs() > 1.0 - BULK_EDGE_DELTA {
                    return err(format!("bulk center x={} too close to the edge", self.x));
                }
            }
            StudyKind::Edge => {
                if grid.is_empty() {
                    return err("grid must be nonempty".into());
                }
                if grid.iter().any(|&u| u <= 0.0) {
                    return err("edge grid points must be positive".into());
                }
            }
            StudyKind::Gap => {
                if self.s.is_empty() || self.s.iter().any(|&s| s <= 0.0) {
                    return err(format!("s list must be nonempty and positive, got {:?}", self.s));
                }
                if self.m < 4 {
                    return err(format!("quadrature size m must be >= 4, got {}", self.m));
                }
            }
            StudyKind::Recurrence => {}
        }
        Ok(())
    }

    pub fn weight(&self) -> Result<ModifiedJacobiWeight64, HarnessError> {
        let h = load_h(&self.h)?;
        ModifiedJacobiWeight64::new(self.alpha, self.beta, h).map_err(HarnessError::Numeric)
    }
}

#[derive(Deserialize)]
struct ChebFile {
    coefficients: Vec<f64>,
}

/// Resolve an analytic-factor spec: a builtin preset or `@file.json` holding
/// `{"coefficients": [...]}` in the Chebyshev basis.
pub fn load_h(spec: &str) -> Result<ChebSeries64, HarnessError> {
    match spec {
        "one" => Ok(ChebSeries64::constant(1.0)),
        "exp" => cheb_fit(|x: f64| x.exp(), 1e-14).map_err(HarnessError::Numeric),
        "runge" => cheb_fit(|x: f64| 1.0 + x * x / 4.0, 1e-14).map_err(HarnessError::Numeric),
        other => {
            let path = other.strip_prefix('@').ok_or_else(|| {
                HarnessError::Config(format!(
                    "unknown h preset `{other}` (expected one|exp|runge|@file.json)"
                ))
            })?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| HarnessError::Config(format!("cannot read {path}: {e}")))?;
            let file: ChebFile = serde_json::from_str(&text)
                .map_err(|e| HarnessError::Config(format!("bad coefficient file {path}: {e}")))?;
            if file.coefficients.is_empty() {
                return Err(HarnessError::Config(format!(
                    "coefficient file {path} is empty"
                )));
            }
            Ok(ChebSeries64 {
                coefficients: file.coefficients,
            })
        }
    }
}

pub fn load_config(path: &std::path::Path) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| HarnessError::Config(format!("bad config {}: {e}", path.display())))?;
    Ok(cfg)
}
