use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::datagen::{DistributionSpec, RowPattern};
use crate::error::{Error, Result};
use crate::moments::RowBuilder;

/// Below this aspect ratio `auto` scaling selects the semicircle regime.
pub const AUTO_SEMICIRCLE_RATIO: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "spearman")]
    Spearman,
    #[serde(rename = "kendall_T")]
    KendallT,
    #[serde(rename = "kendall_tau_offdiag")]
    KendallTauOffdiag,
    #[serde(rename = "corr")]
    Corr,
    #[serde(rename = "corr_centered")]
    CorrCentered,
    #[serde(rename = "unit_sphere_spearman_rows")]
    UnitSphereSpearmanRows,
}

impl MatrixKind {
    pub fn is_kendall(&self) -> bool {
        matches!(self, MatrixKind::KendallT | MatrixKind::KendallTauOffdiag)
    }

    /// Unit-sphere row construction behind the kind, if it is a Gram matrix.
    pub fn row_builder(&self) -> Option<RowBuilder> {
        match self {
            MatrixKind::Spearman | MatrixKind::UnitSphereSpearmanRows => Some(RowBuilder::Spearman),
            MatrixKind::Corr => Some(RowBuilder::Correlation),
            MatrixKind::CorrCentered => Some(RowBuilder::CenteredCorrelation),
            MatrixKind::KendallT | MatrixKind::KendallTauOffdiag => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    #[default]
    Auto,
    Mp,
    Semicircle,
}

/// One entry of the row pattern, e.g. `{"dist": "bernoulli", "params": [0.5]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub dist: String,
    #[serde(default)]
    pub params: Vec<f64>,
}

impl PatternEntry {
    pub fn to_spec(&self) -> Result<DistributionSpec> {
        let want = |k: usize| -> Result<()> {
            if self.params.len() == k {
                Ok(())
            } else {
                Err(Error::Config(format!(
                    "distribution `{}` takes {k} parameter(s), got {}",
                    self.dist,
                    self.params.len()
                )))
            }
        };
        let spec = match self.dist.to_ascii_lowercase().as_str() {
            "bernoulli" | "ber" => {
                want(1)?;
                DistributionSpec::Bernoulli { m: self.params[0] }
            }
            "uniform01" | "uniform" => {
                want(0)?;
                DistributionSpec::Uniform01
            }
            "normal" | "standard_normal" => {
                want(0)?;
                DistributionSpec::StandardNormal
            }
            "pareto" => {
                want(1)?;
                DistributionSpec::Pareto {
                    alpha: self.params[0],
                }
            }
            "student_t" | "t" => {
                want(1)?;
                DistributionSpec::StudentT { nu: self.params[0] }
            }
            "constant" => {
                want(1)?;
                DistributionSpec::Constant { c: self.params[0] }
            }
            other => return Err(Error::Config(format!("unknown distribution `{other}`"))),
        };
        spec.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(spec)
    }

    pub fn from_spec(spec: &DistributionSpec) -> Self {
        let (dist, params) = match *spec {
            DistributionSpec::Bernoulli { m } => ("bernoulli", vec![m]),
            DistributionSpec::Uniform01 => ("uniform01", vec![]),
            DistributionSpec::StandardNormal => ("normal", vec![]),
            DistributionSpec::Pareto { alpha } => ("pareto", vec![alpha]),
            DistributionSpec::StudentT { nu } => ("student_t", vec![nu]),
            DistributionSpec::Constant { c } => ("constant", vec![c]),
        };
        Self {
            dist: dist.into(),
            params,
        }
    }
}

fn default_bins() -> usize {
    60
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub matrix_kind: MatrixKind,
    pub pattern: Vec<PatternEntry>,
    pub p: usize,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_bins")]
    pub bins: usize,
    #[serde(default)]
    pub range: Option<[f64; 2]>,
    #[serde(default)]
    pub scaling: Scaling,
    /// Monte Carlo replications for moment checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
}

/// Resolved asymptotic regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Mp,
    Semicircle,
}

impl ExperimentConfig {
    pub fn new(
        matrix_kind: MatrixKind,
        specs: &[DistributionSpec],
        p: usize,
        n: usize,
        seed: u64,
    ) -> Self {
        Self {
            matrix_kind,
            pattern: specs.iter().map(PatternEntry::from_spec).collect(),
            p,
            n,
            seed,
            bins: default_bins(),
            range: None,
            scaling: Scaling::Auto,
            reps: None,
        }
    }

    pub fn with_scaling(mut self, scaling: Scaling) -> Self {
        self.scaling = scaling;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 || self.n < 2 {
            return Err(Error::Config(format!(
                "need p >= 2 and n >= 2, got p={}, n={}",
                self.p, self.n
            )));
        }
        if self.bins == 0 {
            return Err(Error::Config("bins must be at least 1".into()));
        }
        if let Some([lo, hi]) = self.range {
            if !(lo < hi) {
                return Err(Error::Config(format!(
                    "range must satisfy lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
        if self.reps == Some(0) || self.reps == Some(1) {
            return Err(Error::Config("reps must be at least 2".into()));
        }
        self.row_pattern().map(|_| ())
    }

    pub fn row_pattern(&self) -> Result<RowPattern> {
        let specs = self
            .pattern
            .iter()
            .map(PatternEntry::to_spec)
            .collect::<Result<Vec<_>>>()?;
        RowPattern::new(specs).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn gamma_p(&self) -> f64 {
        self.p as f64 / self.n as f64
    }

    pub fn regime(&self) -> Regime {
        match self.scaling {
            Scaling::Mp => Regime::Mp,
            Scaling::Semicircle => Regime::Semicircle,
            Scaling::Auto if self.gamma_p() < AUTO_SEMICIRCLE_RATIO => Regime::Semicircle,
            Scaling::Auto => Regime::Mp,
        }
    }
}
