use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, MatrixKind, Regime};
use crate::datagen::sample_matrix;
use crate::depmat::{
    gram, kendall_t_with_scaling, kendall_tau, sample_correlation, spearman, SymmetricMatrix,
};
use crate::error::{Error, Result};
use crate::lsd::{BaseLaw, LawModel};
use crate::moments::variance_factor;
use crate::ranks::{
    degeneracy_diagnostic, kendall_scaling, spearman_rows, RankMatrix, ScalingDiag,
};
use crate::spectra::{affine_spectrum, eigenvalues_sym, histogram, ks_distance, Histogram};

/// Points of the reference density curve written to `law.csv`.
pub const LAW_CURVE_POINTS: usize = 401;

/// Limiting law the spectrum of `config` is compared with.
pub fn reference_law(config: &ExperimentConfig) -> Result<LawModel> {
    let gamma = config.gamma_p();
    let mp = || LawModel::new(BaseLaw::MarcenkoPastur { gamma }, 1.0, 0.0);
    match (config.matrix_kind, config.regime()) {
        (MatrixKind::KendallT, Regime::Mp) => mp()?.with_affine(2.0 / 3.0, -2.0 / 3.0),
        (MatrixKind::KendallT, Regime::Semicircle) => {
            LawModel::semicircle().with_affine(2.0 / 3.0, 0.0)
        }
        (MatrixKind::KendallTauOffdiag, Regime::Semicircle) => {
            let spec = config.row_pattern()?.homogeneous().ok_or_else(|| {
                Error::Unsupported(
                    "kendall_tau_offdiag has a reference law only for i.i.d. entries".into(),
                )
            })?;
            let factor = variance_factor(&spec)?;
            if factor <= 0.0 {
                return Err(Error::Unsupported(format!(
                    "degenerate row distribution {spec}"
                )));
            }
            LawModel::semicircle().with_affine(factor * 2.0 / 3.0, 0.0)
        }
        (MatrixKind::KendallTauOffdiag, Regime::Mp) => Err(Error::Unsupported(
            "kendall_tau_offdiag has a reference law only in the semicircle regime".into(),
        )),
        (_, Regime::Mp) => mp(),
        (_, Regime::Semicircle) => Ok(LawModel::semicircle()),
    }
}

/// Affine map `(a, b)` applied to the eigenvalues before comparison.
pub fn spectrum_transform(config: &ExperimentConfig) -> (f64, f64) {
    match config.regime() {
        Regime::Mp => (1.0, 0.0),
        Regime::Semicircle => {
            let a = (config.n as f64 / config.p as f64).sqrt();
            if config.matrix_kind.is_kendall() {
                // zero diagonal: no identity to subtract
                (a, 0.0)
            } else {
                (a, -a)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagSummary {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl From<&ScalingDiag> for DiagSummary {
    fn from(d: &ScalingDiag) -> Self {
        Self {
            mean: d.mean(),
            min: d.min(),
            max: d.max(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceLaw {
    pub label: String,
    pub model: LawModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub regime: Regime,
    /// `(a, b)` with compared eigenvalues `a * lambda + b`.
    pub transform: [f64; 2],
    /// Transformed eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    pub histogram: Histogram,
    pub reference_law: ReferenceLaw,
    /// `(x, density)` samples of the reference law.
    pub law_curve: Vec<[f64; 2]>,
    pub ks: f64,
    pub diag_d_summary: Option<DiagSummary>,
    pub degeneracy_max: f64,
    pub wall_time_seconds: f64,
}

/// The dependency matrix named by `config`, with `D` for Kendall kinds.
pub fn build_matrix(
    config: &ExperimentConfig,
    x: &crate::datagen::DataMatrix,
) -> Result<(SymmetricMatrix, Option<ScalingDiag>)> {
    Ok(match config.matrix_kind {
        MatrixKind::Spearman => (spearman(&RankMatrix::from_data(x))?, None),
        MatrixKind::UnitSphereSpearmanRows => {
            (gram(&spearman_rows(&RankMatrix::from_data(x))?), None)
        }
        MatrixKind::KendallT => {
            let (t, d) = kendall_t_with_scaling(x)?;
            (t, Some(d))
        }
        MatrixKind::KendallTauOffdiag => {
            let d = kendall_scaling(&RankMatrix::from_data(x));
            (kendall_tau(x)?.offdiag(), Some(d))
        }
        MatrixKind::Corr => (sample_correlation(x, false)?, None),
        MatrixKind::CorrCentered => (sample_correlation(x, true)?, None),
    })
}

fn default_range(eigs: &[f64], law: &LawModel) -> (f64, f64) {
    let (mut lo, mut hi) = law.support();
    if let (Some(first), Some(last)) = (eigs.first(), eigs.last()) {
        lo = lo.min(*first);
        hi = hi.max(*last);
    }
    let pad = 0.02 * (hi - lo).max(1e-12);
    (lo - pad, hi + pad)
}

/// Data, matrix, spectrum and distance to the reference law for `config`.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentResult> {
    let started = Instant::now();
    config.validate()?;
    let law = reference_law(config)?;
    let pattern = config.row_pattern()?;
    let x = sample_matrix(&pattern, config.p, config.n, config.seed)?;
    let degeneracy_max = x.rows().map(degeneracy_diagnostic).fold(0.0, f64::max);

    let (matrix, scaling) = build_matrix(config, &x)?;
    let (a, b) = spectrum_transform(config);
    let spectrum = affine_spectrum(&eigenvalues_sym(&matrix)?, a, b);
    let ks = ks_distance(&spectrum, &law);

    let (lo, hi) = match config.range {
        Some([lo, hi]) => (lo, hi),
        None => default_range(&spectrum.eigs, &law),
    };
    let hist = histogram(&spectrum, lo, hi, config.bins)?;
    let step = (hi - lo) / (LAW_CURVE_POINTS - 1) as f64;
    let law_curve = (0..LAW_CURVE_POINTS)
        .map(|k| {
            let xk = lo + step * k as f64;
            [xk, law.density(xk)]
        })
        .collect();

    Ok(ExperimentResult {
        config: config.clone(),
        regime: config.regime(),
        transform: [a, b],
        eigenvalues: spectrum.eigs,
        histogram: hist,
        reference_law: ReferenceLaw {
            label: law.to_string(),
            model: law,
        },
        law_curve,
        ks,
        diag_d_summary: scaling.as_ref().map(DiagSummary::from),
        degeneracy_max,
        wall_time_seconds: started.elapsed().as_secs_f64(),
    })
}
