//! Moment conditions on unit-sphere rows and the Kendall variance factor.
//!
//! [`estimate_conditions`] evaluates by Monte Carlo the two quantities
//! `(n^2/p^2) sum_i E[Y_i1^4]` and `(n^2/p^(3/2)) sum_i |E[Y_i1 Y_i2]|` whose
//! vanishing makes the Gram matrix of unit-sphere rows follow the
//! semicircle / Marčenko–Pastur limits. Rows sharing a distribution are
//! identically distributed, so each distinct spec of the pattern is
//! simulated once and weighted by the number of rows it occupies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::datagen::{fill_row, stream_rng, DistributionSpec, RowPattern};
use crate::depmat::normalize_in_place;
use crate::error::{Error, Result};
use crate::ranks::fractional_ranks;

/// How a data row is mapped onto the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowBuilder {
    /// Centered fractional ranks, normalized (rows of `Z`).
    Spearman,
    /// `X_it / ||X_i||`.
    Correlation,
    /// Row mean removed, then normalized.
    CenteredCorrelation,
}

impl RowBuilder {
    /// Maps `row` onto the unit sphere in place. `None` for degenerate rows.
    pub fn build(&self, row: &mut [f64]) -> Option<()> {
        match self {
            RowBuilder::Spearman => {
                let n = row.len();
                let mid = (n + 1) as f64 * 0.5;
                let ranks = fractional_ranks(row);
                for (x, q) in row.iter_mut().zip(ranks) {
                    *x = q - mid;
                }
            }
            RowBuilder::Correlation => {}
            RowBuilder::CenteredCorrelation => {
                if row.iter().all(|&v| v == row[0]) {
                    return None;
                }
                let mean = row.iter().sum::<f64>() / row.len() as f64;
                for x in row.iter_mut() {
                    *x -= mean;
                }
            }
        }
        normalize_in_place(row)
    }
}

/// Monte Carlo moments of one row distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecMoments {
    pub spec: String,
    /// Rows of the pattern using this spec.
    pub rows: usize,
    pub fourth_mean: f64,
    pub fourth_stderr: f64,
    pub cross_mean: f64,
    pub cross_stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub builder: RowBuilder,
    pub p: usize,
    pub n: usize,
    pub reps: usize,
    /// `(n^2/p^2) sum_i E[Y_i1^4]`.
    pub c4: f64,
    pub stderr4: f64,
    /// `(n^2/p^(3/2)) sum_i |E[Y_i1 Y_i2]|`.
    pub c_cross: f64,
    pub stderr_cross: f64,
    pub per_spec: Vec<SpecMoments>,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

pub fn estimate_conditions(
    builder: RowBuilder,
    pattern: &RowPattern,
    p: usize,
    n: usize,
    reps: usize,
    seed: u64,
) -> Result<MomentReport> {
    if reps < 2 {
        return Err(Error::Parameter(format!(
            "need at least 2 replications, got {reps}"
        )));
    }
    if n < 2 || p == 0 {
        return Err(Error::Parameter(format!(
            "need p >= 1 and n >= 2, got p={p}, n={n}"
        )));
    }
    let mut groups: Vec<(DistributionSpec, usize)> = Vec::new();
    for i in 0..p {
        let spec = pattern.spec_for_row(i);
        match groups.iter_mut().find(|(s, _)| *s == spec) {
            Some((_, count)) => *count += 1,
            None => groups.push((spec, 1)),
        }
    }

    let mut per_spec = Vec::with_capacity(groups.len());
    for (k, (spec, rows)) in groups.iter().enumerate() {
        spec.validate()?;
        let draws: Vec<(f64, f64)> = (0..reps)
            .into_par_iter()
            .map_init(
                || vec![0.0; n],
                |row, r| {
                    let mut rng = stream_rng(seed, ((k as u64) << 48) ^ r as u64);
                    fill_row(spec, &mut rng, row);
                    builder
                        .build(row)
                        .map(|_| (row[0].powi(4), row[0] * row[1]))
                        .ok_or(Error::DegenerateRow { row: r })
                },
            )
            .collect::<Result<_>>()?;
        let (fourth, cross): (Vec<f64>, Vec<f64>) = draws.into_iter().unzip();
        let (fourth_mean, fourth_stderr) = mean_and_stderr(&fourth);
        let (cross_mean, cross_stderr) = mean_and_stderr(&cross);
        per_spec.push(SpecMoments {
            spec: spec.to_string(),
            rows: *rows,
            fourth_mean,
            fourth_stderr,
            cross_mean,
            cross_stderr,
        });
    }

    let (nf, pf) = (n as f64, p as f64);
    let w4 = nf * nf / (pf * pf);
    let wc = nf * nf / pf.powf(1.5);
    let weighted = |f: &dyn Fn(&SpecMoments) -> f64| -> f64 {
        per_spec.iter().map(|m| m.rows as f64 * f(m)).sum()
    };
    let pooled = |f: &dyn Fn(&SpecMoments) -> f64| -> f64 {
        per_spec
            .iter()
            .map(|m| (m.rows as f64 * f(m)).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    Ok(MomentReport {
        builder,
        p,
        n,
        reps,
        c4: w4 * weighted(&|m| m.fourth_mean),
        stderr4: w4 * pooled(&|m| m.fourth_stderr),
        c_cross: wc * weighted(&|m| m.cross_mean.abs()),
        stderr_cross: wc * pooled(&|m| m.cross_stderr),
        per_spec,
    })
}

/// `3 m (1 - m)`: the limit of `D_ii` for Bernoulli(`m`) rows.
pub fn bernoulli_variance_factor(m: f64) -> Result<f64> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Domain(format!(
            "Bernoulli probability must lie in (0,1), got {m}"
        )));
    }
    Ok(3.0 * m * (1.0 - m))
}

/// Finite support `(value, probability)` of a discrete spec, ascending.
fn discrete_support(spec: &DistributionSpec) -> Option<Vec<(f64, f64)>> {
    match *spec {
        DistributionSpec::Bernoulli { m } => Some(vec![(0.0, 1.0 - m), (1.0, m)]),
        DistributionSpec::Constant { c } => Some(vec![(c, 1.0)]),
        _ => None,
    }
}

/// `3 Var(2 H(X) - q(X))` with `H` the CDF and `q` the probability mass
/// function of `X`. Equals 1 for every continuous law.
pub fn variance_factor(spec: &DistributionSpec) -> Result<f64> {
    spec.validate()?;
    let Some(support) = discrete_support(spec) else {
        return Ok(1.0);
    };
    let mut cum = 0.0;
    let values: Vec<(f64, f64)> = support
        .iter()
        .map(|&(_, prob)| {
            cum += prob;
            (2.0 * cum - prob, prob)
        })
        .collect();
    let mean: f64 = values.iter().map(|(v, w)| v * w).sum();
    let var: f64 = values.iter().map(|(v, w)| w * (v - mean).powi(2)).sum();
    Ok(3.0 * var)
}

/// Whether a tail index `alpha` in `[2, 4)` satisfies `alpha > 4 - 2/delta`
/// for the growth exponent `delta >= 1`.
pub fn regvar_condition(alpha: f64, delta: f64) -> Result<bool> {
    if !(2.0..4.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "tail index must lie in [2,4), got {alpha}"
        )));
    }
    if !(delta >= 1.0) {
        return Err(Error::Domain(format!(
            "growth exponent must be >= 1, got {delta}"
        )));
    }
    Ok(alpha > 4.0 - 2.0 / delta)
}

/// `int_0^n x P(X^2 > x) dx` for `X ~ Pareto(alpha)` on `[1, inf)`.
pub fn pareto_truncated_fourth_moment(alpha: f64, n: f64) -> Result<f64> {
    if !(alpha > 0.0) || !(n > 0.0) {
        return Err(Error::Domain(format!(
            "need alpha > 0 and n > 0, got alpha={alpha}, n={n}"
        )));
    }
    if n <= 1.0 {
        return Ok(0.5 * n * n);
    }
    let k = 2.0 - alpha / 2.0;
    let tail = if k == 0.0 {
        n.ln()
    } else {
        (n.powf(k) - 1.0) / k
    };
    Ok(0.5 + tail)
}
