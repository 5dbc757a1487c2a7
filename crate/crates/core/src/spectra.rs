//! Empirical spectral distributions and their comparison with limiting laws.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::depmat::{gram, SphereMatrix, SymmetricMatrix};
use crate::eigen::symmetric_eigenvalues;
use crate::error::{Error, Result};
use crate::lsd::{law_cdf, law_cdf_left, LawModel};

/// Sorted eigenvalues of a `p x p` matrix built from `n` observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSample {
    pub eigs: Vec<f64>,
    pub p: usize,
    pub n: usize,
    pub gamma_p: f64,
}

impl SpectralSample {
    /// Sorts `eigs`; rejects non-finite values.
    pub fn new(mut eigs: Vec<f64>, n: usize) -> Result<Self> {
        if eigs.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("eigenvalues".into()));
        }
        eigs.sort_unstable_by(f64::total_cmp);
        let p = eigs.len();
        let gamma_p = if n == 0 { 0.0 } else { p as f64 / n as f64 };
        Ok(Self {
            eigs,
            p,
            n,
            gamma_p,
        })
    }

    /// Empirical CDF `#{lambda_i <= x} / p`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.eigs.partition_point(|&v| v <= x) as f64 / self.p as f64
    }

    fn ecdf_left(&self, x: f64) -> f64 {
        self.eigs.partition_point(|&v| v < x) as f64 / self.p as f64
    }
}

/// All eigenvalues of `a`, ascending. The sum is checked against the trace.
pub fn eigenvalues_sym(a: &SymmetricMatrix) -> Result<SpectralSample> {
    if !a.is_finite() {
        return Err(Error::NonFinite("matrix entries".into()));
    }
    let p = a.p();
    let eigs = symmetric_eigenvalues(a.entries(), p)?;
    let sum: f64 = eigs.iter().sum();
    let tol = 1e-8 * p.max(1) as f64 * a.max_abs().max(1.0);
    if (sum - a.trace()).abs() > tol {
        return Err(Error::Numeric(format!(
            "eigenvalue sum {sum} disagrees with trace {}",
            a.trace()
        )));
    }
    SpectralSample::new(eigs, a.sample_size().unwrap_or(p))
}

/// Eigenvalues of `a A + b I` from those of `A`.
pub fn affine_spectrum(s: &SpectralSample, a: f64, b: f64) -> SpectralSample {
    let mut eigs: Vec<f64> = s.eigs.iter().map(|&x| a * x + b).collect();
    if a < 0.0 {
        eigs.reverse();
    }
    SpectralSample { eigs, ..s.clone() }
}

/// Exact Kolmogorov–Smirnov distance between the ESD and `model`.
///
/// Both distribution functions are monotone and the model is continuous
/// away from its atom, so the supremum is attained at a jump of the ESD or
/// at the atom, from one side or the other.
pub fn ks_distance(s: &SpectralSample, model: &LawModel) -> f64 {
    if s.eigs.is_empty() {
        return 0.0;
    }
    let mut points: Vec<f64> = s.eigs.clone();
    points.dedup();
    if let Some((loc, _)) = model.atom() {
        points.push(loc);
    }
    points
        .iter()
        .map(|&x| {
            let right = (s.ecdf(x) - law_cdf(model, x)).abs();
            let left = (s.ecdf_left(x) - law_cdf_left(model, x)).abs();
            right.max(left)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov statistic between two ESDs.
pub fn ks_two_sample(s: &SpectralSample, t: &SpectralSample) -> f64 {
    s.eigs
        .iter()
        .chain(&t.eigs)
        .map(|&x| (s.ecdf(x) - t.ecdf(x)).abs())
        .fold(0.0, f64::max)
}

/// `(1/p) sum_i 1 / (lambda_i - z)`.
pub fn empirical_stieltjes(s: &SpectralSample, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::Domain(format!(
            "Stieltjes transform needs Im z > 0, got {z}"
        )));
    }
    let total: Complex64 = s.eigs.iter().map(|&l| 1.0 / (l - z)).sum();
    Ok(total / s.p as f64)
}

/// Largest mismatch between the `p` leading eigenvalues of `Y Y'` and of
/// `Y' Y`. The two matrices share their nonzero eigenvalues; `Y' Y` is
/// `n x n`, so this is meant for small instances.
pub fn companion_check(y: &SphereMatrix) -> Result<f64> {
    let (p, n) = (y.p(), y.n());
    if p > n {
        return Err(Error::Parameter(format!(
            "companion check needs p <= n, got p={p}, n={n}"
        )));
    }
    let small = symmetric_eigenvalues(gram(y).entries(), p)?;
    let mut outer = vec![0.0; n * n];
    for row in y.rows() {
        for s in 0..n {
            for t in 0..n {
                outer[s * n + t] += row[s] * row[t];
            }
        }
    }
    let large = symmetric_eigenvalues(&outer, n)?;
    Ok(small
        .iter()
        .rev()
        .zip(large.iter().rev())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Equal-width histogram normalized as a density over all `p` eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<usize>,
    pub densities: Vec<f64>,
}

impl Histogram {
    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn bin_edges(&self, k: usize) -> (f64, f64) {
        let w = self.width();
        (self.lo + w * k as f64, self.lo + w * (k + 1) as f64)
    }
}

/// Bins `[lo, hi]` into `bins` cells; the last cell is closed on the right.
/// Densities integrate to the fraction of eigenvalues inside `[lo, hi]`.
pub fn histogram(s: &SpectralSample, lo: f64, hi: f64, bins: usize) -> Result<Histogram> {
    if bins == 0 {
        return Err(Error::Parameter("histogram needs at least one bin".into()));
    }
    let mut counts = vec![0usize; bins];
    let mut densities = vec![0.0; bins];
    if !(hi > lo) || s.p == 0 {
        return Ok(Histogram {
            lo,
            hi,
            counts,
            densities,
        });
    }
    let width = (hi - lo) / bins as f64;
    for &x in &s.eigs {
        if x < lo || x > hi {
            continue;
        }
        let k = (((x - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    for (dens, &c) in densities.iter_mut().zip(&counts) {
        *dens = c as f64 / (s.p as f64 * width);
    }
    Ok(Histogram {
        lo,
        hi,
        counts,
        densities,
    })
}
