//! Seeded generation of data matrices with independent rows and i.i.d.
//! entries within each row.
//!
//! Every row draws from its own ChaCha stream selected by the row index, so
//! row `i` is a pure function of `(seed, i)` and its spec. Growing `p` never
//! changes the content of existing rows, and the matrix is identical no
//! matter how many threads generate it.

use std::fmt;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    /// Takes the value 1 with probability `m`, else 0.
    Bernoulli {
        m: f64,
    },
    Uniform01,
    StandardNormal,
    /// Pareto on `[1, inf)` with `P(X > x) = x^-alpha`.
    Pareto {
        alpha: f64,
    },
    StudentT {
        nu: f64,
    },
    /// Point mass at `c`. Only useful for exercising degenerate inputs.
    Constant {
        c: f64,
    },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            DistributionSpec::Bernoulli { m } if !(m > 0.0 && m < 1.0) => Err(Error::Parameter(
                format!("Bernoulli probability must lie in (0,1), got {m}"),
            )),
            DistributionSpec::Pareto { alpha } if !(alpha > 0.0 && alpha.is_finite()) => Err(
                Error::Parameter(format!("Pareto tail index must be positive, got {alpha}")),
            ),
            DistributionSpec::StudentT { nu } if !(nu > 0.0 && nu.is_finite()) => {
                Err(Error::Parameter(format!(
                    "Student-t degrees of freedom must be positive, got {nu}"
                )))
            }
            DistributionSpec::Constant { c } if !c.is_finite() => Err(Error::Parameter(format!(
                "constant must be finite, got {c}"
            ))),
            _ => Ok(()),
        }
    }

    /// True when the distribution has no atoms.
    pub fn is_continuous(&self) -> bool {
        !matches!(
            self,
            DistributionSpec::Bernoulli { .. } | DistributionSpec::Constant { .. }
        )
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Bernoulli { m } => write!(f, "Ber({m})"),
            DistributionSpec::Uniform01 => write!(f, "U(0,1)"),
            DistributionSpec::StandardNormal => write!(f, "N(0,1)"),
            DistributionSpec::Pareto { alpha } => write!(f, "Pareto({alpha})"),
            DistributionSpec::StudentT { nu } => write!(f, "t({nu})"),
            DistributionSpec::Constant { c } => write!(f, "Const({c})"),
        }
    }
}

/// Inverse CDF of `spec` at `u` in the open unit interval.
pub fn quantile(spec: &DistributionSpec, u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie in (0,1), got {u}"
        )));
    }
    spec.validate()?;
    Ok(quantile_unchecked(spec, u))
}

fn quantile_unchecked(spec: &DistributionSpec, u: f64) -> f64 {
    match *spec {
        DistributionSpec::Bernoulli { m } => {
            if u <= 1.0 - m {
                0.0
            } else {
                1.0
            }
        }
        DistributionSpec::Uniform01 => u,
        DistributionSpec::StandardNormal => standard_normal().inverse_cdf(u),
        DistributionSpec::Pareto { alpha } => (1.0 - u).powf(-1.0 / alpha),
        DistributionSpec::StudentT { nu } => StudentsT::new(0.0, 1.0, nu)
            .expect("validated degrees of freedom")
            .inverse_cdf(u),
        DistributionSpec::Constant { c } => c,
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal parameters")
}

/// Distribution specs assigned cyclically to the rows of a data matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RowPattern {
    specs: Vec<DistributionSpec>,
}

impl RowPattern {
    pub fn new(specs: Vec<DistributionSpec>) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Parameter("row pattern must not be empty".into()));
        }
        for spec in &specs {
            spec.validate()?;
        }
        Ok(Self { specs })
    }

    pub fn iid(spec: DistributionSpec) -> Result<Self> {
        Self::new(vec![spec])
    }

    pub fn specs(&self) -> &[DistributionSpec] {
        &self.specs
    }

    /// Spec used by the 0-based row `i`.
    pub fn spec_for_row(&self, i: usize) -> DistributionSpec {
        self.specs[i % self.specs.len()]
    }

    /// The single spec shared by every row, if there is one.
    pub fn homogeneous(&self) -> Option<DistributionSpec> {
        let first = self.specs[0];
        self.specs.iter().all(|s| *s == first).then_some(first)
    }
}

/// Independent stream for `(seed, stream)`.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Fills `out` with i.i.d. draws from `spec`.
pub(crate) fn fill_row<R: Rng>(spec: &DistributionSpec, rng: &mut R, out: &mut [f64]) {
    match *spec {
        DistributionSpec::Constant { c } => out.fill(c),
        DistributionSpec::StandardNormal => {
            let normal = standard_normal();
            for x in out.iter_mut() {
                *x = normal.inverse_cdf(rng.sample::<f64, _>(Open01));
            }
        }
        DistributionSpec::StudentT { nu } => {
            let t = StudentsT::new(0.0, 1.0, nu).expect("validated degrees of freedom");
            for x in out.iter_mut() {
                *x = t.inverse_cdf(rng.sample::<f64, _>(Open01));
            }
        }
        _ => {
            for x in out.iter_mut() {
                *x = quantile_unchecked(spec, rng.sample(Open01));
            }
        }
    }
}

/// A `p x n` data matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    p: usize,
    n: usize,
    entries: Vec<f64>,
    row_specs: Vec<DistributionSpec>,
    seed: u64,
}

impl DataMatrix {
    /// Wraps explicit row-major entries. Used for hand-built inputs.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.len();
        if p == 0 {
            return Err(Error::Parameter(
                "data matrix needs at least one row".into(),
            ));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter(
                "rows must be non-empty and of equal length".into(),
            ));
        }
        let entries: Vec<f64> = rows.iter().flatten().copied().collect();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("data matrix entries".into()));
        }
        Ok(Self {
            p,
            n,
            entries,
            row_specs: Vec::new(),
            seed: 0,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Specs of each row; empty for hand-built matrices.
    pub fn row_specs(&self) -> &[DistributionSpec] {
        &self.row_specs
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.n)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Applies `f` to every entry of row `i`.
    pub fn map_row(&mut self, i: usize, f: impl Fn(f64) -> f64) {
        for x in &mut self.entries[i * self.n..(i + 1) * self.n] {
            *x = f(*x);
        }
    }
}

/// Draws a `p x n` matrix whose row `i` follows `pattern.spec_for_row(i)`.
pub fn sample_matrix(pattern: &RowPattern, p: usize, n: usize, seed: u64) -> Result<DataMatrix> {
    if p == 0 || n == 0 {
        return Err(Error::Parameter(format!(
            "need p >= 1 and n >= 1, got p={p}, n={n}"
        )));
    }
    for spec in pattern.specs() {
        spec.validate()?;
    }
    let row_specs: Vec<DistributionSpec> = (0..p).map(|i| pattern.spec_for_row(i)).collect();
    let mut entries = vec![0.0; p * n];
    entries
        .par_chunks_mut(n)
        .zip(row_specs.par_iter())
        .enumerate()
        .for_each(|(i, (row, spec))| {
            let mut rng = stream_rng(seed, i as u64);
            fill_row(spec, &mut rng, row);
        });
    if entries.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("generated entries".into()));
    }
    Ok(DataMatrix {
        p,
        n,
        entries,
        row_specs,
        seed,
    })
}
