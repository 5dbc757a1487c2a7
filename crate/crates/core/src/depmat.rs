//! Dependency matrices: Spearman's rank correlation, Kendall's tau and its
//! tie-adjusted version `T`, sample correlation (plain and centered), and
//! Gram matrices of generic unit-sphere rows.

use rayon::prelude::*;

use crate::datagen::DataMatrix;
use crate::error::{Error, Result};
use crate::kendall::{concordance_matrix, RowCodes};
use crate::ranks::{kendall_scaling, spearman_rows, RankMatrix, ScalingDiag};

const UNIT_NORM_TOL: f64 = 1e-12;

/// `p x n` matrix whose rows lie on the Euclidean unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMatrix {
    p: usize,
    n: usize,
    rows: Vec<f64>,
}

impl SphereMatrix {
    /// Checks that every row has unit norm.
    pub fn new(p: usize, n: usize, rows: Vec<f64>) -> Result<Self> {
        if rows.len() != p * n || n == 0 {
            return Err(Error::Parameter(format!(
                "expected {p}x{n} entries, got {}",
                rows.len()
            )));
        }
        for (i, row) in rows.chunks_exact(n).enumerate() {
            let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !((norm - 1.0).abs() <= UNIT_NORM_TOL) {
                return Err(Error::Parameter(format!(
                    "row {i} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { p, n, rows })
    }

    /// Divides every row by its Euclidean norm.
    pub fn normalize(p: usize, n: usize, mut rows: Vec<f64>) -> Result<Self> {
        if rows.len() != p * n || n == 0 {
            return Err(Error::Parameter(format!(
                "expected {p}x{n} entries, got {}",
                rows.len()
            )));
        }
        for (i, row) in rows.chunks_exact_mut(n).enumerate() {
            normalize_in_place(row).ok_or(Error::DegenerateRow { row: i })?;
        }
        Ok(Self { p, n, rows })
    }

    pub(crate) fn from_normalized(p: usize, n: usize, rows: Vec<f64>) -> Self {
        Self { p, n, rows }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.rows.chunks_exact(self.n)
    }

    pub fn entries(&self) -> &[f64] {
        &self.rows
    }
}

/// Scales `row` to unit norm; `None` when it is identically zero.
pub(crate) fn normalize_in_place(row: &mut [f64]) -> Option<()> {
    let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    for x in row.iter_mut() {
        *x /= norm;
    }
    Some(())
}

/// Dense symmetric `p x p` matrix, stored in full row-major form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    p: usize,
    entries: Vec<f64>,
    sample_size: Option<usize>,
}

impl SymmetricMatrix {
    /// Takes `(A + A')/2` of a full row-major matrix.
    pub fn from_full(p: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != p * p {
            return Err(Error::Parameter(format!(
                "expected {} entries for a {p}x{p} matrix, got {}",
                p * p,
                entries.len()
            )));
        }
        let mut m = Self {
            p,
            entries,
            sample_size: None,
        };
        m.symmetrize();
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.len();
        if rows.iter().any(|r| r.len() != p) {
            return Err(Error::Parameter("matrix must be square".into()));
        }
        Self::from_full(p, rows.concat())
    }

    pub fn identity(p: usize) -> Self {
        let mut entries = vec![0.0; p * p];
        for i in 0..p {
            entries[i * p + i] = 1.0;
        }
        Self {
            p,
            entries,
            sample_size: None,
        }
    }

    pub fn diagonal(d: &[f64]) -> Self {
        let mut m = Self::identity(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = v;
        }
        m
    }

    fn symmetrize(&mut self) {
        let p = self.p;
        for i in 0..p {
            for j in i + 1..p {
                let avg = 0.5 * (self.entries[i * p + j] + self.entries[j * p + i]);
                self.entries[i * p + j] = avg;
                self.entries[j * p + i] = avg;
            }
        }
    }

    /// Records the number of observations the matrix was built from.
    pub fn with_sample_size(mut self, n: usize) -> Self {
        self.sample_size = Some(n);
        self
    }

    pub fn sample_size(&self) -> Option<usize> {
        self.sample_size
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.p + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.p..(i + 1) * self.p]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.p).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Same matrix with the diagonal set to zero.
    pub fn offdiag(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.p {
            m.entries[i * self.p + i] = 0.0;
        }
        m
    }

    /// `a * A + b * I`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        let mut m = self.clone();
        for x in &mut m.entries {
            *x *= a;
        }
        for i in 0..self.p {
            m.entries[i * self.p + i] += b;
        }
        m
    }

    /// `S A S` for the diagonal matrix `S = diag(scale)`.
    pub fn scale_both(&self, scale: &[f64]) -> Self {
        let p = self.p;
        let mut m = self.clone();
        for i in 0..p {
            for j in 0..p {
                m.entries[i * p + j] *= scale[i] * scale[j];
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4 * 4;
    for k in (0..chunks).step_by(4) {
        acc[0] += a[k] * b[k];
        acc[1] += a[k + 1] * b[k + 1];
        acc[2] += a[k + 2] * b[k + 2];
        acc[3] += a[k + 3] * b[k + 3];
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in chunks..a.len() {
        s += a[k] * b[k];
    }
    s
}

/// `Y Y'`. Only the upper triangle is computed.
pub fn gram(y: &SphereMatrix) -> SymmetricMatrix {
    let p = y.p();
    let mut entries = vec![0.0; p * p];
    entries.par_chunks_mut(p).enumerate().for_each(|(i, line)| {
        let yi = y.row(i);
        for j in i..p {
            line[j] = dot(yi, y.row(j));
        }
    });
    for i in 0..p {
        for j in 0..i {
            entries[i * p + j] = entries[j * p + i];
        }
    }
    SymmetricMatrix {
        p,
        entries,
        sample_size: Some(y.n()),
    }
}

/// Spearman's rank correlation matrix `Z Z'`.
pub fn spearman(rk: &RankMatrix) -> Result<SymmetricMatrix> {
    Ok(gram(&spearman_rows(rk)?))
}

fn kendall_from_codes(codes: &[RowCodes], n: usize) -> SymmetricMatrix {
    let p = codes.len();
    let counts = concordance_matrix(codes);
    let norm = 2.0 / (n as f64 * (n as f64 - 1.0));
    let entries = counts.into_iter().map(|s| s as f64 * norm).collect();
    SymmetricMatrix {
        p,
        entries,
        sample_size: Some(n),
    }
}

fn row_codes(x: &DataMatrix) -> Vec<RowCodes> {
    (0..x.p())
        .into_par_iter()
        .map(|i| RowCodes::new(x.row(i)))
        .collect()
}

/// Kendall's tau matrix. The diagonal is computed like any other entry, so
/// `tau_ii < 1` when row `i` has ties.
pub fn kendall_tau(x: &DataMatrix) -> Result<SymmetricMatrix> {
    if x.n() < 2 {
        return Err(Error::Parameter("Kendall's tau needs n >= 2".into()));
    }
    Ok(kendall_from_codes(&row_codes(x), x.n()))
}

/// Tie-adjusted Kendall matrix `T = D^-1/2 offdiag(tau) D^-1/2` together
/// with the scaling diagonal `D`.
pub fn kendall_t_with_scaling(x: &DataMatrix) -> Result<(SymmetricMatrix, ScalingDiag)> {
    if x.n() < 2 {
        return Err(Error::Parameter("Kendall's T needs n >= 2".into()));
    }
    let rk = RankMatrix::from_data(x);
    let scaling = kendall_scaling(&rk);
    if let Some(row) = scaling.d.iter().position(|&d| d <= 0.0) {
        return Err(Error::ZeroScaling { row });
    }
    let tau = kendall_tau(x)?;
    let inv_sqrt: Vec<f64> = scaling.d.iter().map(|d| 1.0 / d.sqrt()).collect();
    let t = tau.offdiag().scale_both(&inv_sqrt);
    Ok((t, scaling))
}

pub fn kendall_t(x: &DataMatrix) -> Result<SymmetricMatrix> {
    kendall_t_with_scaling(x).map(|(t, _)| t)
}

/// Sample-correlation rows: each row divided by its norm, after subtracting
/// the row mean when `centered`.
pub fn correlation_rows(x: &DataMatrix, centered: bool) -> Result<SphereMatrix> {
    let (p, n) = (x.p(), x.n());
    let mut rows = x.entries().to_vec();
    rows.par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(i, row)| {
            if centered {
                let mean = row.iter().sum::<f64>() / n as f64;
                for v in row.iter_mut() {
                    *v -= mean;
                }
                // exactly tied rows can leave rounding residue after centering
                if x.row(i).iter().all(|&v| v == x.row(i)[0]) {
                    return Err(Error::DegenerateRow { row: i });
                }
            }
            normalize_in_place(row).ok_or(Error::DegenerateRow { row: i })
        })?;
    Ok(SphereMatrix { p, n, rows })
}

/// Sample correlation matrix `R` (or `R_c` when `centered`).
pub fn sample_correlation(x: &DataMatrix, centered: bool) -> Result<SymmetricMatrix> {
    Ok(gram(&correlation_rows(x, centered)?))
}
