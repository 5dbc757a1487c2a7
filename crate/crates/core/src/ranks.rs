//! Fractional (mid-)ranks, the row-normalized Spearman matrix `Z` and the
//! diagonal Kendall scaling matrix `D`.

use rayon::prelude::*;

use crate::datagen::DataMatrix;
use crate::depmat::SphereMatrix;
use crate::error::{Error, Result};

/// Mid-ranks of `row`: ties share the average of the positions they occupy.
///
/// Equivalent to `Q_j = #{t : x_t <= x_j} - #{t != j : x_t = x_j} / 2`, but
/// computed by sorting and scanning tie blocks.
pub fn fractional_ranks(row: &[f64]) -> Vec<f64> {
    let n = row.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by(|&a, &b| row[a].total_cmp(&row[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let value = row[order[start]];
        let mut end = start + 1;
        while end < n && row[order[end]] == value {
            end += 1;
        }
        // positions start+1..=end, average (start + 1 + end) / 2
        let rank = (start + 1 + end) as f64 * 0.5;
        for &j in &order[start..end] {
            ranks[j] = rank;
        }
        start = end;
    }
    ranks
}

/// Largest empirical point mass of `row`, in `[1/n, 1]`.
pub fn degeneracy_diagnostic(row: &[f64]) -> f64 {
    if row.is_empty() {
        return 0.0;
    }
    let mut sorted = row.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut best = 1;
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            best = best.max(run);
        } else {
            run = 1;
        }
    }
    best as f64 / row.len() as f64
}

/// `p x n` matrix of fractional ranks, one row per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct RankMatrix {
    p: usize,
    n: usize,
    ranks: Vec<f64>,
}

impl RankMatrix {
    pub fn from_data(x: &DataMatrix) -> Self {
        let n = x.n();
        let mut ranks = vec![0.0; x.p() * n];
        ranks
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, out)| out.copy_from_slice(&fractional_ranks(x.row(i))));
        Self { p: x.p(), n, ranks }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.ranks[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.ranks.chunks_exact(self.n)
    }

    /// `sum_t (Q_it - (n+1)/2)^2`, accumulated in doubled units so that
    /// every term is an integer and the sum is exact.
    pub fn centered_sum_of_squares(&self, i: usize) -> f64 {
        let mid = (self.n + 1) as f64;
        let doubled: f64 = self
            .row(i)
            .iter()
            .map(|&q| {
                let c = 2.0 * q - mid;
                c * c
            })
            .sum();
        doubled * 0.25
    }
}

/// Rows of `Z`: centered ranks divided by their Euclidean norm.
pub fn spearman_rows(rk: &RankMatrix) -> Result<SphereMatrix> {
    let (p, n) = (rk.p(), rk.n());
    let mid = (n + 1) as f64 * 0.5;
    let mut rows = vec![0.0; p * n];
    rows.par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(i, out)| {
            let ss = rk.centered_sum_of_squares(i);
            if ss <= 0.0 {
                return Err(Error::DegenerateRow { row: i });
            }
            let norm = ss.sqrt();
            for (z, &q) in out.iter_mut().zip(rk.row(i)) {
                *z = (q - mid) / norm;
            }
            Ok(())
        })?;
    Ok(SphereMatrix::from_normalized(p, n, rows))
}

/// Diagonal of the Kendall scaling matrix `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingDiag {
    pub d: Vec<f64>,
}

impl ScalingDiag {
    pub fn mean(&self) -> f64 {
        self.d.iter().sum::<f64>() / self.d.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.d.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `d_i = (12 / n^3) sum_s (Q_is - (n+1)/2)^2`.
pub fn kendall_scaling(rk: &RankMatrix) -> ScalingDiag {
    let n3 = (rk.n() as f64).powi(3);
    let d = (0..rk.p())
        .map(|i| 12.0 * rk.centered_sum_of_squares(i) / n3)
        .collect();
    ScalingDiag { d }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::{sample_matrix, DistributionSpec, RowPattern};

    fn ranks_of(rows: &[Vec<f64>]) -> RankMatrix {
        RankMatrix::from_data(&DataMatrix::from_rows(rows).unwrap())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            fractional_ranks(&[3.0, 1.0, 2.0, 2.0]),
            vec![4.0, 1.0, 2.5, 2.5]
        );
        assert_eq!(fractional_ranks(&[5.0, 6.0, 7.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(fractional_ranks(&[9.0; 4]), vec![2.5; 4]);
        assert_eq!(fractional_ranks(&[]), Vec::<f64>::new());
    }

    #[test]
    fn z_rows() {
        let z = spearman_rows(&ranks_of(&[vec![1.0, 2.0, 3.0]])).unwrap();
        let h = 0.5f64.sqrt();
        let expect = [-h, 0.0, h];
        for (a, b) in z.row(0).iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn degenerate_row_is_named() {
        let rk = ranks_of(&[vec![1.0, 2.0, 3.0], vec![4.0, 4.0, 4.0]]);
        assert!(matches!(
            spearman_rows(&rk),
            Err(Error::DegenerateRow { row: 1 })
        ));
    }

    #[test]
    fn continuous_rows_match_closed_form() {
        let pattern = RowPattern::iid(DistributionSpec::StandardNormal).unwrap();
        let x = sample_matrix(&pattern, 3, 37, 5).unwrap();
        let rk = RankMatrix::from_data(&x);
        let z = spearman_rows(&rk).unwrap();
        let n = 37.0f64;
        let c = (12.0 / (n * (n * n - 1.0))).sqrt();
        for i in 0..3 {
            for (zij, q) in z.row(i).iter().zip(rk.row(i)) {
                assert!((zij - c * (q - (n + 1.0) / 2.0)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn scaling_examples() {
        let d = kendall_scaling(&ranks_of(&[vec![1.0, 2.0, 3.0, 4.0], vec![2.0; 4]]));
        assert_eq!(d.d[0], 0.9375);
        assert_eq!(d.d[1], 0.0);
    }

    #[test]
    fn scaling_bernoulli_half() {
        let pattern = RowPattern::iid(DistributionSpec::Bernoulli { m: 0.5 }).unwrap();
        let rk = RankMatrix::from_data(&sample_matrix(&pattern, 4, 10_000, 17).unwrap());
        for d in kendall_scaling(&rk).d {
            assert!((d - 0.75).abs() < 0.02, "{d}");
        }
    }

    #[test]
    fn diagnostic_examples() {
        assert_eq!(degeneracy_diagnostic(&[1.0, 1.0, 2.0, 3.0]), 0.5);
        assert_eq!(degeneracy_diagnostic(&[2.0; 3]), 1.0);
        assert_eq!(degeneracy_diagnostic(&[1.0, 2.0, 3.0, 4.0]), 0.25);
    }
}
