use rank_spectra::datagen::{sample_matrix, DistributionSpec, RowPattern};
use rank_spectra::depmat::correlation_rows;
use rank_spectra::moments::{
    bernoulli_variance_factor, estimate_conditions, pareto_truncated_fourth_moment,
    variance_factor, RowBuilder,
};
use rank_spectra::Error;

fn fourth(
    builder: RowBuilder,
    spec: DistributionSpec,
    n: usize,
    reps: usize,
    seed: u64,
) -> (f64, f64) {
    let rep =
        estimate_conditions(builder, &RowPattern::iid(spec).unwrap(), 1, n, reps, seed).unwrap();
    (rep.per_spec[0].fourth_mean, rep.per_spec[0].fourth_stderr)
}

#[test]
fn normal_rows_fourth_moment_matches_sphere_value() {
    // Y is uniform on the sphere: E[Y_1^4] = 3 / (n (n + 2))
    for n in [20, 200] {
        let (m, se) = fourth(
            RowBuilder::Correlation,
            DistributionSpec::StandardNormal,
            n,
            40_000,
            1,
        );
        let exact = 3.0 / (n * (n + 2)) as f64;
        assert!(
            (m - exact).abs() < 4.0 * se,
            "n={n}: {m} vs {exact} (se {se})"
        );
    }
    let (m, _) = fourth(
        RowBuilder::Correlation,
        DistributionSpec::StandardNormal,
        2000,
        4000,
        2,
    );
    let scaled = 2000.0 * 2000.0 * m;
    assert!((scaled - 3.0).abs() < 0.15, "n^2 E[Y^4] = {scaled}");
}

/// `n E[Y_11^4]` as the mean over rows of `sum_t Y_it^4`, with its standard
/// error. Uses every coordinate, so rare row maxima are not missed.
fn whole_row_fourth(spec: DistributionSpec, rows: usize, n: usize, seed: u64) -> (f64, f64) {
    let x = sample_matrix(&RowPattern::iid(spec).unwrap(), rows, n, seed).unwrap();
    let y = correlation_rows(&x, false).unwrap();
    let sums: Vec<f64> = y
        .rows()
        .map(|r| r.iter().map(|v| v.powi(4)).sum())
        .collect();
    let k = sums.len() as f64;
    let mean = sums.iter().sum::<f64>() / k;
    let var = sums.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

#[test]
fn necessary_condition_directions() {
    let (n1, n2) = (1_000usize, 10_000usize);
    let (a, sa) = whole_row_fourth(DistributionSpec::StandardNormal, 2000, n1, 3);
    let (b, sb) = whole_row_fourth(DistributionSpec::StandardNormal, 2000, n2, 4);
    assert!(b + 3.0 * sb < a - 3.0 * sa, "normal: {a} -> {b}");
    assert!((a * n1 as f64 - 3.0).abs() < 0.1 && (b * n2 as f64 - 3.0).abs() < 0.1);

    // outside the normal domain of attraction the row maximum dominates
    let (a, sa) = whole_row_fourth(DistributionSpec::Pareto { alpha: 1.5 }, 2000, n1, 5);
    let (b, sb) = whole_row_fourth(DistributionSpec::Pareto { alpha: 1.5 }, 2000, n2, 6);
    assert!(
        a - 3.0 * sa > 0.1 && b - 3.0 * sb > 0.1,
        "Pareto(1.5): {a} -> {b}"
    );
    assert!(b + 3.0 * sb > a - 3.0 * sa);

    let (m, se) = fourth(
        RowBuilder::Correlation,
        DistributionSpec::StandardNormal,
        n1,
        20_000,
        7,
    );
    assert!((m - 3.0 / (n1 * (n1 + 2)) as f64).abs() < 4.0 * se);
}

#[test]
fn pareto_three_respects_truncated_moment_bound() {
    for n in [1_000usize, 10_000] {
        let (m, se) = whole_row_fourth(DistributionSpec::Pareto { alpha: 3.0 }, 4000, n, 8);
        let nf = n as f64;
        let ratio = nf * m / pareto_truncated_fourth_moment(3.0, nf).unwrap();
        let ratio_se = nf * se / pareto_truncated_fourth_moment(3.0, nf).unwrap();
        assert!(ratio > 0.1, "n={n}: ratio {ratio}");
        assert!(
            ratio - 3.0 * ratio_se <= 2.0,
            "n={n}: ratio {ratio} (se {ratio_se})"
        );
    }
}

#[test]
fn stderr_shrinks_like_inverse_root_reps() {
    let spec = DistributionSpec::Uniform01;
    let (_, se1) = fourth(RowBuilder::Spearman, spec, 30, 20_000, 6);
    let (_, se2) = fourth(RowBuilder::Spearman, spec, 30, 80_000, 7);
    let ratio = se1 / se2;
    assert!((ratio - 2.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn spearman_c_cross_matches_exact_sum() {
    let (p, n) = (4, 30);
    let pattern = RowPattern::iid(DistributionSpec::Uniform01).unwrap();
    let rep = estimate_conditions(RowBuilder::Spearman, &pattern, p, n, 100_000, 8).unwrap();
    let exact = (n * n) as f64 / (p as f64).powf(1.5) * p as f64 / (n * (n - 1)) as f64;
    assert!(
        (rep.c_cross - exact).abs() < 3.0 * rep.stderr_cross,
        "{} vs {exact}",
        rep.c_cross
    );
    assert!(rep.c4 >= 0.0 && rep.stderr4 >= 0.0);
}

#[test]
fn variance_factor_matches_brute_force() {
    for m in [0.01, 0.1, 0.3, 0.5, 0.77, 0.99] {
        // 2 H(X) - q(X) takes 1 - m on {0} and 2 - m on {1}
        let values = [(1.0 - m, 1.0 - m), (2.0 - m, m)];
        let mean: f64 = values.iter().map(|(v, w)| v * w).sum();
        let var: f64 = values.iter().map(|(v, w)| w * (v - mean).powi(2)).sum();
        let f = variance_factor(&DistributionSpec::Bernoulli { m }).unwrap();
        assert!((f - 3.0 * var).abs() < 1e-12);
        assert!((f - bernoulli_variance_factor(m).unwrap()).abs() < 1e-12);
    }
    for spec in [
        DistributionSpec::Uniform01,
        DistributionSpec::StandardNormal,
        DistributionSpec::Pareto { alpha: 0.5 },
        DistributionSpec::StudentT { nu: 1.0 },
    ] {
        assert_eq!(variance_factor(&spec).unwrap(), 1.0);
    }
    assert_eq!(
        variance_factor(&DistributionSpec::Constant { c: 2.0 }).unwrap(),
        0.0
    );
}

#[test]
fn degenerate_rows_propagate() {
    let pattern = RowPattern::iid(DistributionSpec::Constant { c: 1.0 }).unwrap();
    let err = estimate_conditions(RowBuilder::Spearman, &pattern, 2, 10, 10, 0).unwrap_err();
    assert!(matches!(err, Error::DegenerateRow { .. }));
    let pattern = RowPattern::iid(DistributionSpec::Uniform01).unwrap();
    assert!(estimate_conditions(RowBuilder::Spearman, &pattern, 2, 10, 1, 0).is_err());
}
