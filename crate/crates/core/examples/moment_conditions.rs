//! Monte Carlo estimates of the unit-sphere moment conditions.

use rank_spectra::datagen::{DistributionSpec, RowPattern};
use rank_spectra::moments::{
    estimate_conditions, pareto_truncated_fourth_moment, regvar_condition, RowBuilder,
};

fn main() -> rank_spectra::Result<()> {
    let (p, n, reps) = (100, 200, 20_000);
    for (builder, spec) in [
        (RowBuilder::Spearman, DistributionSpec::Bernoulli { m: 0.3 }),
        (RowBuilder::Correlation, DistributionSpec::StandardNormal),
        (
            RowBuilder::CenteredCorrelation,
            DistributionSpec::Pareto { alpha: 3.0 },
        ),
        (
            RowBuilder::CenteredCorrelation,
            DistributionSpec::StudentT { nu: 2.5 },
        ),
    ] {
        let r = estimate_conditions(builder, &RowPattern::iid(spec)?, p, n, reps, 5)?;
        println!(
            "{builder:?} {spec}: c4 = {:.4} ± {:.4}, c_cross = {:.4} ± {:.4}",
            r.c4, r.stderr4, r.c_cross, r.stderr_cross
        );
    }
    for delta in [1.0, 2.0, 4.0] {
        println!(
            "alpha=3, delta={delta}: condition holds = {}",
            regvar_condition(3.0, delta)?
        );
    }
    for n in [1e2, 1e4, 1e6] {
        println!(
            "Pareto(3) truncated fourth moment at n={n:e}: {:.2}",
            pareto_truncated_fourth_moment(3.0, n)?
        );
    }
    Ok(())
}
