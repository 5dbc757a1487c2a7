//! Spearman's matrix for tied Bernoulli data against the Marčenko-Pastur law.
//!
//! cargo run --release --example spearman_mp -- [p] [n] [seed]

use rank_spectra::datagen::DistributionSpec;
use rank_spectra::harness::{run, ExperimentConfig, MatrixKind, Scaling};

fn main() -> rank_spectra::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let p = args.first().copied().unwrap_or(300) as usize;
    let n = args.get(1).copied().unwrap_or(600) as usize;
    let seed = args.get(2).copied().unwrap_or(1);

    let cfg = ExperimentConfig::new(
        MatrixKind::Spearman,
        &[DistributionSpec::Bernoulli { m: 0.5 }],
        p,
        n,
        seed,
    )
    .with_scaling(Scaling::Mp);
    let res = run(&cfg)?;
    println!("p={p} n={n} law={}", res.reference_law.label);
    println!("KS = {:.4}", res.ks);
    println!(
        "smallest / largest eigenvalue: {:.4} / {:.4}",
        res.eigenvalues[0],
        res.eigenvalues[res.eigenvalues.len() - 1]
    );
    let (lo, hi) = res.reference_law.model.support();
    println!("law support: [{lo:.4}, {hi:.4}]");
    Ok(())
}
