//! Runs a JSON experiment config and writes the result files.
//!
//! cargo run --release --example run_config -- crates/core/configs/kendall_t_semicircle.json out/

use std::path::PathBuf;

use rank_spectra::harness::{emit, run, ExperimentConfig};

fn main() -> rank_spectra::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = PathBuf::from(args.next().unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/configs/spearman_bernoulli_mp.json"
        )
        .to_owned()
    }));
    let out = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("rank-spectra-run"));
    let cfg = ExperimentConfig::load(&config)?;
    let res = run(&cfg)?;
    for path in emit(&res, &out)? {
        println!("wrote {}", path.display());
    }
    println!(
        "{}: KS = {:.4} against {} in {:.2}s",
        config.display(),
        res.ks,
        res.reference_law.label,
        res.wall_time_seconds
    );
    Ok(())
}
