//! Densities, CDFs, quantiles and Stieltjes transforms of the limit laws,
//! and the Marčenko-Pastur to semicircle transition.

use num_complex::Complex64;
use rank_spectra::lsd::{law_quantile, mp_to_semicircle_residual, stieltjes, LawModel};

fn main() -> rank_spectra::Result<()> {
    let laws = [
        ("MP(0.5)", LawModel::marcenko_pastur(0.5)?),
        ("MP(2)", LawModel::marcenko_pastur(2.0)?),
        (
            "(2/3)(MP(2/3) - 1)",
            LawModel::marcenko_pastur(2.0 / 3.0)?.with_affine(2.0 / 3.0, -2.0 / 3.0)?,
        ),
        ("semicircle", LawModel::semicircle()),
    ];
    let z = Complex64::new(0.5, 0.1);
    for (name, law) in &laws {
        let (lo, hi) = law.support();
        println!(
            "{name:>20}: support [{lo:.3}, {hi:.3}], median {:.4}, F(0) = {:.4}, s({z}) = {:.4}",
            law_quantile(law, 0.5)?,
            law.cdf(0.0),
            stieltjes(law, z)?
        );
    }
    for gamma in [1.0, 0.25, 0.05, 0.01] {
        println!(
            "sup |F_gamma - G| after standardizing, gamma={gamma}: {:.4}",
            mp_to_semicircle_residual(gamma)?
        );
    }
    Ok(())
}
