//! Rank-based dependency matrices and their spectra.
//!
//! The crate builds Spearman's rank correlation matrix, Kendall's tau and
//! its tie-adjusted version `T = D^-1/2 offdiag(tau) D^-1/2`, sample
//! correlation matrices and Gram matrices of unit-sphere rows from
//! simulated data, computes their eigenvalues, and measures the
//! Kolmogorov–Smirnov distance of the empirical spectral distribution to the
//! Marčenko–Pastur and semicircle laws (and affine images of them).
//!
//! ```
//! use rank_spectra::datagen::{sample_matrix, DistributionSpec, RowPattern};
//! use rank_spectra::depmat::spearman;
//! use rank_spectra::lsd::LawModel;
//! use rank_spectra::ranks::RankMatrix;
//! use rank_spectra::spectra::{eigenvalues_sym, ks_distance};
//!
//! let pattern = RowPattern::iid(DistributionSpec::Bernoulli { m: 0.5 }).unwrap();
//! let x = sample_matrix(&pattern, 40, 80, 1).unwrap();
//! let rho = spearman(&RankMatrix::from_data(&x)).unwrap();
//! let esd = eigenvalues_sym(&rho).unwrap();
//! let ks = ks_distance(&esd, &LawModel::marcenko_pastur(0.5).unwrap());
//! assert!(ks < 0.2);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod datagen;
pub mod depmat;
mod eigen;
pub mod error;
pub mod harness;
pub mod kendall;
pub mod lsd;
pub mod moments;
pub mod quad;
pub mod ranks;
pub mod spectra;

pub use error::{Error, Result};
