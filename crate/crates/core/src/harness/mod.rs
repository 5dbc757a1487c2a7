//! Experiment pipeline: config, simulated data, dependency matrix,
//! spectrum, reference law, distance, and result files.

mod config;
mod io;
mod run;

pub use config::{
    ExperimentConfig, MatrixKind, PatternEntry, Regime, Scaling, AUTO_SEMICIRCLE_RATIO,
};
pub use io::{eigs_csv, emit, law_csv, rank_columns_csv, read_eigs_csv, write_atomic};
pub use run::{
    build_matrix, reference_law, run, spectrum_transform, DiagSummary, ExperimentResult,
    ReferenceLaw, LAW_CURVE_POINTS,
};
